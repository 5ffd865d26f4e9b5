#include "panelwave/params.hpp"

#include <cmath>
#include <sstream>

#include "panelwave/errors.hpp"

namespace panelwave {

ModelParams derive_params(const PhysicalInputs& in) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!(in.abs_k > 0)) fail("abs_k must be positive");
  if (!(in.arg_k > 0 && in.arg_k < pi / 2))
    fail("arg_k must lie in (0, pi/2)");
  if (!(in.theta0 > 0 && in.theta0 < pi))
    fail("theta0 must lie in (0, pi)");
  if (!(in.abs_alpha > 0)) fail("abs_alpha must be positive");
  if (!(in.rho_f_over_m0 > 0)) fail("rho_f_over_m0 must be positive");
  if (!(in.d > 0 && in.d1 > 0 && in.d2 > 0)) fail("d, d1, d2 must be positive");
  if (!(in.a > 0)) fail("a must be positive");

  ModelParams p;
  p.k = std::polar(in.abs_k, in.arg_k);
  p.theta0 = in.theta0;
  p.alpha = std::polar(in.abs_alpha, 2.0 * in.arg_k);
  // mu^2 = alpha m0 / rho_f; arg alpha in (0, pi) so the principal root has
  // arg mu in (0, pi/2), inside the required half-plane.
  p.mu = std::sqrt(p.alpha / in.rho_f_over_m0);

  const double V = in.d1 * in.d2 * in.d;
  p.k_res = std::sqrt(2.0 * in.a / V);
  const cplx denom = 1.0 - p.k * p.k * V / (2.0 * in.a);
  if (std::abs(denom) <= 1e-6) {
    std::ostringstream os;
    os << "cavity resonance: |1 - k^2 V / 2a| = " << std::abs(denom)
       << " <= 1e-6 (k_res = " << p.k_res << ")";
    throw ResonanceError(os.str());
  }
  p.tau = in.tau_override ? *in.tau_override : p.k * in.d / denom;
  p.m = 2.0 * p.alpha / (p.k * p.tau);

  // Branch points: the roots of f(s) = (s^2 - mu^2)^2 + m^2 are the four
  // square roots of mu^2 +- i m; s1 is the one in the second quadrant and
  // s2 the one in the first (the other two are -s2, -s1).
  const cplx r_plus = std::sqrt(p.mu * p.mu + iu * p.m);
  const cplx r_minus = std::sqrt(p.mu * p.mu - iu * p.m);
  cplx s1{}, s2{};
  int n1 = 0, n2 = 0;
  for (cplx cand : {r_plus, -r_plus, r_minus, -r_minus}) {
    if (cand.real() < 0 && cand.imag() > 0) {
      s1 = cand;
      ++n1;
    } else if (cand.real() > 0 && cand.imag() > 0) {
      s2 = cand;
      ++n2;
    }
  }
  if (n1 != 1 || n2 != 1) {
    std::ostringstream os;
    os << "branch points do not fall one per upper quadrant: mu^2+im roots "
       << r_plus << ", " << -r_plus << "; mu^2-im roots " << r_minus << ", "
       << -r_minus;
    throw BranchError(os.str());
  }
  p.s1 = s1;
  p.s2 = s2;
  return p;
}

cplx gamma_branch(cplx s, const ModelParams& p) {
  const double ts = std::arg(p.k);
  // arg(s + k) restricted to (ts - pi, ts + pi], arg(s - k) to (ts - 2pi, ts].
  const double th_p = ts + wrap_angle(std::arg(s + p.k) - ts);
  const double th_m = (ts - pi) + wrap_angle(std::arg(s - p.k) - ts + pi);
  const double mod = std::sqrt(std::abs(s + p.k) * std::abs(s - p.k));
  return std::polar(mod, 0.5 * (th_p + th_m));
}

EigenData eigen_data(cplx t, const ModelParams& p) {
  EigenData e;
  e.gamma = gamma_branch(t, p);
  e.l = t * t - p.mu * p.mu;
  e.fsqrt = f_sqrt(t, p);
  e.b = 1.0 - (p.k * p.tau / 2.0 + p.alpha / e.l) / e.gamma;
  e.c = p.k * p.tau / (2.0 * e.gamma * e.l);
  e.lambda1 = e.b + e.c * e.fsqrt;
  e.lambda2 = e.b - e.c * e.fsqrt;
  const double scale = std::abs(e.b) + std::abs(e.c * e.fsqrt);
  if (std::abs(e.lambda1) <= 1e-14 * scale ||
      std::abs(e.lambda2) <= 1e-14 * scale) {
    std::ostringstream os;
    os << "eigenvalue vanishes at t = " << t;
    throw DegenerateError(os.str());
  }
  e.Delta = e.lambda1 * e.lambda2;
  e.eps = e.lambda1 / e.lambda2;
  return e;
}

Mat2c matrix_A(cplx t, const ModelParams& p) {
  cplx l = t * t - p.mu * p.mu;
  return {l, p.m, p.m, -l};
}

Mat2c matrix_G(cplx t, const ModelParams& p) {
  EigenData e = eigen_data(t, p);
  Mat2c A = matrix_A(t, p);
  return Mat2c{e.b, 0.0, 0.0, e.b} + A * e.c;
}

}  // namespace panelwave
