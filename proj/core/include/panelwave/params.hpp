#pragma once

#include <optional>

#include "panelwave/types.hpp"

namespace panelwave {

// Physical description of the configuration: a plane wave with (complex)
// wavenumber k = |k| e^{i arg k}, 0 < arg k < pi/2, incident at angle theta0
// on a half-plane y = 0, x < 0 rigid screen joined at x = 0 to a perforated
// sandwich panel (cell spacings d1, d2, depth d, aperture parameter a) with
// a membrane backing of fluid-loading ratio rho_f / m0.
struct PhysicalInputs {
  double abs_k = 1.0;
  double arg_k = std::atan(0.1);  // radians, in (0, pi/2)
  double theta0 = pi / 4;  // incidence angle, in (0, pi)
  double abs_alpha = 10.0;
  double rho_f_over_m0 = 100.0;
  double d = 0.01;
  double d1 = 0.01;
  double d2 = 0.01;
  double a = 0.001;
  // Optional replacement for the derived panel parameter tau (both parts).
  std::optional<cplx> tau_override;
};

// Parameters of the boundary-value problem derived from PhysicalInputs.
struct ModelParams {
  cplx k;        // complex wavenumber
  double theta0; // incidence angle
  cplx alpha;    // membrane coupling, arg alpha = 2 arg k
  cplx mu;       // membrane wavenumber, mu^2 = alpha m0 / rho_f
  cplx tau;      // perforated-panel compliance, tau = k d / (1 - k^2 V / 2a)
  cplx m;        // off-diagonal coupling, m = 2 alpha / (k tau)
  double k_res;  // cavity resonance wavenumber sqrt(2a / V)
  cplx s1, s2;   // branch points of f(s) = (s^2-mu^2)^2 + m^2 in Q2 and Q1

  cplx k_sin_theta0() const { return k * std::sin(theta0); }
};

// Derives the model parameters; throws ConfigError for out-of-domain inputs
// and ResonanceError when |1 - k^2 V / 2a| <= 1e-6.
ModelParams derive_params(const PhysicalInputs& in);

// The square root gamma(s) = (s^2 - k^2)^{1/2} with branch cuts along the
// rays from +-k in the directions +-e^{i arg k}, fixed by gamma(0) = -ik.
// On the real axis Re gamma > 0 and gamma(t) ~ |t| as t -> +-infinity.
cplx gamma_branch(cplx s, const ModelParams& p);

// Square root of one quadratic factor (s - p)(s - q) with branch cut exactly
// on the segment [p, q] and behavior ~ s at infinity.
inline cplx sqrt_segment(cplx s, cplx p, cplx q) {
  cplx c = 0.5 * (p + q), h = 0.5 * (q - p);
  cplx z = (s - c) / h;
  return h * z * std::sqrt(1.0 - 1.0 / (z * z));
}

// f(s)^{1/2} = [(s^2 - s1^2)(s^2 - s2^2)]^{1/2} with cuts on the segments
// [s1, s2] (upper half-plane) and [-s2, -s1] (lower), ~ s^2 at infinity.
inline cplx f_sqrt(cplx s, const ModelParams& p) {
  return sqrt_segment(s, p.s1, p.s2) * sqrt_segment(s, -p.s2, -p.s1);
}

// Scalar data of the 2x2 boundary matrix at a point of the contour:
//   G(t) = b I + c A(t),  A(t) = [[l, m], [m, -l]],  l = t^2 - mu^2,
// with eigenvalues lambda_{1,2} = b +- c f^{1/2} and Delta = det G.
struct EigenData {
  cplx gamma, b, c, l, fsqrt;
  cplx lambda1, lambda2;
  cplx Delta;  // lambda1 * lambda2
  cplx eps;    // lambda1 / lambda2
};

// Throws DegenerateError if an eigenvalue vanishes at t.
EigenData eigen_data(cplx t, const ModelParams& p);

Mat2c matrix_A(cplx t, const ModelParams& p);
Mat2c matrix_G(cplx t, const ModelParams& p);

}  // namespace panelwave
