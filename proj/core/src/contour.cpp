#include "panelwave/contour.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "panelwave/errors.hpp"

namespace panelwave {

namespace {

// Phase-continuous logs of a sequence of nonzero values whose argument varies
// slowly between consecutive entries. Returns log values; the accumulated
// phase of the final entry is written to *end_phase.
std::vector<cplx> unwrap_log(const std::vector<cplx>& vals,
                             double* end_phase) {
  std::vector<cplx> out(vals.size());
  double phase = std::arg(vals.front());
  out.front() = {std::log(std::abs(vals.front())), phase};
  for (size_t j = 1; j < vals.size(); ++j) {
    phase += wrap_angle(std::arg(vals[j]) - std::arg(vals[j - 1]));
    out[j] = {std::log(std::abs(vals[j])), phase};
  }
  *end_phase = phase;
  return out;
}

}  // namespace

ContourTables::ContourTables(const ModelParams& p, const CircleGrid& g)
    : params(&p), grid(&g), ktau(p.k * p.tau) {
  const auto& nodes = g.nodes();
  const size_t nn = nodes.size();
  eig.reserve(nn);
  std::vector<cplx> Delta(nn), eps(nn);
  for (size_t j = 0; j < nn; ++j) {
    eig.push_back(eigen_data(nodes[j].t, p));
    Delta[j] = eig[j].Delta;
    eps[j] = eig[j].eps;
  }

  // Both Delta and eps tend to 1 at the far ends of the grid (the nodes of
  // largest |t|), so the tracked phase must return to ~0; a leftover winding
  // means an eigenvalue circled the origin and the scalar problems have
  // nonzero index.
  double endD = 0.0, endE = 0.0;
  log_Delta = unwrap_log(Delta, &endD);
  log_eps = unwrap_log(eps, &endE);
  for (auto [name, start, end] :
       {std::tuple{"det G", std::arg(Delta.front()), endD},
        std::tuple{"eigenvalue ratio", std::arg(eps.front()), endE}}) {
    if (std::abs(start) > 0.5 || std::abs(end) > 0.5) {
      std::ostringstream os;
      os << "log branch of " << name
         << " does not close along the contour (end phase " << end << ")";
      throw BranchError(os.str());
    }
  }

  rho_Delta.resize(nn);
  rho_eps.resize(nn);
  rho_A.resize(nn);
  rho_B.resize(nn);
  for (size_t j = 0; j < nn; ++j) {
    const cplx k0 = kappa0(nodes[j].t);
    rho_Delta[j] = log_Delta[j] + ktau * k0;
    rho_eps[j] = log_eps[j] - ktau * k0;
    rho_A[j] = log_eps[j] / eig[j].fsqrt;
    rho_B[j] = log_eps[j] * nodes[j].t / eig[j].fsqrt;
  }
}

int ContourTables::nearest_node(double t) const {
  const auto& nodes = grid->nodes();
  auto it = std::lower_bound(
      nodes.begin(), nodes.end(), t,
      [](const CircleNode& nd, double v) { return nd.t < v; });
  if (it == nodes.end()) return static_cast<int>(nodes.size()) - 1;
  if (it == nodes.begin()) return 0;
  int hi = static_cast<int>(it - nodes.begin());
  return (t - nodes[hi - 1].t < nodes[hi].t - t) ? hi - 1 : hi;
}

namespace {

// Aligns the principal log of `value` with the tracked branch value `ref`
// at a nearby point.
cplx align_branch(cplx value, cplx ref) {
  cplx lp = std::log(value);
  double kshift = std::round((ref.imag() - lp.imag()) / (2.0 * pi));
  return {lp.real(), lp.imag() + 2.0 * pi * kshift};
}

}  // namespace

cplx ContourTables::log_Delta_at(double t) const {
  EigenData e = eigen_data(t, *params);
  return align_branch(e.Delta, log_Delta[nearest_node(t)]);
}

cplx ContourTables::log_eps_at(double t) const {
  EigenData e = eigen_data(t, *params);
  return align_branch(e.eps, log_eps[nearest_node(t)]);
}

cplx ContourTables::cauchy_kappa0(cplx s) {
  // Antiderivative of 1/(sqrt(t^2+4)(t-s)) in the variable w = t+sqrt(t^2+4):
  //   (1/g) log((w - w1)/(w - w2)),  g = sqrt(s^2+4),  w1,2 = s +- g,
  // where w runs over (0, inf) as t runs over the real line. The log is
  // continued along the positive w-axis through checkpoints dense enough
  // that each increment stays within the principal branch.
  const cplx g = std::sqrt(s * s + 4.0);
  const cplx w1 = s + g, w2 = s - g;

  std::vector<double> xs;
  auto add_scales = [&xs](double base) {
    for (double f : {1.0 / 16, 1.0 / 4, 1.0, 4.0, 16.0}) xs.push_back(base * f);
  };
  add_scales(std::abs(w1));
  add_scales(std::abs(w2));
  for (cplx wj : {w1, w2}) {
    if (wj.real() > 0) {
      const double im = std::max(std::abs(wj.imag()), 1e-300);
      for (double kf : {3.0, 1.0}) {
        double lo = wj.real() - kf * im, hi = wj.real() + kf * im;
        if (lo > 0) xs.push_back(lo);
        xs.push_back(hi);
      }
    }
  }
  double big = 1e10 * std::max({std::abs(w1), std::abs(w2), 1.0});
  xs.push_back(big);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto R = [&](double x) { return (x - w1) / (x - w2); };
  cplx total = 0.0;
  cplx prev = R(0.0);
  for (double x : xs) {
    cplx cur = R(x);
    total += std::log(cur / prev);
    prev = cur;
  }
  total += std::log(1.0 / prev);  // tail from the last checkpoint to infinity
  return total / (2.0 * pi * iu * g);
}

cplx ContourTables::cauchy_kappa0_pv(double t) {
  const double delta = 1e-7 * (1.0 + std::abs(t));
  return 0.5 * (cauchy_kappa0(cplx(t, delta)) + cauchy_kappa0(cplx(t, -delta)));
}

}  // namespace panelwave
