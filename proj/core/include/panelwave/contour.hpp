#pragma once

#include <vector>

#include "panelwave/params.hpp"
#include "panelwave/quadrature.hpp"

namespace panelwave {

// Per-node data on the integration contour, shared by the lattice-inversion
// and factorization stages: eigen decompositions, continuously tracked
// logarithms of det G and of the eigenvalue ratio, and the same logs with
// their leading large-|t| behavior split off.
//
// On the real axis gamma(t) ~ |t|, so log Delta ~ -k tau / |t| and
// log eps ~ +k tau / |t|; under the circle compactification |1/t| has a kink
// at the point at infinity that would dominate the interpolation error of
// the principal-value transform. We therefore write
//
//   log Delta = -k tau * kappa0 + rho_Delta,
//   log eps   = +k tau * kappa0 + rho_eps,     kappa0(t) = 1/sqrt(t^2 + 4),
//
// where kappa0 matches the kink to O(|t|^-3) and has a closed-form Cauchy
// transform (below); only the smooth remainders rho go through the grid.
struct ContourTables {
  const ModelParams* params = nullptr;
  const CircleGrid* grid = nullptr;
  cplx ktau;

  std::vector<EigenData> eig;              // one entry per grid node
  std::vector<cplx> log_Delta, log_eps;    // tracked branches at the nodes
  std::vector<cplx> rho_Delta, rho_eps;    // kink-subtracted remainders
  std::vector<cplx> rho_A;                 // log_eps / f^{1/2}
  std::vector<cplx> rho_B;                 // log_eps * t / f^{1/2}

  ContourTables(const ModelParams& p, const CircleGrid& g);

  // Values at arbitrary real t on the same tracked branches.
  cplx log_Delta_at(double t) const;
  cplx log_eps_at(double t) const;

  static cplx kappa0(cplx t) { return 1.0 / std::sqrt(t * t + 4.0); }

  // C0(s) = (1/2 pi i) \int_R kappa0(t) / (t - s) dt for Im s != 0, via the
  // substitution w = t + sqrt(t^2 + 4) (which maps the real line onto the
  // positive half-axis) and a winding-safe continued logarithm.
  static cplx cauchy_kappa0(cplx s);

  // Principal-value version on the axis: the mean of the two one-sided
  // boundary values.
  static cplx cauchy_kappa0_pv(double t);

 private:
  int nearest_node(double t) const;
};

}  // namespace panelwave
