#pragma once

#include <vector>

#include "panelwave/jacobi.hpp"

namespace panelwave {

// Boundary values of the factorization data at one point of the contour.
// chi1 and f^{1/2} chi2 carry the one-sided limits; the Lambda functions
// assemble the entries of [X^+/-]^{-1} = [[L1, -L2], [-L2, L0]].
struct BoundaryFactors {
  cplx chi1_p, chi1_m;
  cplx fchi2_p, fchi2_m;
  cplx L0p, L0m, L1p, L1m, L2p, L2m;
};

// The scalar pieces of the matrix factorization G = X+ [X-]^{-1}:
//
//   chi1(s) = (1/4 pi i) \int_L log Delta /(t-s) dt + (1/2) \int_Gamma dt/(t-s),
//   chi2(s) = (1/4 pi i) \int_L log eps /((t-s) f^{1/2}) dt
//             + (1/2) (\int_Gamma + m_a \oint_a + m_b \oint_b) dt/((t-s) xi),
//
// with Gamma running from (zeta0, sheet 1) to the divisor point through the
// base branch point -s2, so that the boundedness condition at infinity is
// met by construction up to the lattice-rounding residual. For |s| > 1 chi2
// switches to the equivalent moment form, which is stable at infinity.
//
// X(s) = e^{chi1} [cosh(f^{1/2} chi2) I + A(s) sinh(f^{1/2} chi2)/f^{1/2}].
class FactorEvaluator {
 public:
  FactorEvaluator(const ContourTables& tables, const EllipticSurface& surf,
                  const JacobiSolution& jac, cplx zeta0);

  const ContourTables& tables() const { return *tables_; }
  const EllipticSurface& surface() const { return *surf_; }
  const JacobiSolution& jacobi() const { return jac_; }
  cplx zeta0() const { return zeta0_; }
  cplx eta0() const { return eta0_; }

  cplx h0() const { return h0_; }
  cplx K1() const { return K1_; }
  // Residual of the boundedness condition (the sum of the line integral of
  // log eps / f^{1/2} over 2 pi i with the Gamma and lattice loop integrals).
  cplx closure() const { return closure_; }

  const std::vector<BoundaryFactors>& nodes() const { return node_vals_; }

  // Boundary values at arbitrary real t (off the grid nodes allowed).
  BoundaryFactors boundary_at(double t) const;

  // X^+/-(t) and [X^+/-(t)]^{-1} assembled from boundary values.
  static Mat2c X_side(const BoundaryFactors& bf, cplx l, cplx fsqrt, cplx m,
                      int side);
  static Mat2c X_inv_side(const BoundaryFactors& bf, int side);
  Mat2c X_pm_node(int j, int side) const;
  Mat2c X_inv_pm_node(int j, int side) const;

  // Off-axis evaluations; throw PoleError within 1e-9 of zeta0 or zeta1.
  cplx chi1(cplx s) const;
  cplx chi2(cplx s) const;
  Mat2c X(cplx s) const;
  Mat2c X_inv(cplx s) const;

  // F(s, w) = exp(chi1 + w chi2) on the requested sheet.
  cplx F_surface(const SheetPoint& q) const;

  // Loop/contour integrals shared with tests: plain \int_Gamma g dt / xi and
  // the Cauchy versions used by chi2.
  cplx Gamma_plain(const std::function<cplx(cplx)>& g) const;
  cplx Gamma_cauchy(cplx s) const;
  cplx Gamma_line_log(cplx s) const;  // \int_Gamma dt/(t-s), closed form

 private:
  cplx contour_cauchy(cplx s) const;  // Gamma + lattice loops of dt/((t-s) xi)
  void guard_pole(cplx s) const;

  const ContourTables* tables_;
  const EllipticSurface* surf_;
  JacobiSolution jac_;
  cplx zeta0_, eta0_;
  double sign1_;  // +1 if the divisor point lies on sheet 1, else -1

  std::vector<cplx> path0_, path1_;
  cplx h0_, K1_, IA_, closure_;

  std::vector<cplx> pv_Delta_, pv_A_, pv_B_;  // PV transforms at the nodes
  std::vector<cplx> pv_k0_;                   // closed-form kink transform
  std::vector<BoundaryFactors> node_vals_;
};

}  // namespace panelwave
