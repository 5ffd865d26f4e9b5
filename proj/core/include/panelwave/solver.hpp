#pragma once

#include "panelwave/factor.hpp"

namespace panelwave {

// Closes the vector Riemann-Hilbert system G Phi+ + Phi- = g on the contour:
// builds the Cauchy densities of the particular solutions, determines the
// remaining scalar unknowns C (strength of the auxiliary pole at zeta0) and N
// (the additive constant of the right-hand side) from the divisor-point
// regularity and membrane-displacement conditions, and assembles the node
// tables of the spectral densities
//
//   Dhat = Phi0+ + Phi0-,   Dtil = Phi1+ + Phi1-,
//
// which drive both the closure conditions and the field integrals.
class ContourSolver {
 public:
  explicit ContourSolver(const FactorEvaluator& fac);

  const FactorEvaluator& factor() const { return *fac_; }
  cplx C() const { return C_; }
  cplx N() const { return N_; }

  // Residual of the displacement condition \int gamma Dhat dt (vanishes up to
  // quadrature/rounding once C and N are in place).
  cplx displacement_residual() const { return disp_; }

  // Diagnostics of the 2x2 closure system.
  cplx Pi0() const { return Pi0_; }
  cplx Pi1() const { return Pi1_; }
  cplx Pi2() const { return Pi2_; }
  cplx Omega0() const { return Om0_; }
  cplx Omega1() const { return Om1_; }
  cplx Omega2() const { return Om2_; }

  const std::vector<cplx>& Dhat_nodes() const { return Dhat_; }
  const std::vector<cplx>& Dtil_nodes() const { return Dtil_; }

  // Boundary values at arbitrary real t.
  struct PhiPair {
    Vec2c plus, minus;
  };
  PhiPair Phi_both(double t) const;
  Vec2c Phi_side(double t, int side) const;
  Vec2c rhs(double t) const;           // g(t)
  Vec2c bc_residual(double t) const;   // G Phi+ + Phi- - g
  cplx Dhat_at(double t) const;
  cplx Dtil_at(double t) const;

 private:
  Vec2c density_V(double t, const BoundaryFactors& bf, cplx gamma, cplx l) const;

  const FactorEvaluator* fac_;
  cplx ksin_;  // k sin(theta0)
  cplx C_, N_;
  cplx Pi0_, Pi1_, Pi2_, Om0_, Om1_, Om2_;
  cplx disp_;

  // Node tables: the two density vectors and their one-sided Cauchy limits.
  std::vector<cplx> V0_, V1_, W0_, W1_;
  std::vector<Vec2c> psi1_p_, psi1_m_, psi2_p_, psi2_m_;
  std::vector<cplx> Ehat0_, Ehat1_, Ehat2_, Etil0_, Etil1_, Etil2_;
  std::vector<cplx> Dhat_, Dtil_;
};

}  // namespace panelwave
