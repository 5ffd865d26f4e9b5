#pragma once

#include "panelwave/contour.hpp"
#include "panelwave/surface.hpp"

namespace panelwave {

// theta(z) = sum_nu exp{pi i Bhat nu^2 + 2 pi i nu z}, with the argument
// first reduced into the fundamental cell (quasi-periodicity in Bhat,
// 1-periodicity in the real direction) and the series truncated once the
// next pair of terms drops below 1e-16 of the running sum.
cplx theta_fn(cplx z, cplx Bhat);

// The companion series sum_nu nu exp{pi i Bhat nu^2 + 2 pi i nu z}; theta's
// derivative is 2 pi i times this.
cplx theta_nu_series(cplx z, cplx Bhat);

// Outcome of the lattice inversion: the divisor point (zeta1, sheet), the
// lattice integers, and the residuals that certify them.
struct JacobiSolution {
  cplx d0;    // inversion datum
  cplx e1;    // theta-argument shift d0/A + k1
  cplx zeta1;
  int sheet = 1;              // 1 or 2
  cplx w1;                    // (-1)^{sheet-1} f^{1/2}(zeta1)
  long m_a = 0, m_b = 0;      // lattice integers
  double residual = 0.0;      // pre-rounding distance of the chosen pair
  double other_residual = 0.0;  // same for the rejected sheet
  double theta_zero_abs = 0.0;  // |theta at the divisor point|
  cplx pole_point;            // probe point of the residue formula (i or 2i)
};

// d0 = A * omega_hat(zeta0, sheet 1) - (1/2 pi i) \int_L log eps / f^{1/2}.
cplx compute_d0(const EllipticSurface& surf, const ContourTables& tables,
                cplx zeta0);

// Finds the divisor point and integers: zeta1 = p + 1/J with J assembled
// from the a-loop Cauchy integral at the probe p and the theta-logarithmic
// derivatives at (p, sheet 1) and (p, sheet 2); then recovers (m_a, m_b)
// from the real/imaginary split of d0/A -+ omega_hat(zeta1) and keeps the
// sheet whose pair rounds to integers.
JacobiSolution solve_inversion(const EllipticSurface& surf, cplx d0);

}  // namespace panelwave
