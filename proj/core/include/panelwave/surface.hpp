#pragma once

#include <functional>
#include <vector>

#include "panelwave/params.hpp"
#include "panelwave/quadrature.hpp"

namespace panelwave {

// The genus-one surface w^2 = f(s) = (s^2 - s1^2)(s^2 - s2^2), realized as two
// copies of the plane cut along G1 = [s1, s2] (upper half-plane) and
// G2 = [-s2, -s1] (lower). Sheet 1 carries w = +f^{1/2} with the segment-cut
// branch from params.hpp.
//
// Cycle integrals are computed on collapsed contours:
//  - the a-cycle encircles G1; on the left bank the segment factor of f^{1/2}
//    parametrized by t = c1 + h1 x equals i h1 sqrt(1-x^2), so a loop integral
//    of g ds / w reduces to a Gauss-Chebyshev sum of g / R2 (R2 = the other
//    segment root), doubled and signed;
//  - the b-cycle runs from s2 to -s1 on sheet 1 and back on sheet 2; both
//    halves project onto the straight segment [s2, -s1] and add up.
//
// The orientation of the a-cycle is fixed a posteriori by Im(B/A) > 0.
class EllipticSurface {
 public:
  EllipticSurface(const ModelParams& p, int cheb_n = 256, int legendre_n = 48);

  const ModelParams& params() const { return *params_; }
  cplx s1() const { return params_->s1; }
  cplx s2() const { return params_->s2; }

  cplx A() const { return A_; }          // a-period of ds / w
  cplx B() const { return B_; }          // b-period
  cplx Bhat() const { return Bhat_; }    // B / A, Im > 0
  cplx k1() const { return k1_; }        // lattice constant -1/2 + Bhat/2
  int sigma_a() const { return sigma_a_; }

  // Loop integrals \oint g(t) dt / w over the a- and b-cycles.
  cplx a_cycle(const std::function<cplx(cplx)>& g) const;
  cplx b_cycle(const std::function<cplx(cplx)>& g) const;

  // Loop integrals of 1 / ((t - s) w). The pole subtraction keeps accuracy
  // uniform in the distance of s to the collapsed contour; callers evaluating
  // on a cut's own projection must offset s to the intended side.
  cplx a_cycle_cauchy(cplx s) const;
  cplx b_cycle_cauchy(cplx s) const;

  // Straight polyline from the base branch point -s2 to zeta, with detour
  // vertices inserted around the cuts; throws PathError when planning fails.
  std::vector<cplx> canonical_path(cplx zeta) const;

  // \int g(t) dt / f^{1/2}(t) along a polyline whose first vertex is a branch
  // point (square-root substitution on the first leg, Gauss-Legendre on the
  // rest).
  cplx path_integral(const std::vector<cplx>& path,
                     const std::function<cplx(cplx)>& g) const;

  // \int dt / ((t - s) f^{1/2}(t)) along such a polyline, pole-subtracted
  // (partial fractions in the square-root variable on the first leg).
  cplx path_cauchy(const std::vector<cplx>& path, cplx s) const;

  // omega_hat(q) = (1/A) \int_{-s2}^{q} ds / w along the canonical path,
  // with the sheet-2 value the negative of the sheet-1 value.
  cplx omega_hat(const SheetPoint& q) const;

 private:
  const ModelParams* params_;
  std::vector<double> cheb_;  // Gauss-Chebyshev nodes
  GaussLegendre gl_;

  cplx c1_, h1_;  // G1 = [s1, s2] as c + h x
  cplx cb_, hb_;  // b-segment [s2, -s1] as c + h x
  double cut_scale_;

  int sigma_a_ = 1;
  cplx A_, B_, Bhat_, k1_;

  cplx a_onesided(const std::function<cplx(cplx)>& g) const;
  cplx b_onesided(const std::function<cplx(cplx)>& g) const;
};

}  // namespace panelwave
