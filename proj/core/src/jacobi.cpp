#include "panelwave/jacobi.hpp"

#include <cmath>
#include <sstream>

#include "panelwave/errors.hpp"

namespace panelwave {

namespace {

struct ThetaPair {
  cplx theta;  // sum exp{pi i Bhat nu^2 + 2 pi i nu z}
  cplx nu;     // sum nu exp{...}
};

// Series evaluation after reducing z into the fundamental cell: with
// z = z0 + mu + m Bhat (mu, m integers, z0 reduced),
//   theta(z)  = q^m * theta(z0),
//   S1(z)     = q^m * (S1(z0) - m theta(z0)),   q^m = exp{-pi i Bhat m^2 - 2 pi i m z0},
// so both series converge after a handful of terms for any argument.
ThetaPair theta_pair(cplx z, cplx Bhat) {
  if (!(Bhat.imag() > 0.0)) {
    throw BranchError("period ratio must have positive imaginary part");
  }
  double m = std::round(z.imag() / Bhat.imag());
  cplx z0 = z - m * Bhat;
  z0 -= std::round(z0.real());  // 1-periodicity

  cplx th = 1.0, s1 = 0.0;
  for (int nu = 1; nu <= 10000; ++nu) {
    cplx base = pi * iu * Bhat * double(nu * nu);
    cplx tp = std::exp(base + 2.0 * pi * iu * double(nu) * z0);
    cplx tm = std::exp(base - 2.0 * pi * iu * double(nu) * z0);
    th += tp + tm;
    s1 += double(nu) * (tp - tm);
    if (std::abs(tp) + std::abs(tm) <
        1e-16 * (std::abs(th) + std::abs(s1) + 1.0)) {
      cplx fac = std::exp(-pi * iu * Bhat * m * m - 2.0 * pi * iu * m * z0);
      return {fac * th, fac * (s1 - m * th)};
    }
  }
  throw BranchError("theta series did not converge");
}

}  // namespace

cplx theta_fn(cplx z, cplx Bhat) { return theta_pair(z, Bhat).theta; }

cplx theta_nu_series(cplx z, cplx Bhat) { return theta_pair(z, Bhat).nu; }

cplx compute_d0(const EllipticSurface& surf, const ContourTables& tables,
                cplx zeta0) {
  cplx omega0 = surf.A() * surf.omega_hat({zeta0, 1});
  cplx line = tables.grid->integrate(tables.rho_A) / (2.0 * pi * iu);
  return omega0 - line;
}

JacobiSolution solve_inversion(const EllipticSurface& surf, cplx d0) {
  const cplx Bhat = surf.Bhat();
  const cplx e1 = d0 / surf.A() + surf.k1();
  const double theta_scale = std::abs(theta_fn(0.0, Bhat));

  cplx p, J;
  bool found = false;
  for (cplx probe : {cplx(0.0, 1.0), cplx(0.0, 2.0)}) {
    cplx om_p = surf.omega_hat({probe, 1});
    ThetaPair F1 = theta_pair(om_p - e1, Bhat);
    ThetaPair F2 = theta_pair(-om_p - e1, Bhat);
    if (std::min(std::abs(F1.theta), std::abs(F2.theta)) <
        1e-8 * theta_scale) {
      continue;  // divisor point too close to the probe; move the probe
    }
    cplx M = surf.a_cycle_cauchy(probe) / surf.A();
    cplx pref = 2.0 * pi * iu / (surf.A() * f_sqrt(probe, surf.params()));
    cplx dlog1 = pref * F1.nu / F1.theta;
    cplx dlog2 = -pref * F2.nu / F2.theta;
    p = probe;
    J = M - dlog1 - dlog2;
    found = true;
    break;
  }
  if (!found) {
    throw GenericityError(
        "divisor point coincides with both probe points i and 2i");
  }
  if (std::abs(J) < 1e-12) {
    throw GenericityError("divisor point escapes to infinity (J ~ 0)");
  }

  JacobiSolution sol;
  sol.d0 = d0;
  sol.e1 = e1;
  sol.pole_point = p;
  sol.zeta1 = p + 1.0 / J;

  cplx om1 = surf.omega_hat({sol.zeta1, 1});
  const cplx ratio = d0 / surf.A();
  const double reB = Bhat.real(), imB = Bhat.imag();
  double res[2];
  long ma[2], mb[2];
  for (int n = 0; n < 2; ++n) {
    cplx d = (n == 0) ? ratio - om1 : ratio + om1;
    double mb_r = d.imag() / imB;
    double ma_r = d.real() - (reB / imB) * d.imag();
    ma[n] = std::lround(ma_r);
    mb[n] = std::lround(mb_r);
    res[n] = std::max(std::abs(ma_r - ma[n]), std::abs(mb_r - mb[n]));
  }

  const double tol = 1e-4;
  int pick;
  if (res[0] < tol && res[1] < tol) {
    pick = res[0] <= res[1] ? 0 : 1;
  } else if (res[0] < tol) {
    pick = 0;
  } else if (res[1] < tol) {
    pick = 1;
  } else {
    std::ostringstream os;
    os << "lattice integers not integral on either sheet (residuals "
       << res[0] << ", " << res[1] << ")";
    throw NonIntegerError(os.str());
  }

  sol.sheet = pick + 1;
  sol.m_a = ma[pick];
  sol.m_b = mb[pick];
  sol.residual = res[pick];
  sol.other_residual = res[1 - pick];
  sol.w1 = (sol.sheet == 1 ? 1.0 : -1.0) * f_sqrt(sol.zeta1, surf.params());
  cplx om_q1 = (sol.sheet == 1) ? om1 : -om1;
  sol.theta_zero_abs = std::abs(theta_fn(om_q1 - e1, Bhat));
  return sol;
}

}  // namespace panelwave
