#include "panelwave/factor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "panelwave/errors.hpp"
#include "support/oracles.hpp"

namespace panelwave {
namespace {

class FactorTest : public ::testing::Test {
 protected:
  static constexpr cplx kZeta0{2.0, 2.0};

  static void SetUpTestSuite() {
    params_ = new ModelParams(derive_params(PhysicalInputs{}));
    grid_ = new CircleGrid(400);
    tables_ = new ContourTables(*params_, *grid_);
    surf_ = new EllipticSurface(*params_);
    const cplx d0 = compute_d0(*surf_, *tables_, kZeta0);
    jac_ = new JacobiSolution(solve_inversion(*surf_, d0));
    factor_ = new FactorEvaluator(*tables_, *surf_, *jac_, kZeta0);
  }
  static void TearDownTestSuite() {
    delete factor_;
    delete jac_;
    delete surf_;
    delete tables_;
    delete grid_;
    delete params_;
    factor_ = nullptr;
    jac_ = nullptr;
    surf_ = nullptr;
    tables_ = nullptr;
    grid_ = nullptr;
    params_ = nullptr;
  }

  static ModelParams* params_;
  static CircleGrid* grid_;
  static ContourTables* tables_;
  static EllipticSurface* surf_;
  static JacobiSolution* jac_;
  static FactorEvaluator* factor_;
};

ModelParams* FactorTest::params_ = nullptr;
CircleGrid* FactorTest::grid_ = nullptr;
ContourTables* FactorTest::tables_ = nullptr;
EllipticSurface* FactorTest::surf_ = nullptr;
JacobiSolution* FactorTest::jac_ = nullptr;
FactorEvaluator* FactorTest::factor_ = nullptr;

TEST_F(FactorTest, XTimesItsInverseIsIdentityAtNodes) {
  for (int j = 0; j < grid_->size(); j += 29) {
    for (int side : {+1, -1}) {
      const Mat2c prod = factor_->X_pm_node(j, side) * factor_->X_inv_pm_node(j, side);
      EXPECT_NEAR((prod - Mat2c::identity()).norm_inf(), 0.0, 1e-12)
          << "node " << j << " side " << side;
    }
  }
}

TEST_F(FactorTest, LambdaCombinationEqualsExpMinusTwoChi1) {
  for (int j = 0; j < grid_->size(); j += 17) {
    const BoundaryFactors& bf = factor_->nodes()[j];
    const cplx plus = bf.L0p * bf.L1p - bf.L2p * bf.L2p;
    const cplx minus = bf.L0m * bf.L1m - bf.L2m * bf.L2m;
    EXPECT_NEAR(std::abs(plus - std::exp(-2.0 * bf.chi1_p)), 0.0,
                1e-12 * std::abs(plus));
    EXPECT_NEAR(std::abs(minus - std::exp(-2.0 * bf.chi1_m)), 0.0,
                1e-12 * std::abs(minus));
  }
}

TEST_F(FactorTest, FactorizationReproducesGAtAndBetweenNodes) {
  // G(t) assembled independently from the model parameters against
  // X+ (t) [X-(t)]^{-1} from the boundary tables.
  auto check = [&](double t, const BoundaryFactors& bf) {
    const EigenData e = eigen_data(t, *params_);
    const Mat2c lhs = matrix_G(t, *params_);
    const Mat2c rhs = FactorEvaluator::X_side(bf, e.l, e.fsqrt, params_->m, +1) *
                      FactorEvaluator::X_inv_side(bf, -1);
    EXPECT_NEAR((lhs - rhs).norm_inf(), 0.0, 1e-9 * lhs.norm_inf())
        << "t = " << t;
  };
  for (int j = 0; j < grid_->size(); j += 23)
    check(grid_->node(j).t, factor_->nodes()[j]);
  for (double t : {0.123, -0.987, 2.5, -17.0, 431.0})
    check(t, factor_->boundary_at(t));
}

TEST_F(FactorTest, NodeTablesAgreeWithSinglePointPath) {
  for (int j = 50; j < grid_->size(); j += 211) {
    const double t = grid_->node(j).t;
    const BoundaryFactors a = factor_->nodes()[j];
    const BoundaryFactors b = factor_->boundary_at(t);
    EXPECT_NEAR(std::abs(a.chi1_p - b.chi1_p), 0.0, 1e-11);
    EXPECT_NEAR(std::abs(a.fchi2_p - b.fchi2_p), 0.0, 1e-11);
    EXPECT_NEAR(std::abs(a.L0m - b.L0m), 0.0, 1e-10 * std::abs(a.L0m));
  }
}

TEST_F(FactorTest, OffAxisValuesApproachBoundaryLimits) {
  // X(t + i delta) -> X^+(t) and X(t - i delta) -> X^-(t) linearly in delta.
  // The raw chi's are not the right objects here: their Cauchy node sums need
  // delta above the node spacing and their log terms carry path-dependent
  // branches that only the exp/cosh/sinh combinations cancel. The ladder
  // stops at delta = 0.1 and checks the error keeps shrinking; a stalled
  // ratio would expose convergence to anything but the boundary value.
  for (double t : {0.37, 3.7}) {
    const BoundaryFactors bf = factor_->boundary_at(t);
    const EigenData e = eigen_data(t, *params_);
    const Mat2c Xp = FactorEvaluator::X_side(bf, e.l, e.fsqrt, params_->m, +1);
    const Mat2c Xm = FactorEvaluator::X_side(bf, e.l, e.fsqrt, params_->m, -1);
    double prev_up = -1.0, prev_dn = -1.0;
    for (double delta : {0.8, 0.4, 0.2, 0.1}) {
      const double up = (factor_->X(cplx{t, delta}) - Xp).norm_inf();
      const double dn = (factor_->X(cplx{t, -delta}) - Xm).norm_inf();
      if (prev_up >= 0.0) {
        EXPECT_LT(up, 0.75 * prev_up) << "t = " << t << ", delta = " << delta;
        EXPECT_LT(dn, 0.75 * prev_dn) << "t = " << t << ", delta = " << delta;
      }
      prev_up = up;
      prev_dn = dn;
    }
    EXPECT_LT(prev_up, 0.25 * (1.0 + Xp.norm_inf())) << "t = " << t;
    EXPECT_LT(prev_dn, 0.25 * (1.0 + Xm.norm_inf())) << "t = " << t;
  }
}

TEST_F(FactorTest, ChiTwoFormSwitchIsSeamless) {
  // The small-|s| and moment forms swap at |s| = 1; linear extrapolation to
  // the switch radius from either side must agree.
  const cplx dir = std::exp(iu * (pi / 7.0));
  auto val = [&](double r) { return factor_->chi2(r * dir); };
  const cplx inner = val(0.9985) + (val(0.9985) - val(0.997));   // -> r = 1
  const cplx outer = val(1.0015) - (val(1.003) - val(1.0015));   // -> r = 1
  const double scale = std::abs(val(0.9985));
  EXPECT_NEAR(std::abs(inner - outer), 0.0, 1e-5 * scale + 1e-12);
}

TEST_F(FactorTest, ClosureResidualIsTiny) {
  EXPECT_LT(std::abs(factor_->closure()), 1e-8);
}

TEST_F(FactorTest, FChiTwoApproachesItsLimitAtInfinity) {
  const cplx h0 = factor_->h0();
  auto dev = [&](double s_abs) {
    const cplx s = iu * s_abs;
    return std::abs(f_sqrt(s, *params_) * factor_->chi2(s) - h0);
  };
  const double d3 = dev(1e3), d4 = dev(1e4);
  EXPECT_LT(d4, 0.5 * d3);   // decay consistent with the log|s|/|s| tail
  EXPECT_LT(d4, 1e-3);
  EXPECT_GT(d3, 0.0);
}

TEST_F(FactorTest, GammaLineLogMatchesAdaptiveOracle) {
  const cplx s{40.0, -25.0};  // far from both legs of the contour
  auto oracle = [&](const std::vector<cplx>& path) {
    cplx acc = 0.0;
    for (size_t i = 0; i + 1 < path.size(); ++i)
      acc += oracles::integrate_segment(
          [&](cplx z) { return 1.0 / (z - s); }, path[i], path[i + 1], 1e-13);
    return acc;
  };
  const std::vector<cplx> p0 = surf_->canonical_path(kZeta0);
  const std::vector<cplx> p1 = surf_->canonical_path(jac_->zeta1);
  const cplx want = -oracle(p0) + oracle(p1);
  EXPECT_NEAR(std::abs(factor_->Gamma_line_log(s) - want), 0.0, 1e-10);
}

TEST_F(FactorTest, GammaPlainMatchesAdaptiveOracle) {
  ASSERT_EQ(jac_->sheet, 1);  // the frozen default-parameter inversion
  // Every canonical path leaves the branch point -s2 where f^{1/2} vanishes
  // like a square root; the first leg runs in the u^2 variable so the
  // adaptive bisection sees a smooth integrand.
  auto oracle = [&](const std::vector<cplx>& path) {
    const cplx d = path[1] - path[0];
    cplx acc = oracles::integrate(
        [&](double u) {
          const cplx z = path[0] + u * u * d;
          return (2.0 * u * d) / f_sqrt(z, *params_);
        },
        0.0, 1.0, 1e-13);
    for (size_t i = 1; i + 1 < path.size(); ++i)
      acc += oracles::integrate_segment(
          [&](cplx z) { return 1.0 / f_sqrt(z, *params_); }, path[i],
          path[i + 1], 1e-13);
    return acc;
  };
  const std::vector<cplx> p0 = surf_->canonical_path(kZeta0);
  const std::vector<cplx> p1 = surf_->canonical_path(jac_->zeta1);
  const cplx want = -oracle(p0) + oracle(p1);
  const cplx got = factor_->Gamma_plain([](cplx) { return cplx{1.0}; });
  EXPECT_NEAR(std::abs(got - want), 0.0, 1e-8 * (1.0 + std::abs(want)));
}

TEST_F(FactorTest, SurfaceFunctionIsContinuousAcrossTheCut) {
  // F(s, w) lives on the surface: crossing the plane cut while switching the
  // sheet must be continuous (the f^{1/2} flip is absorbed by w chi2).
  const cplx mid = 0.5 * (params_->s1 + params_->s2);
  const cplx nrm = iu * (params_->s2 - params_->s1) /
                   std::abs(params_->s2 - params_->s1);
  const double eps = 1e-6 * std::abs(params_->s2 - params_->s1);
  const cplx above = factor_->F_surface({mid + eps * nrm, 1});
  const cplx below = factor_->F_surface({mid - eps * nrm, 2});
  EXPECT_NEAR(std::abs(above - below), 0.0, 1e-6 * std::abs(above));
}

TEST_F(FactorTest, LambdasAreSmoothWhereGammaCrossesTheAxis) {
  // The contour from zeta0 to the divisor point crosses the real axis; chi1
  // and f^{1/2} chi2 jump there by absorbable half-periods, and the Lambda
  // boundary values must stay smooth through the crossing.
  const std::vector<cplx> p0 = surf_->canonical_path(kZeta0);
  double t_star = 0.0;
  bool found = false;
  for (size_t i = 0; i + 1 < p0.size() && !found; ++i) {
    const double y0 = p0[i].imag(), y1 = p0[i + 1].imag();
    if ((y0 < 0.0) != (y1 < 0.0)) {
      const double x = y0 / (y0 - y1);
      t_star = p0[i].real() + x * (p0[i + 1].real() - p0[i].real());
      found = true;
    }
  }
  ASSERT_TRUE(found);
  const double h = 1e-3;
  auto check_smooth = [&](auto&& f) {
    const cplx second = f(t_star + h) - 2.0 * f(t_star) + f(t_star - h);
    EXPECT_NEAR(std::abs(second), 0.0, 1e-3 * (1.0 + std::abs(f(t_star))))
        << "crossing at t = " << t_star;
  };
  check_smooth([&](double t) { return factor_->boundary_at(t).L0p; });
  check_smooth([&](double t) { return factor_->boundary_at(t).L2m; });
}

TEST_F(FactorTest, PoleGuardThrowsAtConstructedPoles) {
  EXPECT_THROW(factor_->chi1(kZeta0), PoleError);
  EXPECT_THROW(factor_->chi2(jac_->zeta1), PoleError);
}

TEST_F(FactorTest, EtaZeroMatchesDefinition) {
  const cplx l0 = kZeta0 * kZeta0 - params_->mu * params_->mu;
  EXPECT_NEAR(std::abs(factor_->eta0() -
                       params_->m / (l0 + f_sqrt(kZeta0, *params_))),
              0.0, 1e-14);
}

}  // namespace
}  // namespace panelwave
