#include "panelwave/factor.hpp"

#include <array>
#include <cmath>
#include <span>

#include "panelwave/errors.hpp"

namespace panelwave {

namespace {

// Evaluation point for the Gamma / loop Cauchy transforms at real t. Gamma
// and the projection of the b-cycle cross the real axis transversally, so
// the transforms jump at isolated points of the contour; the nudge keeps the
// evaluation off those measure-zero collisions. Either side gives the same
// Lambda values: the jumps shift chi1 and f^{1/2} chi2 by half-periods of
// 2 pi i, which exp/cosh/sinh absorb.
cplx nudged(double t) { return {t, 1e-9 * (1.0 + std::abs(t))}; }

BoundaryFactors assemble(cplx log_Delta, cplx log_eps, cplx S1, cplx S2,
                         cplx l, cplx fsqrt, cplx m) {
  BoundaryFactors bf;
  bf.chi1_p = 0.25 * log_Delta + S1;
  bf.chi1_m = -0.25 * log_Delta + S1;
  bf.fchi2_p = 0.25 * log_eps + S2;
  bf.fchi2_m = -0.25 * log_eps + S2;
  auto fill = [&](cplx chi1, cplx fchi2, cplx& L0, cplx& L1, cplx& L2) {
    cplx e = std::exp(-chi1);
    cplx ch = std::cosh(fchi2);
    cplx sh = std::sinh(fchi2) / fsqrt;
    L0 = e * (ch + l * sh);
    L1 = e * (ch - l * sh);
    L2 = e * m * sh;
  };
  fill(bf.chi1_p, bf.fchi2_p, bf.L0p, bf.L1p, bf.L2p);
  fill(bf.chi1_m, bf.fchi2_m, bf.L0m, bf.L1m, bf.L2m);
  return bf;
}

}  // namespace

FactorEvaluator::FactorEvaluator(const ContourTables& tables,
                                 const EllipticSurface& surf,
                                 const JacobiSolution& jac, cplx zeta0)
    : tables_(&tables), surf_(&surf), jac_(jac), zeta0_(zeta0) {
  const ModelParams& p = *tables.params;
  sign1_ = (jac_.sheet == 1) ? 1.0 : -1.0;
  path0_ = surf.canonical_path(zeta0);
  path1_ = surf.canonical_path(jac_.zeta1);

  cplx l0 = zeta0 * zeta0 - p.mu * p.mu;
  eta0_ = p.m / (l0 + f_sqrt(zeta0, p));

  const double ma = static_cast<double>(jac_.m_a);
  const double mb = static_cast<double>(jac_.m_b);
  auto one = [](cplx) -> cplx { return 1.0; };
  auto ident = [](cplx t) -> cplx { return t; };
  K1_ = Gamma_plain(one) + ma * surf.A() + mb * surf.B();
  IA_ = tables.grid->integrate(tables.rho_A) / (2.0 * pi * iu);
  closure_ = IA_ + K1_;
  h0_ = -0.5 * (Gamma_plain(ident) + ma * surf.a_cycle(ident) +
                mb * surf.b_cycle(ident));

  const int M = tables.grid->size();
  pv_Delta_.resize(M);
  pv_A_.resize(M);
  pv_B_.resize(M);
  std::array<std::span<const cplx>, 3> dens = {
      std::span<const cplx>(tables.rho_Delta),
      std::span<const cplx>(tables.rho_A),
      std::span<const cplx>(tables.rho_B)};
  std::array<std::span<cplx>, 3> outs = {std::span<cplx>(pv_Delta_),
                                         std::span<cplx>(pv_A_),
                                         std::span<cplx>(pv_B_)};
  tables.grid->cauchy_pv_nodes(dens, outs);

  pv_k0_.resize(M);
  node_vals_.resize(M);
  for (int j = 0; j < M; ++j) {
    const double t = tables.grid->node(j).t;
    const EigenData& e = tables.eig[j];
    pv_k0_[j] = ContourTables::cauchy_kappa0_pv(t);

    cplx seff = nudged(t);
    cplx S1 = 0.5 * (pv_Delta_[j] - tables.ktau * pv_k0_[j]) +
              0.5 * Gamma_line_log(seff);
    cplx contour = Gamma_cauchy(seff) + ma * surf.a_cycle_cauchy(seff) +
                   mb * surf.b_cycle_cauchy(seff);
    cplx S2 = std::abs(t) <= 1.0
                  ? e.fsqrt * 0.5 * (pv_A_[j] + contour)
                  : e.fsqrt / (2.0 * t) * (pv_B_[j] - IA_ + t * contour);
    node_vals_[j] = assemble(tables.log_Delta[j], tables.log_eps[j], S1, S2,
                             e.l, e.fsqrt, p.m);
  }
}

cplx FactorEvaluator::Gamma_plain(const std::function<cplx(cplx)>& g) const {
  return -surf_->path_integral(path0_, g) +
         sign1_ * surf_->path_integral(path1_, g);
}

cplx FactorEvaluator::Gamma_cauchy(cplx s) const {
  return -surf_->path_cauchy(path0_, s) + sign1_ * surf_->path_cauchy(path1_, s);
}

cplx FactorEvaluator::Gamma_line_log(cplx s) const {
  auto log_sum = [&](const std::vector<cplx>& path) {
    cplx acc = 0.0;
    for (size_t i = 0; i + 1 < path.size(); ++i)
      acc += std::log((path[i + 1] - s) / (path[i] - s));
    return acc;
  };
  return -log_sum(path0_) + log_sum(path1_);
}

cplx FactorEvaluator::contour_cauchy(cplx s) const {
  return Gamma_cauchy(s) +
         static_cast<double>(jac_.m_a) * surf_->a_cycle_cauchy(s) +
         static_cast<double>(jac_.m_b) * surf_->b_cycle_cauchy(s);
}

BoundaryFactors FactorEvaluator::boundary_at(double t) const {
  const ModelParams& p = *tables_->params;
  EigenData e = eigen_data(t, p);
  cplx seff = nudged(t);
  cplx S1 = 0.5 * (tables_->grid->cauchy_pv(tables_->rho_Delta, t) -
                   tables_->ktau * ContourTables::cauchy_kappa0_pv(t)) +
            0.5 * Gamma_line_log(seff);
  cplx contour = contour_cauchy(seff);
  cplx S2;
  if (std::abs(t) <= 1.0) {
    S2 = e.fsqrt * 0.5 * (tables_->grid->cauchy_pv(tables_->rho_A, t) + contour);
  } else {
    S2 = e.fsqrt / (2.0 * t) *
         (tables_->grid->cauchy_pv(tables_->rho_B, t) - IA_ + t * contour);
  }
  return assemble(tables_->log_Delta_at(t), tables_->log_eps_at(t), S1, S2, e.l,
                  e.fsqrt, p.m);
}

Mat2c FactorEvaluator::X_side(const BoundaryFactors& bf, cplx l, cplx fsqrt,
                              cplx m, int side) {
  cplx chi1 = side > 0 ? bf.chi1_p : bf.chi1_m;
  cplx fchi2 = side > 0 ? bf.fchi2_p : bf.fchi2_m;
  cplx e = std::exp(chi1);
  cplx ch = std::cosh(fchi2);
  cplx sh = std::sinh(fchi2) / fsqrt;
  return {e * (ch + l * sh), e * m * sh, e * m * sh, e * (ch - l * sh)};
}

Mat2c FactorEvaluator::X_inv_side(const BoundaryFactors& bf, int side) {
  if (side > 0) return {bf.L1p, -bf.L2p, -bf.L2p, bf.L0p};
  return {bf.L1m, -bf.L2m, -bf.L2m, bf.L0m};
}

Mat2c FactorEvaluator::X_pm_node(int j, int side) const {
  const EigenData& e = tables_->eig[j];
  return X_side(node_vals_[j], e.l, e.fsqrt, tables_->params->m, side);
}

Mat2c FactorEvaluator::X_inv_pm_node(int j, int side) const {
  return X_inv_side(node_vals_[j], side);
}

void FactorEvaluator::guard_pole(cplx s) const {
  double tol = 1e-9 * (1.0 + std::abs(s));
  if (std::abs(s - zeta0_) < tol)
    throw PoleError("evaluation point coincides with the auxiliary pole");
  if (std::abs(s - jac_.zeta1) < tol)
    throw PoleError("evaluation point coincides with the divisor point");
}

cplx FactorEvaluator::chi1(cplx s) const {
  guard_pole(s);
  const auto& nds = tables_->grid->nodes();
  cplx acc = 0.0;
  for (int j = 0; j < tables_->grid->size(); ++j)
    acc += nds[j].w * tables_->rho_Delta[j] / (nds[j].t - s);
  acc = acc / (2.0 * pi * iu) - tables_->ktau * ContourTables::cauchy_kappa0(s);
  return 0.5 * acc + 0.5 * Gamma_line_log(s);
}

cplx FactorEvaluator::chi2(cplx s) const {
  guard_pole(s);
  const auto& nds = tables_->grid->nodes();
  cplx contour = contour_cauchy(s);
  if (std::abs(s) <= 1.0) {
    cplx acc = 0.0;
    for (int j = 0; j < tables_->grid->size(); ++j)
      acc += nds[j].w * tables_->rho_A[j] / (nds[j].t - s);
    return 0.5 * (acc / (2.0 * pi * iu) + contour);
  }
  cplx acc = 0.0;
  for (int j = 0; j < tables_->grid->size(); ++j)
    acc += nds[j].w * tables_->rho_B[j] / (nds[j].t - s);
  return (acc / (2.0 * pi * iu) - IA_ + s * contour) / (2.0 * s);
}

Mat2c FactorEvaluator::X(cplx s) const {
  const ModelParams& p = *tables_->params;
  cplx fs = f_sqrt(s, p);
  cplx c1 = chi1(s);
  cplx fc2 = fs * chi2(s);
  cplx e = std::exp(c1);
  cplx ch = std::cosh(fc2);
  cplx sh = std::sinh(fc2) / fs;
  cplx l = s * s - p.mu * p.mu;
  return {e * (ch + l * sh), e * p.m * sh, e * p.m * sh, e * (ch - l * sh)};
}

Mat2c FactorEvaluator::X_inv(cplx s) const {
  const ModelParams& p = *tables_->params;
  cplx fs = f_sqrt(s, p);
  cplx c1 = chi1(s);
  cplx fc2 = fs * chi2(s);
  cplx e = std::exp(-c1);
  cplx ch = std::cosh(fc2);
  cplx sh = std::sinh(fc2) / fs;
  cplx l = s * s - p.mu * p.mu;
  return {e * (ch - l * sh), -e * p.m * sh, -e * p.m * sh, e * (ch + l * sh)};
}

cplx FactorEvaluator::F_surface(const SheetPoint& q) const {
  cplx w = (q.sheet == 1 ? 1.0 : -1.0) * f_sqrt(q.s, *tables_->params);
  return std::exp(chi1(q.s) + w * chi2(q.s));
}

}  // namespace panelwave
