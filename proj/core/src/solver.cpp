#include "panelwave/solver.hpp"

#include <array>
#include <cmath>
#include <span>

#include "panelwave/errors.hpp"

namespace panelwave {

namespace {
const Vec2c kJ{-1.0, 1.0};
}

Vec2c ContourSolver::density_V(double t, const BoundaryFactors& bf, cplx gamma,
                               cplx l) const {
  const ModelParams& p = *fac_->tables().params;
  Mat2c Xm = FactorEvaluator::X_side(bf, l, f_sqrt(cplx{t, 0.0}, p), p.m, -1);
  return Xm * kJ * (1.0 / (gamma * l));
}

ContourSolver::ContourSolver(const FactorEvaluator& fac) : fac_(&fac) {
  const ContourTables& tab = fac.tables();
  const CircleGrid& grid = *tab.grid;
  const ModelParams& p = *tab.params;
  const JacobiSolution& jac = fac.jacobi();
  const int M = grid.size();

  ksin_ = p.k * std::sin(p.theta0);
  for (int j = 0; j < M; ++j)
    if (std::abs(grid.node(j).t + ksin_) <= 1e-3 * std::abs(p.k))
      throw NearPoleError(
          "incidence pole too close to a quadrature node; perturb theta0 or "
          "the node count");

  // Density vectors V = X^- J / (gamma l) and W = -2 alpha i V / (t + k sin).
  V0_.resize(M);
  V1_.resize(M);
  W0_.resize(M);
  W1_.resize(M);
  for (int j = 0; j < M; ++j) {
    const EigenData& e = tab.eig[j];
    Mat2c Xm = fac.X_pm_node(j, -1);
    Vec2c V = Xm * kJ * (1.0 / (e.gamma * e.l));
    Vec2c W = V * (-2.0 * p.alpha * iu / (grid.node(j).t + ksin_));
    V0_[j] = V.v0;
    V1_[j] = V.v1;
    W0_[j] = W.v0;
    W1_[j] = W.v1;
  }

  // One-sided limits Psi^{(n)}_{+-} = +-density/2 + PV[density].
  std::vector<cplx> pv0(M), pv1(M), pw0(M), pw1(M);
  std::array<std::span<const cplx>, 4> dens = {
      std::span<const cplx>(V0_), std::span<const cplx>(V1_),
      std::span<const cplx>(W0_), std::span<const cplx>(W1_)};
  std::array<std::span<cplx>, 4> outs = {std::span<cplx>(pv0),
                                         std::span<cplx>(pv1),
                                         std::span<cplx>(pw0),
                                         std::span<cplx>(pw1)};
  grid.cauchy_pv_nodes(dens, outs);

  psi1_p_.resize(M);
  psi1_m_.resize(M);
  psi2_p_.resize(M);
  psi2_m_.resize(M);
  for (int j = 0; j < M; ++j) {
    Vec2c V{V0_[j], V1_[j]}, W{W0_[j], W1_[j]}, pV{pv0[j], pv1[j]},
        pW{pw0[j], pw1[j]};
    psi1_p_[j] = pV + V * 0.5;
    psi1_m_[j] = pV - V * 0.5;
    psi2_p_[j] = pW + W * 0.5;
    psi2_m_[j] = pW - W * 0.5;
  }

  // Values of the sectionally analytic Psi^{(n)} at the divisor point.
  cplx zeta1 = jac.zeta1;
  Vec2c psi1_z{0.0, 0.0}, psi2_z{0.0, 0.0};
  for (int j = 0; j < M; ++j) {
    cplx kern = grid.node(j).w / (grid.node(j).t - zeta1);
    psi1_z = psi1_z + Vec2c{V0_[j], V1_[j]} * kern;
    psi2_z = psi2_z + Vec2c{W0_[j], W1_[j]} * kern;
  }
  psi1_z = psi1_z * (1.0 / (2.0 * pi * iu));
  psi2_z = psi2_z * (1.0 / (2.0 * pi * iu));

  // Regularity at the divisor point and the displacement condition form a
  // 2x2 linear system for C and N.
  cplx eta0 = fac.eta0();
  cplx lz1 = zeta1 * zeta1 - p.mu * p.mu;
  cplx q1 = (jac.w1 + lz1) / p.m;
  Pi0_ = (q1 + eta0) / (zeta1 - fac.zeta0());
  Pi1_ = q1 * psi1_z.v0 + psi1_z.v1;
  Pi2_ = q1 * psi2_z.v0 + psi2_z.v1;

  Ehat0_.resize(M);
  Ehat1_.resize(M);
  Ehat2_.resize(M);
  Etil0_.resize(M);
  Etil1_.resize(M);
  Etil2_.resize(M);
  const auto& nv = fac.nodes();
  for (int j = 0; j < M; ++j) {
    const BoundaryFactors& b = nv[j];
    cplx pole = 1.0 / (grid.node(j).t - fac.zeta0());
    Ehat0_[j] = (b.L1p - b.L1m - eta0 * b.L2p + eta0 * b.L2m) * pole;
    Etil0_[j] = (b.L2m - b.L2p - eta0 * b.L0m + eta0 * b.L0p) * pole;
    Ehat1_[j] = b.L1p * psi1_p_[j].v0 - b.L1m * psi1_m_[j].v0 -
                b.L2p * psi1_p_[j].v1 + b.L2m * psi1_m_[j].v1;
    Ehat2_[j] = b.L1p * psi2_p_[j].v0 - b.L1m * psi2_m_[j].v0 -
                b.L2p * psi2_p_[j].v1 + b.L2m * psi2_m_[j].v1;
    Etil1_[j] = b.L2m * psi1_m_[j].v0 - b.L2p * psi1_p_[j].v0 -
                b.L0m * psi1_m_[j].v1 + b.L0p * psi1_p_[j].v1;
    Etil2_[j] = b.L2m * psi2_m_[j].v0 - b.L2p * psi2_p_[j].v0 -
                b.L0m * psi2_m_[j].v1 + b.L0p * psi2_p_[j].v1;
  }

  auto omega = [&](const std::vector<cplx>& E) {
    cplx acc = 0.0;
    for (int j = 0; j < M; ++j) acc += grid.node(j).w * E[j] * tab.eig[j].gamma;
    return acc;
  };
  Om0_ = omega(Ehat0_);
  Om1_ = omega(Ehat1_);
  Om2_ = omega(Ehat2_);

  cplx det = Pi0_ * Om1_ - Pi1_ * Om0_;
  double scale = std::abs(Pi0_ * Om1_) + std::abs(Pi1_ * Om0_);
  if (std::abs(det) <= 1e-12 * (scale + 1e-300))
    throw SingularSystemError("closure system is singular at this parameter set");
  C_ = (Pi1_ * Om2_ - Pi2_ * Om1_) / det;
  N_ = (Pi2_ * Om0_ - Pi0_ * Om2_) / det;

  Dhat_.resize(M);
  Dtil_.resize(M);
  for (int j = 0; j < M; ++j) {
    Dhat_[j] = C_ * Ehat0_[j] + N_ * Ehat1_[j] + Ehat2_[j];
    Dtil_[j] = C_ * Etil0_[j] + N_ * Etil1_[j] + Etil2_[j];
  }
  disp_ = omega(Dhat_);
}

ContourSolver::PhiPair ContourSolver::Phi_both(double t) const {
  const ContourTables& tab = fac_->tables();
  const ModelParams& p = *tab.params;
  BoundaryFactors bf = fac_->boundary_at(t);
  EigenData e = eigen_data(t, p);

  Vec2c V = density_V(t, bf, e.gamma, e.l);
  Vec2c W = V * (-2.0 * p.alpha * iu / (t + ksin_));
  Vec2c pV{tab.grid->cauchy_pv(V0_, t), tab.grid->cauchy_pv(V1_, t)};
  Vec2c pW{tab.grid->cauchy_pv(W0_, t), tab.grid->cauchy_pv(W1_, t)};

  cplx eta0 = fac_->eta0();
  cplx pole = 1.0 / (t - fac_->zeta0());
  PhiPair out;
  for (int side : {+1, -1}) {
    double h = 0.5 * side;
    Vec2c psi1 = pV + V * h;
    Vec2c psi2 = pW + W * h;
    cplx B0 = C_ * pole + N_ * psi1.v0 + psi2.v0;
    cplx B1 = C_ * eta0 * pole + N_ * psi1.v1 + psi2.v1;
    cplx L0 = side > 0 ? bf.L0p : bf.L0m;
    cplx L1 = side > 0 ? bf.L1p : bf.L1m;
    cplx L2 = side > 0 ? bf.L2p : bf.L2m;
    Vec2c phi{L1 * B0 - L2 * B1, -L2 * B0 + L0 * B1};
    phi = phi * static_cast<double>(side);
    (side > 0 ? out.plus : out.minus) = phi;
  }
  return out;
}

Vec2c ContourSolver::Phi_side(double t, int side) const {
  PhiPair pp = Phi_both(t);
  return side > 0 ? pp.plus : pp.minus;
}

Vec2c ContourSolver::rhs(double t) const {
  const ModelParams& p = *fac_->tables().params;
  cplx gamma = gamma_branch(cplx{t, 0.0}, p);
  cplx l = t * t - p.mu * p.mu;
  return kJ * ((N_ - 2.0 * p.alpha * iu / (t + ksin_)) / (gamma * l));
}

Vec2c ContourSolver::bc_residual(double t) const {
  const ModelParams& p = *fac_->tables().params;
  PhiPair pp = Phi_both(t);
  return matrix_G(cplx{t, 0.0}, p) * pp.plus + pp.minus - rhs(t);
}

cplx ContourSolver::Dhat_at(double t) const {
  PhiPair pp = Phi_both(t);
  return pp.plus.v0 + pp.minus.v0;
}

cplx ContourSolver::Dtil_at(double t) const {
  PhiPair pp = Phi_both(t);
  return pp.plus.v1 + pp.minus.v1;
}

}  // namespace panelwave
