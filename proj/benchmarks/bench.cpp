#include <benchmark/benchmark.h>

#include <array>
#include <span>

#include "panelwave/run.hpp"

namespace pw = panelwave;

namespace {

pw::RunConfig cfg_with_nodes(int nodes) {
  pw::RunConfig cfg = pw::figure_preset(3);
  cfg.nodes = nodes;
  return cfg;
}

void BM_grid_build(benchmark::State& state) {
  for (auto _ : state) {
    pw::CircleGrid g(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(g.size());
  }
}
BENCHMARK(BM_grid_build)->Arg(400)->Arg(1000);

void BM_pv_node_transform(benchmark::State& state) {
  pw::CircleGrid g(static_cast<int>(state.range(0)));
  pw::ModelParams p = pw::derive_params(pw::figure_preset(3).phys);
  pw::ContourTables tab(p, g);
  std::vector<pw::cplx> out(g.size());
  for (auto _ : state) {
    std::array<std::span<const pw::cplx>, 1> dens = {
        std::span<const pw::cplx>(tab.rho_Delta)};
    std::array<std::span<pw::cplx>, 1> outs = {std::span<pw::cplx>(out)};
    g.cauchy_pv_nodes(dens, outs);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_pv_node_transform)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_factor_nodes(benchmark::State& state) {
  pw::RunConfig cfg = cfg_with_nodes(static_cast<int>(state.range(0)));
  pw::ModelParams p = pw::derive_params(cfg.phys);
  pw::CircleGrid g(cfg.nodes);
  pw::ContourTables tab(p, g);
  pw::EllipticSurface surf(p, cfg.cheb_nodes, cfg.legendre_nodes);
  pw::cplx d0 = pw::compute_d0(surf, tab, cfg.zeta0);
  pw::JacobiSolution jac = pw::solve_inversion(surf, d0);
  for (auto _ : state) {
    pw::FactorEvaluator fac(tab, surf, jac, cfg.zeta0);
    benchmark::DoNotOptimize(fac.h0());
  }
}
BENCHMARK(BM_factor_nodes)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_field_point(benchmark::State& state) {
  static pw::Pipeline pl = pw::run_pipeline(cfg_with_nodes(400));
  double th = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pl.field->P(5.0, th));
    th += 1e-6;  // defeat caching of identical arguments
  }
}
BENCHMARK(BM_field_point);

void BM_full_solve(benchmark::State& state) {
  pw::RunConfig cfg = cfg_with_nodes(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    pw::Pipeline pl = pw::run_pipeline(cfg);
    benchmark::DoNotOptimize(pl.solver->N());
  }
}
BENCHMARK(BM_full_solve)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
