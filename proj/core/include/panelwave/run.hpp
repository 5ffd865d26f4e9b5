#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "panelwave/field.hpp"

namespace panelwave {

enum class SweepKind { Theta, R };

// One run = physical inputs + numerical controls + sweep layout. The figure
// presets fill everything; a flat key=value config file (and CLI flags)
// override individual entries.
struct RunConfig {
  PhysicalInputs phys;
  int figure = 0;  // 0 when not built from a preset
  int nodes = 1000;
  cplx zeta0{2.0, 2.0};
  int cheb_nodes = 256;
  int legendre_nodes = 48;
  SweepKind sweep = SweepKind::Theta;
  double r = 5.0;              // radius of theta sweeps
  std::vector<double> thetas;  // angles of r sweeps; {pi/4} when empty
  double r_min = 0.2, r_max = 10.0;
  int theta_samples = 720;
  int r_samples = 500;
  int threads = 0;  // 0 = hardware concurrency
};

// Reference parameter sets; valid figures are 3..9.
RunConfig figure_preset(int figure);

// Applies one key=value override; throws ConfigError for unknown keys or
// unparsable values.
void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value);

// Flat key=value file; '#' starts a comment, blank lines ignored.
void apply_config_file(RunConfig& cfg, const std::string& path);

// The assembled solution chain; stages hold pointers into earlier stages, so
// the pipeline is move-only.
struct Pipeline {
  RunConfig cfg;
  std::unique_ptr<ModelParams> params;  // stable address: stages point into it
  std::unique_ptr<CircleGrid> grid;
  std::unique_ptr<ContourTables> tables;
  std::unique_ptr<EllipticSurface> surf;
  JacobiSolution jac;
  std::unique_ptr<FactorEvaluator> factor;
  std::unique_ptr<ContourSolver> solver;
  std::unique_ptr<FieldEvaluator> field;
};

Pipeline run_pipeline(const RunConfig& cfg);

// key = value reports, deterministic formatting.
void write_params_report(std::ostream& os, const RunConfig& cfg,
                         const ModelParams& p);
void write_solve_report(std::ostream& os, const Pipeline& pl);

// CSV with "# key = value" metadata lines and header theta_rad,P or r_m,P.
void write_sweep_csv(std::ostream& os, const Pipeline& pl,
                     const std::vector<FieldSample>& samples, bool r_sweep);

// The residual battery behind the `check` subcommand.
struct CheckReport {
  struct Item {
    std::string name;
    double value;
    double tol;
    bool pass;
  };
  std::vector<Item> items;
  bool all_pass() const;
};

CheckReport run_checks(const Pipeline& pl);
void write_check_report(std::ostream& os, const CheckReport& rep);

}  // namespace panelwave
