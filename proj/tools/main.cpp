#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "panelwave/run.hpp"
#include "svg_plot.hpp"

namespace pw = panelwave;

namespace {

struct CommonOpts {
  int figure = 3;
  std::string config;
  std::string out;
  int nodes = 0;
  std::string sweep;
  double r = 0.0;
  bool plot = false;
};

void add_common(CLI::App* sub, CommonOpts& opt) {
  sub->add_option("--figure", opt.figure, "reference preset (3..9)")
      ->check(CLI::Range(3, 9));
  sub->add_option("--config", opt.config, "flat key=value config file");
  sub->add_option("--out", opt.out, "output file (default: stdout)");
  sub->add_option("--nodes", opt.nodes, "contour quadrature parameter n")
      ->check(CLI::PositiveNumber);
}

pw::RunConfig make_config(const CLI::App* sub, const CommonOpts& opt) {
  pw::RunConfig cfg = pw::figure_preset(opt.figure);
  if (!opt.config.empty()) pw::apply_config_file(cfg, opt.config);
  auto given = [&](const std::string& name) {
    const CLI::Option* o = sub->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  if (given("--nodes")) cfg.nodes = opt.nodes;
  if (given("--sweep")) pw::apply_override(cfg, "sweep", opt.sweep);
  if (given("--r")) cfg.r = opt.r;
  return cfg;
}

// Stream to --out or stdout.
class OutStream {
 public:
  explicit OutStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw pw::ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string indexed_name(const std::string& base, int i) {
  size_t dot = base.find_last_of('.');
  size_t slash = base.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return base + "_" + std::to_string(i);
  return base.substr(0, dot) + "_" + std::to_string(i) + base.substr(dot);
}

std::string svg_name(const std::string& csv) {
  size_t dot = csv.find_last_of('.');
  size_t slash = csv.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return csv + ".svg";
  return csv.substr(0, dot) + ".svg";
}

void emit_sweep(const pw::Pipeline& pl, const std::vector<pw::FieldSample>& samples,
                bool r_sweep, const std::string& out, bool plot) {
  OutStream os(out);
  pw::write_sweep_csv(os.get(), pl, samples, r_sweep);
  if (plot) {
    if (out.empty())
      throw pw::ConfigError("--plot needs --out to name the SVG file");
    std::vector<double> x, y;
    x.reserve(samples.size());
    y.reserve(samples.size());
    for (const auto& s : samples) {
      x.push_back(r_sweep ? s.r : s.theta);
      y.push_back(s.P);
    }
    pw::write_svg_curve(svg_name(out), x, y, r_sweep ? "r" : "theta [rad]",
                        r_sweep ? "P(r)" : "P(theta)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "plane-wave scattering by a rigid screen joined to a perforated "
      "sandwich panel with membrane backing"};
  app.require_subcommand(1);

  CommonOpts opt;
  CLI::App* sub_params =
      app.add_subcommand("derive-params", "derive model parameters and exit");
  CLI::App* sub_solve =
      app.add_subcommand("solve", "run the factorization and report constants");
  CLI::App* sub_sweep =
      app.add_subcommand("sweep", "solve and tabulate P along a sweep");
  CLI::App* sub_check =
      app.add_subcommand("check", "solve and run the residual battery");
  for (CLI::App* s : {sub_params, sub_solve, sub_sweep, sub_check})
    add_common(s, opt);
  sub_sweep->add_option("--sweep", opt.sweep, "sweep kind: theta or r");
  sub_sweep->add_option("--r", opt.r, "radius for theta sweeps");
  sub_sweep->add_flag("--plot", opt.plot, "also write an SVG plot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (sub == sub_params) {
      pw::RunConfig cfg = make_config(sub, opt);
      pw::ModelParams p = pw::derive_params(cfg.phys);
      OutStream os(opt.out);
      pw::write_params_report(os.get(), cfg, p);
      return 0;
    }

    pw::RunConfig cfg = make_config(sub, opt);
    pw::Pipeline pl = pw::run_pipeline(cfg);

    if (sub == sub_solve) {
      OutStream os(opt.out);
      pw::write_solve_report(os.get(), pl);
      return 0;
    }
    if (sub == sub_sweep) {
      if (pl.cfg.sweep == pw::SweepKind::Theta) {
        auto samples = pl.field->sweep_theta(pl.cfg.r, pl.cfg.theta_samples,
                                             1e-3, pl.cfg.threads);
        emit_sweep(pl, samples, false, opt.out, opt.plot);
      } else {
        std::vector<double> thetas =
            pl.cfg.thetas.empty() ? std::vector<double>{pw::pi / 4}
                                  : pl.cfg.thetas;
        bool indexed = thetas.size() > 1 && !opt.out.empty();
        for (size_t i = 0; i < thetas.size(); ++i) {
          auto samples =
              pl.field->sweep_r(thetas[i], pl.cfg.r_min, pl.cfg.r_max,
                                pl.cfg.r_samples, pl.cfg.threads);
          std::string out = indexed
                                ? indexed_name(opt.out, static_cast<int>(i + 1))
                                : opt.out;
          emit_sweep(pl, samples, true, out, opt.plot);
        }
      }
      return 0;
    }
    if (sub == sub_check) {
      pw::CheckReport rep = pw::run_checks(pl);
      OutStream os(opt.out);
      pw::write_check_report(os.get(), rep);
      return rep.all_pass() ? 0 : 3;
    }
  } catch (const pw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const pw::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
