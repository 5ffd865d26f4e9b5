#include "panelwave/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "panelwave/errors.hpp"

namespace panelwave {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string fmt_cplx(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("value '" + v + "' for key '" + key +
                      "' is not a number");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("value '" + v + "' for key '" + key +
                      "' is not an integer");
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(key, item));
  }
  if (out.empty())
    throw ConfigError("key '" + key + "' needs a comma-separated list");
  return out;
}

}  // namespace

RunConfig figure_preset(int figure) {
  RunConfig cfg;  // defaults are the small-cell reference set at r = 5
  cfg.figure = figure;
  switch (figure) {
    case 3:
      break;
    case 4:
      cfg.phys.theta0 = pi / 16;
      break;
    case 5:
      cfg.phys.rho_f_over_m0 = 500.0;
      break;
    case 6:
      cfg.r = 3.0;
      break;
    case 7:
      cfg.sweep = SweepKind::R;
      cfg.thetas = {pi / 16, pi / 8, pi / 4, pi / 3, 5.0 * pi / 12};
      break;
    case 8:
      cfg.phys.abs_k = 5.0;
      cfg.phys.arg_k = std::atan(0.02);
      cfg.phys.abs_alpha = 250.0;
      break;
    case 9:
      cfg.phys.d = cfg.phys.d1 = cfg.phys.d2 = 0.2;
      cfg.phys.a = 0.005;
      cfg.phys.arg_k = std::atan(0.02);
      break;
    default:
      throw ConfigError("figure must be between 3 and 9");
  }
  return cfg;
}

void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value) {
  auto& ph = cfg.phys;
  if (key == "abs_k") ph.abs_k = parse_double(key, value);
  else if (key == "arg_k") ph.arg_k = parse_double(key, value);
  else if (key == "theta0") ph.theta0 = parse_double(key, value);
  else if (key == "abs_alpha") ph.abs_alpha = parse_double(key, value);
  else if (key == "rho_f_over_m0") ph.rho_f_over_m0 = parse_double(key, value);
  else if (key == "d") ph.d = parse_double(key, value);
  else if (key == "d1") ph.d1 = parse_double(key, value);
  else if (key == "d2") ph.d2 = parse_double(key, value);
  else if (key == "a") ph.a = parse_double(key, value);
  else if (key == "tau_re") {
    cplx t = ph.tau_override.value_or(cplx{0.0, 0.0});
    ph.tau_override = cplx{parse_double(key, value), t.imag()};
  } else if (key == "tau_im") {
    cplx t = ph.tau_override.value_or(cplx{0.0, 0.0});
    ph.tau_override = cplx{t.real(), parse_double(key, value)};
  } else if (key == "nodes") cfg.nodes = parse_int(key, value);
  else if (key == "cheb_nodes") cfg.cheb_nodes = parse_int(key, value);
  else if (key == "legendre_nodes") cfg.legendre_nodes = parse_int(key, value);
  else if (key == "zeta0_re") cfg.zeta0 = {parse_double(key, value), cfg.zeta0.imag()};
  else if (key == "zeta0_im") cfg.zeta0 = {cfg.zeta0.real(), parse_double(key, value)};
  else if (key == "sweep") {
    std::string v = trim(value);
    if (v == "theta") cfg.sweep = SweepKind::Theta;
    else if (v == "r") cfg.sweep = SweepKind::R;
    else throw ConfigError("key 'sweep' accepts 'theta' or 'r', got '" + v + "'");
  } else if (key == "r") cfg.r = parse_double(key, value);
  else if (key == "thetas") cfg.thetas = parse_list(key, value);
  else if (key == "r_min") cfg.r_min = parse_double(key, value);
  else if (key == "r_max") cfg.r_max = parse_double(key, value);
  else if (key == "theta_samples") cfg.theta_samples = parse_int(key, value);
  else if (key == "r_samples") cfg.r_samples = parse_int(key, value);
  else if (key == "threads") cfg.threads = parse_int(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        " is not key=value: '" + line + "'");
    apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

Pipeline run_pipeline(const RunConfig& cfg) {
  if (cfg.nodes < 8) throw ConfigError("nodes must be at least 8");
  if (cfg.cheb_nodes < 16) throw ConfigError("cheb_nodes must be at least 16");
  if (cfg.legendre_nodes < 4)
    throw ConfigError("legendre_nodes must be at least 4");
  if (cfg.theta_samples < 1 || cfg.r_samples < 2)
    throw ConfigError("sweep resolutions must be positive");

  Pipeline pl;
  pl.cfg = cfg;
  pl.params = std::make_unique<ModelParams>(derive_params(cfg.phys));
  pl.grid = std::make_unique<CircleGrid>(cfg.nodes);
  pl.tables = std::make_unique<ContourTables>(*pl.params, *pl.grid);
  pl.surf = std::make_unique<EllipticSurface>(*pl.params, cfg.cheb_nodes,
                                              cfg.legendre_nodes);
  cplx d0 = compute_d0(*pl.surf, *pl.tables, cfg.zeta0);
  pl.jac = solve_inversion(*pl.surf, d0);
  pl.factor =
      std::make_unique<FactorEvaluator>(*pl.tables, *pl.surf, pl.jac, cfg.zeta0);
  pl.solver = std::make_unique<ContourSolver>(*pl.factor);
  pl.field = std::make_unique<FieldEvaluator>(*pl.solver);
  return pl;
}

void write_params_report(std::ostream& os, const RunConfig& cfg,
                         const ModelParams& p) {
  os << "figure = " << cfg.figure << "\n";
  os << "abs_k = " << fmt(cfg.phys.abs_k) << "\n";
  os << "arg_k = " << fmt(cfg.phys.arg_k) << "\n";
  os << "theta0 = " << fmt(cfg.phys.theta0) << "\n";
  os << "abs_alpha = " << fmt(cfg.phys.abs_alpha) << "\n";
  os << "rho_f_over_m0 = " << fmt(cfg.phys.rho_f_over_m0) << "\n";
  os << "d = " << fmt(cfg.phys.d) << "\n";
  os << "d1 = " << fmt(cfg.phys.d1) << "\n";
  os << "d2 = " << fmt(cfg.phys.d2) << "\n";
  os << "a = " << fmt(cfg.phys.a) << "\n";
  os << "k = " << fmt_cplx(p.k) << "\n";
  os << "alpha = " << fmt_cplx(p.alpha) << "\n";
  os << "mu = " << fmt_cplx(p.mu) << "\n";
  os << "tau = " << fmt_cplx(p.tau) << "\n";
  os << "m = " << fmt_cplx(p.m) << "\n";
  os << "k_res = " << fmt(p.k_res) << "\n";
  os << "s1 = " << fmt_cplx(p.s1) << "\n";
  os << "s2 = " << fmt_cplx(p.s2) << "\n";
}

void write_solve_report(std::ostream& os, const Pipeline& pl) {
  write_params_report(os, pl.cfg, *pl.params);
  os << "nodes = " << pl.cfg.nodes << "\n";
  os << "A = " << fmt_cplx(pl.surf->A()) << "\n";
  os << "B = " << fmt_cplx(pl.surf->B()) << "\n";
  os << "Bhat = " << fmt_cplx(pl.surf->Bhat()) << "\n";
  os << "sigma_a = " << pl.surf->sigma_a() << "\n";
  os << "d0 = " << fmt_cplx(pl.jac.d0) << "\n";
  os << "zeta1 = " << fmt_cplx(pl.jac.zeta1) << "\n";
  os << "sheet = " << pl.jac.sheet << "\n";
  os << "m_a = " << pl.jac.m_a << "\n";
  os << "m_b = " << pl.jac.m_b << "\n";
  os << "w1 = " << fmt_cplx(pl.jac.w1) << "\n";
  os << "lattice_residual = " << fmt(pl.jac.residual) << "\n";
  os << "theta_zero = " << fmt(pl.jac.theta_zero_abs) << "\n";
  os << "h0 = " << fmt_cplx(pl.factor->h0()) << "\n";
  os << "closure = " << fmt_cplx(pl.factor->closure()) << "\n";
  os << "C = " << fmt_cplx(pl.solver->C()) << "\n";
  os << "N = " << fmt_cplx(pl.solver->N()) << "\n";
  os << "displacement_residual = "
     << fmt(std::abs(pl.solver->displacement_residual())) << "\n";
}

void write_sweep_csv(std::ostream& os, const Pipeline& pl,
                     const std::vector<FieldSample>& samples, bool r_sweep) {
  const RunConfig& cfg = pl.cfg;
  os << "# figure = " << cfg.figure << "\n";
  os << "# abs_k = " << fmt(cfg.phys.abs_k) << "\n";
  os << "# arg_k = " << fmt(cfg.phys.arg_k) << "\n";
  os << "# theta0 = " << fmt(cfg.phys.theta0) << "\n";
  os << "# abs_alpha = " << fmt(cfg.phys.abs_alpha) << "\n";
  os << "# rho_f_over_m0 = " << fmt(cfg.phys.rho_f_over_m0) << "\n";
  os << "# d = " << fmt(cfg.phys.d) << ", d1 = " << fmt(cfg.phys.d1)
     << ", d2 = " << fmt(cfg.phys.d2) << ", a = " << fmt(cfg.phys.a) << "\n";
  os << "# tau = " << fmt_cplx(pl.params->tau) << "\n";
  os << "# nodes = " << cfg.nodes << "\n";
  if (r_sweep) {
    os << "# theta_rad = " << fmt(samples.empty() ? 0.0 : samples[0].theta)
       << "\n";
    os << "r_m,P\n";
    for (const auto& s : samples) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.10g,%.10g\n", s.r, s.P);
      os << buf;
    }
  } else {
    os << "# r_m = " << fmt(samples.empty() ? 0.0 : samples[0].r) << "\n";
    os << "theta_rad,P\n";
    for (const auto& s : samples) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.10g,%.10g\n", s.theta, s.P);
      os << buf;
    }
  }
}

bool CheckReport::all_pass() const {
  for (const auto& it : items)
    if (!it.pass) return false;
  return true;
}

CheckReport run_checks(const Pipeline& pl) {
  CheckReport rep;
  auto add = [&](const std::string& name, double value, double tol) {
    rep.items.push_back({name, value, tol, value < tol});
  };
  const ModelParams& p = *pl.params;
  const FactorEvaluator& fac = *pl.factor;
  const ContourSolver& sol = *pl.solver;

  // Deterministic sample points covering the whole axis.
  std::vector<double> ts;
  for (int k = 0; k < 41; ++k) {
    double x = (k + 0.5) / 41.0;
    ts.push_back(2.0 * std::tan(pi * (x - 0.5)));
  }

  double g_res = 0.0, bc_res = 0.0;
  for (double t : ts) {
    BoundaryFactors bf = fac.boundary_at(t);
    EigenData e = eigen_data(t, p);
    Mat2c G = matrix_G(cplx{t, 0.0}, p);
    Mat2c R = G - FactorEvaluator::X_side(bf, e.l, e.fsqrt, p.m, +1) *
                      FactorEvaluator::X_inv_side(bf, -1);
    g_res = std::max(g_res, R.norm_inf());
    bc_res = std::max(bc_res, sol.bc_residual(t).norm_inf());
  }
  add("factorization_identity", g_res, 1e-6);
  add("boundary_condition", bc_res, 1e-6);

  add("lattice_residual", pl.jac.residual, 1e-4);
  add("theta_divisor_zero", pl.jac.theta_zero_abs, 1e-8);
  add("closure", std::abs(fac.closure()), 1e-8);
  add("displacement", std::abs(sol.displacement_residual()), 1e-6);

  double det_res = 0.0, lam_res = 0.0;
  const auto& tab = *pl.tables;
  for (int j = 0; j < pl.grid->size(); ++j) {
    const EigenData& e = tab.eig[j];
    const BoundaryFactors& b = fac.nodes()[j];
    Mat2c G = matrix_G(cplx{pl.grid->node(j).t, 0.0}, p);
    det_res = std::max(det_res, std::abs(G.det() - e.Delta) /
                                    std::max(1.0, std::abs(e.Delta)));
    cplx lhs = b.L0p * b.L1p - b.L2p * b.L2p;
    cplx rhs = std::exp(-2.0 * b.chi1_p);
    lam_res = std::max(lam_res,
                       std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  add("det_vs_eigenvalues", det_res, 1e-10);
  add("lambda_exp_identity", lam_res, 1e-10);

  // f^{1/2} chi2 approaches the constant h0; the tail decays like
  // k tau log|s| / |s|, so test the decay ratio across a decade plus an
  // absolute cap rather than a preset-independent absolute difference.
  {
    cplx sA = cplx{0.0, 1.0} * 1e3, sB = cplx{0.0, 1.0} * 1e4;
    double d3 = std::abs(f_sqrt(sA, p) * fac.chi2(sA) - fac.h0());
    double d4 = std::abs(f_sqrt(sB, p) * fac.chi2(sB) - fac.h0());
    add("fchi2_limit_decay", d4 / d3, 0.5);
    add("fchi2_limit_value", d4, 1e-3);
  }

  // Helmholtz residual of the scattered wave by a five-point stencil.
  {
    double r = 3.0, th = pi / 3, h = 1e-3;
    auto at = [&](double x, double y) {
      return pl.field->phi1(std::hypot(x, y), std::atan2(y, x));
    };
    double x = r * std::cos(th), y = r * std::sin(th);
    cplx c = at(x, y);
    cplx lap = (at(x + h, y) + at(x - h, y) + at(x, y + h) + at(x, y - h) -
                4.0 * c) /
               (h * h);
    add("helmholtz_residual", std::abs(lap + p.k * p.k * c) /
                                  std::abs(p.k * p.k * c),
        1e-3);
  }

  return rep;
}

void write_check_report(std::ostream& os, const CheckReport& rep) {
  for (const auto& it : rep.items) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s %-24s %.3e  (tol %.1e)\n",
                  it.pass ? "PASS" : "FAIL", it.name.c_str(), it.value,
                  it.tol);
    os << buf;
  }
  os << (rep.all_pass() ? "all checks passed" : "some checks FAILED") << "\n";
}

}  // namespace panelwave
