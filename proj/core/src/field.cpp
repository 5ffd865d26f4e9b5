#include "panelwave/field.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "panelwave/errors.hpp"

namespace panelwave {

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : static_cast<int>(hw);
  }
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += threads) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

FieldEvaluator::FieldEvaluator(const ContourSolver& sol)
    : sol_(&sol), params_(sol.factor().tables().params) {
  const ContourTables& tab = sol.factor().tables();
  const CircleGrid& grid = *tab.grid;
  const int M = grid.size();
  t_.resize(M);
  gamma_.resize(M);
  wDhat_.resize(M);
  wDtil_.resize(M);
  for (int j = 0; j < M; ++j) {
    t_[j] = grid.node(j).t;
    gamma_[j] = tab.eig[j].gamma;
    wDhat_[j] = grid.node(j).w * sol.Dhat_nodes()[j];
    wDtil_[j] = grid.node(j).w * sol.Dtil_nodes()[j];
  }
}

cplx FieldEvaluator::phi0(double r, double theta) const {
  double st = std::sin(theta), ct = std::cos(theta);
  cplx acc = 0.0;
  for (size_t j = 0; j < t_.size(); ++j)
    acc += wDhat_[j] * std::exp((gamma_[j] * st - iu * t_[j] * ct) * r);
  return acc / (2.0 * pi);
}

cplx FieldEvaluator::phi1(double r, double theta) const {
  double st = std::sin(theta), ct = std::cos(theta);
  cplx acc = 0.0;
  for (size_t j = 0; j < t_.size(); ++j)
    acc += wDtil_[j] * std::exp((-gamma_[j] * st - iu * t_[j] * ct) * r);
  return acc / (2.0 * pi);
}

FieldSample FieldEvaluator::sample(double r, double theta) const {
  const ModelParams& p = *params_;
  if (theta > 0.0 && theta < pi) {
    cplx phi = phi1(r, theta);
    return {r, theta, std::abs(phi), phi};
  }
  cplx phi = phi0(r, theta);
  double x = r * std::cos(theta), y = r * std::sin(theta);
  cplx inc = std::exp(iu * p.k * (x * std::sin(p.theta0) + y * std::cos(p.theta0)));
  cplx ref = std::exp(iu * p.k * (x * std::sin(p.theta0) - y * std::cos(p.theta0)));
  return {r, theta, std::abs(inc + ref + phi), phi};
}

cplx FieldEvaluator::psi(double r, double theta) const {
  FieldSample fs = sample(r, theta);
  if (theta > 0.0 && theta < pi) return fs.phi;
  const ModelParams& p = *params_;
  double x = r * std::cos(theta), y = r * std::sin(theta);
  return fs.phi +
         std::exp(iu * p.k * (x * std::sin(p.theta0) + y * std::cos(p.theta0))) +
         std::exp(iu * p.k * (x * std::sin(p.theta0) - y * std::cos(p.theta0)));
}

double FieldEvaluator::P(double r, double theta) const {
  return sample(r, theta).P;
}

std::vector<FieldSample> FieldEvaluator::sweep_theta(double r, int samples,
                                                     double delta,
                                                     int threads) const {
  std::vector<double> angles;
  angles.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    double th = 2.0 * pi * (i + 0.5) / samples;
    if (std::abs(th) < delta || std::abs(th - pi) < delta ||
        std::abs(th - 2.0 * pi) < delta)
      continue;
    angles.push_back(th);
  }
  std::vector<FieldSample> out(angles.size());
  parallel_for(static_cast<int>(angles.size()), threads,
               [&](int i) { out[i] = sample(r, angles[i]); });
  return out;
}

std::vector<FieldSample> FieldEvaluator::sweep_r(double theta, double r_min,
                                                 double r_max, int samples,
                                                 int threads) const {
  if (samples < 2 || r_min <= 0.0 || r_max <= r_min)
    throw ConfigError("radial sweep needs 0 < r_min < r_max and >= 2 samples");
  std::vector<FieldSample> out(samples);
  parallel_for(samples, threads, [&](int i) {
    double r = r_min + (r_max - r_min) * i / (samples - 1);
    out[i] = sample(r, theta);
  });
  return out;
}

}  // namespace panelwave
