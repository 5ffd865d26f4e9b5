#include "panelwave/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace panelwave {

CircleGrid::CircleGrid(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("CircleGrid: n must be positive");
  const int count = 2 * n + 1;
  nodes_.reserve(count);
  const double dtheta = 2.0 * pi / count;
  for (int j = -n; j <= n; ++j) {
    CircleNode nd;
    nd.theta = dtheta * j;
    nd.u = std::polar(1.0, nd.theta);
    cplx t = -2.0 * iu * (nd.u + iu) / (nd.u - iu);
    nd.t = t.real();  // exactly real on |u| = 1; drop rounding residue
    nd.w = -4.0 * iu * nd.u / ((nd.u - iu) * (nd.u - iu)) * dtheta;
    nodes_.push_back(nd);
  }
  std::sort(nodes_.begin(), nodes_.end(),
            [](const CircleNode& a, const CircleNode& b) { return a.t < b.t; });
}

cplx CircleGrid::integrate(std::span<const cplx> values) const {
  cplx acc = 0.0;
  for (size_t i = 0; i < nodes_.size(); ++i) acc += nodes_[i].w * values[i];
  return acc;
}

cplx CircleGrid::kernel(double x) const {
  // 1 + 2i sum_{nu=1}^n sin(nu x)
  //   = 1 + 2i sin(n x / 2) sin((n+1) x / 2) / sin(x / 2).
  x = wrap_angle(x);
  if (std::abs(x) < 1e-8) {
    // sum sin(nu x) ~ x n(n+1)/2 for small x
    return cplx{1.0, x * n_ * (n_ + 1.0)};
  }
  double s = std::sin(0.5 * n_ * x) * std::sin(0.5 * (n_ + 1) * x) /
             std::sin(0.5 * x);
  return cplx{1.0, 2.0 * s};
}

cplx CircleGrid::cauchy_pv(std::span<const cplx> values, double s) const {
  cplx sigma = iu * (cplx(s) - 2.0 * iu) / (cplx(s) + 2.0 * iu);
  double theta = std::arg(sigma);
  cplx acc = 0.0;
  for (size_t j = 0; j < nodes_.size(); ++j) {
    acc += values[j] / (nodes_[j].u - iu) * kernel(theta - nodes_[j].theta);
  }
  return (sigma - iu) / (2.0 * double(2 * n_ + 1)) * acc;
}

void CircleGrid::cauchy_pv_nodes(
    std::span<const std::span<const cplx>> densities,
    std::span<const std::span<cplx>> outputs) const {
  const size_t nn = nodes_.size();
  const size_t k = densities.size();
  std::vector<cplx> row(nn);
  for (size_t m = 0; m < nn; ++m) {
    const double theta = nodes_[m].theta;
    for (size_t j = 0; j < nn; ++j) {
      row[j] = kernel(theta - nodes_[j].theta) / (nodes_[j].u - iu);
    }
    const cplx pref = (nodes_[m].u - iu) / (2.0 * double(2 * n_ + 1));
    for (size_t d = 0; d < k; ++d) {
      cplx acc = 0.0;
      const auto& dens = densities[d];
      for (size_t j = 0; j < nn; ++j) acc += dens[j] * row[j];
      outputs[d][m] = pref * acc;
    }
  }
}

std::vector<double> chebyshev_nodes(int N) {
  std::vector<double> x(N);
  for (int i = 1; i <= N; ++i) x[i - 1] = std::cos((2 * i - 1) * pi / (2 * N));
  return x;
}

cplx chebyshev_cauchy(std::span<const double> nodes, std::span<const cplx> H,
                      cplx x0, cplx H_at_x0) {
  const int N = static_cast<int>(nodes.size());
  cplx acc = 0.0;
  for (int i = 0; i < N; ++i) acc += (H[i] - H_at_x0) / (nodes[i] - x0);
  return (pi / N) * acc - pi * H_at_x0 / sqrt_off_segment(x0);
}

GaussLegendre::GaussLegendre(int n) : x(n), w(n) {
  // Newton iteration on the Legendre recurrence; nodes symmetric about 0.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double xi = std::cos(pi * (i + 0.75) / (n + 0.5));
    double p1 = 0.0, dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * xi * p2 - j * p3) / (j + 1.0);
      }
      dp = n * (xi * p1 - p2) / (xi * xi - 1.0);
      double dx = p1 / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    x[i] = -xi;
    x[n - 1 - i] = xi;
    double wi = 2.0 / ((1.0 - xi * xi) * dp * dp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
}

}  // namespace panelwave
