#pragma once

#include <span>
#include <vector>

#include "panelwave/types.hpp"

namespace panelwave {

// Quadrature grid for integrals over the real line, built from equispaced
// points on the unit circle through the rational map
//
//   t = -2i (u + i) / (u - i),   u = e^{i theta},
//
// which sends the circle (minus u = i) onto the real axis. With
// theta_j = 2 pi j / (2n+1), j = -n..n, neither u = i nor t = 0 is ever a
// node. Since dt = -4i u / (u - i)^2 dtheta,
//
//   \int_R S(t) dt  ~=  -4i * (2 pi / (2n+1)) * sum_j S(t_j) u_j / (u_j - i)^2.
//
// The same grid supports a principal-value Cauchy transform
//
//   (PV S)(s) = (1/2 pi i) PV \int S(t) / (t - s) dt,   s real,
//
// evaluated as the exact transform of the trigonometric interpolant of
// S(t(theta)); the node-collision limit of the kernel is finite and smooth.
struct CircleNode {
  double theta;  // angle in (-pi, pi]
  double t;      // image on the real axis
  cplx u;        // e^{i theta}
  cplx w;        // weight so that \int S dt ~= sum_j w_j S(t_j)
};

class CircleGrid {
 public:
  explicit CircleGrid(int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<CircleNode>& nodes() const { return nodes_; }
  const CircleNode& node(int i) const { return nodes_[i]; }

  // sum_j w_j S_j for node values S (ordered like nodes(), ascending in t).
  cplx integrate(std::span<const cplx> values) const;

  template <class F>
  cplx integrate_fn(F&& f) const {
    cplx acc = 0.0;
    for (const auto& nd : nodes_) acc += nd.w * f(nd.t);
    return acc;
  }

  // (1/2 pi i) PV \int S(t)/(t - s) dt for real s, from node values of S.
  cplx cauchy_pv(std::span<const cplx> values, double s) const;

  // Same transform evaluated at every node at once, for several densities
  // sharing the (node x node) kernel. outputs[k][m] = (PV densities[k])(t_m).
  void cauchy_pv_nodes(std::span<const std::span<const cplx>> densities,
                       std::span<const std::span<cplx>> outputs) const;

 private:
  // Dirichlet-type kernel factor: 1 + 2i sum_{nu=1}^n sin(nu x).
  cplx kernel(double x) const;

  int n_;
  std::vector<CircleNode> nodes_;
};

// Nodes x_i = cos((2i-1) pi / (2N)) of the N-point Gauss-Chebyshev rule
//   \int_{-1}^{1} g(x) / sqrt(1 - x^2) dx ~= (pi/N) sum_i g(x_i).
std::vector<double> chebyshev_nodes(int N);

// sqrt(x0^2 - 1) analytic off the segment [-1,1] and ~ x0 at infinity.
inline cplx sqrt_off_segment(cplx x0) {
  return x0 * std::sqrt(1.0 - 1.0 / (x0 * x0));
}

// \int_{-1}^{1} H(x) / ((x - x0) sqrt(1 - x^2)) dx by Gauss-Chebyshev with
// pole subtraction; H_at_x0 is the analytic continuation of H at x0, and
// the closed form \int dx/((x - x0) sqrt(1-x^2)) = -pi / sqrt(x0^2 - 1)
// carries the pole. Accuracy is uniform in the distance of x0 to [-1,1].
cplx chebyshev_cauchy(std::span<const double> nodes, std::span<const cplx> H,
                      cplx x0, cplx H_at_x0);

// Classical Gauss-Legendre rule on [-1,1].
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n);
};

}  // namespace panelwave
