#pragma once

#include "panelwave/solver.hpp"

namespace panelwave {

struct FieldSample {
  double r;      // radius
  double theta;  // polar angle in (0, 2 pi)
  double P;      // magnitude of the total potential
  cplx phi;      // scattered potential phi0 or phi1 at the point
};

// Evaluates the scattered and total potentials from the solved spectral
// densities. The t-dependent factors are cached at construction, so a field
// point costs one dot product over the grid.
class FieldEvaluator {
 public:
  explicit FieldEvaluator(const ContourSolver& sol);

  cplx phi0(double r, double theta) const;  // scattered wave, y < 0
  cplx phi1(double r, double theta) const;  // scattered wave, y > 0

  // Total potential: phi_inc + phi_ref + phi0 below the screen, phi1 above.
  cplx psi(double r, double theta) const;
  double P(double r, double theta) const;

  // Uniform midpoint samples of theta in (0, 2 pi); the boundary rays are
  // excluded by construction (midpoints keep a distance >= delta from
  // {0, pi, 2 pi} at the default resolution).
  std::vector<FieldSample> sweep_theta(double r, int samples = 720,
                                       double delta = 1e-3,
                                       int threads = 0) const;
  std::vector<FieldSample> sweep_r(double theta, double r_min = 0.2,
                                   double r_max = 10.0, int samples = 500,
                                   int threads = 0) const;

 private:
  FieldSample sample(double r, double theta) const;

  const ContourSolver* sol_;
  const ModelParams* params_;
  std::vector<double> t_;
  std::vector<cplx> gamma_, wDhat_, wDtil_;  // weight-times-density caches
};

}  // namespace panelwave
