#ifndef SYLVBQ_GRID_HPP
#define SYLVBQ_GRID_HPP

namespace sylvbq {

/// Uniform square grid on [L0,L1]^2 with J subintervals per axis and
/// time step l starting at t0. Immutable after construction.
struct GridSpec {
  double L0 = 0.0;
  double L1 = 1.0;
  int J = 2;
  double h = 0.5;
  double t0 = 0.0;
  double l = 0.01;
  int n_steps = 1;

  int order() const { return J + 1; }
  double node(int j) const { return L0 + j * h; }
  double time(int n) const { return t0 + n * l; }
};

/// Scheme parameters: barycenter weight alpha and the fourth-order
/// coefficient q.
struct SchemeParams {
  double alpha = 0.25;
  double q = 0.01;
};

GridSpec build_grid(double L0, double L1, int J, double t0, double l, int n_steps);

/// Advisory check of the step-scaling rule l <= h^{2+s}. The solver still
/// runs when violated; only the near-identity fixed-point regime may be lost.
struct StepScalingReport {
  double s = 1.0;
  double l = 0.0;
  double h_pow = 0.0;  // h^{2+s}
  double ratio = 0.0;  // l / h^{2+s}
  bool satisfied = false;
};

StepScalingReport step_scaling_report(const GridSpec& grid, double s);

}  // namespace sylvbq

#endif
