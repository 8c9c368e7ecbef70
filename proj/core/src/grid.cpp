#include "sylvbq/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace sylvbq {

GridSpec build_grid(double L0, double L1, int J, double t0, double l, int n_steps) {
  if (!(L1 > L0)) {
    throw std::invalid_argument("build_grid: L1 must exceed L0");
  }
  if (J < 2) {
    throw std::invalid_argument("build_grid: J < 2 leaves no interior node");
  }
  if (!(l > 0.0)) {
    throw std::invalid_argument("build_grid: time step must be positive");
  }
  if (n_steps < 0) {
    throw std::invalid_argument("build_grid: negative step count");
  }
  GridSpec g;
  g.L0 = L0;
  g.L1 = L1;
  g.J = J;
  g.h = (L1 - L0) / J;
  g.t0 = t0;
  g.l = l;
  g.n_steps = n_steps;
  return g;
}

StepScalingReport step_scaling_report(const GridSpec& grid, double s) {
  if (!(s > 0.0)) {
    throw std::invalid_argument("step_scaling_report: s must be positive");
  }
  StepScalingReport r;
  r.s = s;
  r.l = grid.l;
  r.h_pow = std::pow(grid.h, 2.0 + s);
  r.ratio = grid.l / r.h_pow;
  r.satisfied = grid.l <= r.h_pow;
  return r;
}

}  // namespace sylvbq
