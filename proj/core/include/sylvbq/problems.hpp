#ifndef SYLVBQ_PROBLEMS_HPP
#define SYLVBQ_PROBLEMS_HPP

#include <cmath>
#include <string>

#include "sylvbq/stepper.hpp"

namespace sylvbq {

/// Which source term drives a manufactured run. `printed` is the case's
/// published display; `consistent` is the closed form derived from the exact
/// solution so that u_tt = lap(u) + v_xx + g holds identically. The two
/// differ for both shipped cases; residual_check quantifies by how much.
enum class SourceForm { consistent, printed };

SourceForm source_form_from_string(const std::string& name);
std::string to_string(SourceForm f);

template <typename S>
struct ManufacturedCase {
  std::string name;
  double L0 = 0.0, L1 = 1.0;
  double q = 0.01;  // fourth-order coefficient baked into g_consistent and v_exact
  SpaceTimeFn<S> exact_u;
  std::function<S(double, double)> phi;  // du/dt at t = 0
  SpaceTimeFn<S> g_printed;
  SpaceTimeFn<S> g_consistent;
  SpaceTimeFn<S> v_exact;  // q u_xx + u^2 from the analytic u

  const SpaceTimeFn<S>& source(SourceForm f) const {
    return f == SourceForm::printed ? g_printed : g_consistent;
  }
};

/// Polynomial-exponential case on [-1,1]^2, real valued:
/// u = ((x^2-1)^4 + (y^2-1)^2) e^{-t}.
ManufacturedCase<double> example1(double q = 0.01);

/// Two-particle interaction case on [-2pi,2pi]^2, complex valued:
/// u = 2 cos^2(x/2) cos^2(y/2) e^{-it}.
ManufacturedCase<std::complex<double>> example2(double q = 0.01);

template <typename S>
ProblemSetup<S> make_setup(const ManufacturedCase<S>& mc, int J, double t0, double l,
                           int n_steps, const SchemeParams& params, SourceForm form) {
  ProblemSetup<S> setup;
  setup.grid = build_grid(mc.L0, mc.L1, J, t0, l, n_steps);
  setup.params = params;
  setup.u0 = sample_field<S>(setup.grid, mc.exact_u, t0);
  setup.phi = sample_field<S>(
      setup.grid, [&](double x, double y, double) { return mc.phi(x, y); }, t0);
  setup.v0 = sample_field<S>(setup.grid, mc.v_exact, t0);
  setup.source = mc.source(form);
  setup.exact = mc.exact_u;
  return setup;
}

/// Max-norm over interior nodes of the semi-discrete residual
///   u_tt - lap_h(u) - D2x(q D2x u + u .* u) - g
/// sampled on a grid of spacing ~h with centered time differences of width l,
/// at time t. Decays as O(h^2 + l^2) iff (u, g) is a consistent pair;
/// plateaus at the defect size otherwise. Interior only: the reflected-ghost
/// rows belong to the scheme's boundary closure, not to this diagnostic.
template <typename S>
double residual_check(const ManufacturedCase<S>& mc, double h, double l, double t,
                      SourceForm form = SourceForm::printed) {
  if (!(h > 0.0) || !(l > 0.0)) {
    throw std::invalid_argument("residual_check: h and l must be positive");
  }
  const double span = mc.L1 - mc.L0;
  const int J = std::max(4, static_cast<int>(std::lround(span / h)));
  const GridSpec g = build_grid(mc.L0, mc.L1, J, 0.0, l, 1);
  const BandedMatrix R = build_banded(-2.0, 1.0, g.order());

  const Field<S> Um = sample_field<S>(g, mc.exact_u, t - l);
  const Field<S> U0 = sample_field<S>(g, mc.exact_u, t);
  const Field<S> Up = sample_field<S>(g, mc.exact_u, t + l);
  const Field<S> u_tt = (Up - 2.0 * U0 + Um) / (l * l);
  const Field<S> lap = d2x(R, U0, g.h) + d2y(R, U0, g.h);
  const Field<S> v_disc = mc.q * d2x(R, U0, g.h) + U0.cwiseProduct(U0);
  const Field<S> G = sample_field<S>(g, mc.source(form), t);
  const Field<S> resid = u_tt - lap - d2x(R, v_disc, g.h) - G;

  double worst = 0.0;
  for (int j = 1; j < g.J; ++j) {
    for (int m = 1; m < g.J; ++m) {
      worst = std::max(worst, std::abs(resid(j, m)));
    }
  }
  return worst;
}

}  // namespace sylvbq

#endif
