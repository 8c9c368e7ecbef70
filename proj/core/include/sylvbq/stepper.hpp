#ifndef SYLVBQ_STEPPER_HPP
#define SYLVBQ_STEPPER_HPP

#include <chrono>
#include <functional>
#include <utility>

#include "sylvbq/coefficients.hpp"
#include "sylvbq/grid.hpp"
#include "sylvbq/metrics.hpp"
#include "sylvbq/scheme_matrices.hpp"
#include "sylvbq/sylvester.hpp"
#include "sylvbq/types.hpp"

namespace sylvbq {

/// Sliding window of the two-step recursion. F is the entrywise square of U,
/// recomputed whenever the window slides.
template <typename S>
struct StepState {
  int n = 1;  // index of U_curr
  Field<S> U_prev, U_curr;
  Field<S> V_prev, V_curr;
  Field<S> F_prev, F_curr;

  int order() const { return static_cast<int>(U_curr.rows()); }
};

template <typename S>
using SpaceTimeFn = std::function<S(double, double, double)>;

template <typename S>
struct ProblemSetup {
  GridSpec grid;
  SchemeParams params;
  Field<S> u0;   // initial displacement samples
  Field<S> phi;  // initial velocity samples
  Field<S> v0;   // initial reduced-variable samples (reference; the discrete
                 // initialization recomputes v from u)
  SpaceTimeFn<S> source;  // may be empty (homogeneous)
  SpaceTimeFn<S> exact;   // may be empty
};

enum class InitMode { exact, taylor };

template <typename S, typename Fn>
Field<S> sample_field(const GridSpec& grid, Fn&& f, double t) {
  const int n = grid.order();
  Field<S> F(n, n);
  for (int j = 0; j < n; ++j) {
    const double x = grid.node(j);
    for (int m = 0; m < n; ++m) {
      F(j, m) = f(x, grid.node(m), t);
    }
  }
  return F;
}

/// v = q u_xx + u^2 evaluated discretely from a sampled field.
template <typename S>
Field<S> discrete_v(const Field<S>& U, const BandedMatrix& R, const CoefficientSet& c) {
  return (c.delta * R.left_apply(U) + U.cwiseProduct(U)).eval();
}

template <typename S>
StepState<S> initialize(const ProblemSetup<S>& setup, InitMode mode,
                        const SchemeMatrices& mats, const CoefficientSet& c) {
  const GridSpec& g = setup.grid;
  StepState<S> st;
  st.n = 1;
  if (mode == InitMode::exact) {
    if (!setup.exact) {
      throw std::invalid_argument("initialize: exact mode requires an exact solution callable");
    }
    st.U_prev = sample_field<S>(g, setup.exact, g.t0);
    st.U_curr = sample_field<S>(g, setup.exact, g.t0 + g.l);
  } else {
    st.U_prev = setup.u0;
    const Field<S> V0 = discrete_v(st.U_prev, mats.R, c);
    Field<S> accel = d2x(mats.R, st.U_prev, g.h) + d2y(mats.R, st.U_prev, g.h) +
                     d2x(mats.R, V0, g.h);
    if (setup.source) {
      accel += sample_field<S>(g, setup.source, g.t0);
    }
    st.U_curr = st.U_prev + g.l * setup.phi + (0.5 * g.l * g.l) * accel;
  }
  st.V_prev = discrete_v(st.U_prev, mats.R, c);
  st.V_curr = discrete_v(st.U_curr, mats.R, c);
  st.F_prev = st.U_prev.cwiseProduct(st.U_prev);
  st.F_curr = st.U_curr.cwiseProduct(st.U_curr);
  return st;
}

/// Right-hand side of the reduced per-step equation
///   W U^{n+1} + U^{n+1} A^T = C.
template <typename S>
Field<S> assemble_rhs(const StepState<S>& st, const SchemeMatrices& mats,
                      const CoefficientSet& c, const Field<S>* G_n) {
  Field<S> C = apply_pair(mats.Btilde, mats.B, st.U_curr);
  C += c.b2 * mats.R.left_apply(st.V_curr);
  C -= apply_pair(mats.W, mats.A, st.U_prev);
  C -= c.a2 * mats.R.left_apply((st.F_prev + st.F_curr).eval());
  if (G_n) {
    if (G_n->rows() != C.rows() || G_n->cols() != C.cols()) {
      throw std::invalid_argument("assemble_rhs: source field dimension mismatch");
    }
    C += (c.l * c.l) * (*G_n);
  }
  return C;
}

struct StepStats {
  long long solver_iters = 0;
  SylvesterMethod method = SylvesterMethod::fixed_point;
  double last_residual = 0.0;
};

/// One step of the recursion; the window slides in place and n increments.
template <typename S>
void advance(StepState<S>& st, const SchemeMatrices& mats, const CoefficientSet& c,
             const SylvesterSolver& solver, const Field<S>* G_n,
             double blowup_guard = 1e12, StepStats* stats = nullptr) {
  const Field<S> C = assemble_rhs(st, mats, c, G_n);
  SolveReport<S> rep = solver.solve(C);
  const double norm = rep.X.norm();
  if (!(norm <= blowup_guard)) {
    throw BlowupError(st.n + 1, norm);
  }
  Field<S> V_next = 2.0 * c.c2 * mats.R.left_apply(rep.X);
  V_next += 2.0 * mats.R.left_apply((c.c1 * st.U_curr + c.c2 * st.U_prev).eval());
  V_next -= st.V_prev;
  V_next += st.F_prev + st.F_curr;  // 2 * Fhat^n

  st.U_prev = std::move(st.U_curr);
  st.U_curr = std::move(rep.X);
  st.V_prev = std::move(st.V_curr);
  st.V_curr = std::move(V_next);
  st.F_prev = std::move(st.F_curr);
  st.F_curr = st.U_curr.cwiseProduct(st.U_curr);
  st.n += 1;
  if (stats) {
    stats->solver_iters += rep.iterations;
    stats->method = rep.method;
    stats->last_residual = rep.residual;
  }
}

struct RunConfig {
  InitMode init = InitMode::exact;
  SolverBackend backend = SolverBackend::auto_select;
  double tol = 1e-12;
  int max_iters = 200;
  double blowup_guard = 1e12;
  bool record_per_step = true;
};

template <typename S>
struct RunResult {
  ErrorReport errors;  // populated when an exact solution is available
  bool has_exact = false;
  Field<S> U_final, V_final;
  int steps_done = 0;
  long long solver_iters_total = 0;
  SylvesterMethod method = SylvesterMethod::fixed_point;
  double runtime_ms = 0.0;
  double contraction = 0.0;
};

/// Marches n = 1 .. N_steps. Solver failures and blow-ups propagate with the
/// failing step index attached.
template <typename S>
RunResult<S> run(const ProblemSetup<S>& setup, const RunConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  const GridSpec& g = setup.grid;
  const CoefficientSet c = compute_coefficients(g, setup.params);
  const SchemeMatrices mats = build_scheme_matrices(c, g.order());
  const SylvesterSolver solver(mats.W, mats.A, config.tol, config.max_iters, config.backend);

  RunResult<S> result;
  result.has_exact = static_cast<bool>(setup.exact);
  result.contraction = solver.contraction();

  StepState<S> st = initialize(setup, config.init, mats, c);
  ErrorAccumulator acc;
  const auto record = [&](int n, const Field<S>& U) {
    if (result.has_exact && config.record_per_step) {
      acc.record<S>(n, U, sample_field<S>(g, setup.exact, g.time(n)));
    }
  };
  record(0, st.U_prev);
  if (g.n_steps >= 1) record(1, st.U_curr);

  StepStats stats;
  while (st.n < g.n_steps) {
    Field<S> G;
    const Field<S>* G_n = nullptr;
    if (setup.source) {
      G = sample_field<S>(g, setup.source, g.time(st.n));
      G_n = &G;
    }
    advance(st, mats, c, solver, G_n, config.blowup_guard, &stats);
    record(st.n, st.U_curr);
  }

  result.errors = acc.finish();
  result.U_final = st.U_curr;
  result.V_final = st.V_curr;
  result.steps_done = st.n;
  result.solver_iters_total = stats.solver_iters;
  result.method = stats.method;
  result.errors.solver_iters_total = stats.solver_iters;
  result.errors.method = stats.method;
  result.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
          .count();
  result.errors.runtime_ms = result.runtime_ms;
  return result;
}

}  // namespace sylvbq

#endif
