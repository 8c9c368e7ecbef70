#include "sylvbq/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "sylvbq/flat_baseline.hpp"
#include "sylvbq/problems.hpp"

namespace sylvbq {

bool case_is_complex(const std::string& case_name) {
  if (case_name == "example1") return false;
  if (case_name == "example2") return true;
  throw std::invalid_argument("unknown case: " + case_name);
}

namespace {

template <typename S>
RunSummary summarize(const ManufacturedCase<S>& mc, const HarnessConfig& cfg) {
  RunSummary out;
  const ProblemSetup<S> setup =
      make_setup(mc, cfg.J, cfg.t0, cfg.l, cfg.n_steps(), cfg.params(), cfg.source_form);
  try {
    const RunResult<S> res = run(setup, cfg.run_config());
    out.Er = res.errors.Er;
    out.RelEr = res.errors.RelEr;
    out.arg_n_abs = res.errors.arg_n_abs;
    out.runtime_ms = res.runtime_ms;
    out.solver_iters = res.solver_iters_total;
    out.method = to_string(res.method);
    out.contraction = res.contraction;
    out.steps_done = res.steps_done;
  } catch (const BlowupError& e) {
    out.ok = false;
    out.error_tag = "blowup@n=" + std::to_string(e.step);
  } catch (const SolverFailure& e) {
    out.ok = false;
    out.error_tag = std::string("solver_failure: ") + e.what();
  }
  return out;
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.8e", v);
  return buf;
}

}  // namespace

RunSummary run_case(const HarnessConfig& cfg) {
  if (case_is_complex(cfg.case_name)) {
    return summarize(example2(cfg.q), cfg);
  }
  return summarize(example1(cfg.q), cfg);
}

SweepResult sweep(const HarnessConfig& base, const std::vector<std::pair<int, double>>& ladder,
                  double domain_span) {
  if (ladder.empty()) throw std::invalid_argument("sweep: empty ladder");
  SweepResult result;
  for (const auto& [J, l] : ladder) {
    HarnessConfig cfg = base;
    cfg.J = J;
    cfg.l = l;
    SweepRow row;
    row.J = J;
    row.l = l;
    row.alpha = cfg.alpha;
    row.q = cfg.q;
    row.summary = run_case(cfg);
    result.rows.push_back(std::move(row));
  }

  const bool with_order = result.rows.size() >= 2;
  if (with_order) {
    for (std::size_t k = 0; k + 1 < result.rows.size(); ++k) {
      const auto& a = result.rows[k];
      const auto& b = result.rows[k + 1];
      std::optional<double> p;
      if (a.summary.ok && b.summary.ok && a.summary.Er > 0.0 && b.summary.Er > 0.0) {
        const double ha = domain_span / a.J;
        const double hb = domain_span / b.J;
        if (ha != hb) {
          p = std::log(a.summary.Er / b.summary.Er) / std::log(ha / hb);
        }
      }
      result.observed_order.push_back(p);
    }
  }

  std::ostringstream csv;
  csv << "J,l,alpha,q,Er,RelEr,runtime_ms,iters,method,status";
  if (with_order) csv << ",observed_order";
  csv << '\n';
  for (std::size_t k = 0; k < result.rows.size(); ++k) {
    const auto& r = result.rows[k];
    const auto& s = r.summary;
    csv << r.J << ',' << sci(r.l) << ',' << sci(r.alpha) << ',' << sci(r.q) << ',';
    if (s.ok) {
      csv << sci(s.Er) << ',' << (s.RelEr ? sci(*s.RelEr) : std::string("")) << ','
          << sci(s.runtime_ms) << ',' << s.solver_iters << ',' << s.method << ",ok";
    } else {
      csv << ",,,,," << s.error_tag;
    }
    if (with_order) {
      csv << ',';
      if (k + 1 < result.rows.size() && result.observed_order[k]) {
        csv << sci(*result.observed_order[k]);
      }
    }
    csv << '\n';
  }
  result.csv = csv.str();
  return result;
}

namespace {

struct PathTrace {
  std::vector<Eigen::VectorXd> U;  // flattened trajectory, step 0..steps
  double march_ms = 0.0;
};

PathTrace march_lyapunov(const ProblemSetup<double>& setup, const HarnessConfig& cfg,
                         int steps) {
  const CoefficientSet c = compute_coefficients(setup.grid, setup.params);
  const SchemeMatrices mats = build_scheme_matrices(c, setup.grid.order());
  const SylvesterSolver solver(mats.W, mats.A, cfg.tol, cfg.max_iters, cfg.solver);
  StepState<double> st = initialize(setup, cfg.init_mode, mats, c);

  PathTrace trace;
  trace.U.push_back(flatten(st.U_prev));
  trace.U.push_back(flatten(st.U_curr));
  const auto t0 = std::chrono::steady_clock::now();
  while (st.n < steps) {
    RealField G;
    const RealField* G_n = nullptr;
    if (setup.source) {
      G = sample_field<double>(setup.grid, setup.source, setup.grid.time(st.n));
      G_n = &G;
    }
    advance(st, mats, c, solver, G_n, cfg.blowup_guard);
    trace.U.push_back(flatten(st.U_curr));
  }
  trace.march_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return trace;
}

PathTrace march_flat(const ProblemSetup<double>& setup, const HarnessConfig& cfg, int steps,
                     FlatLinearSolver mode) {
  const CoefficientSet c = compute_coefficients(setup.grid, setup.params);
  const SchemeMatrices mats = build_scheme_matrices(c, setup.grid.order());
  const FlatOperator op(c, setup.grid.J, FlatVariant::kronecker, mode);
  StepState<double> st2d = initialize(setup, cfg.init_mode, mats, c);
  FlatState st = flatten_state(st2d);

  PathTrace trace;
  trace.U.push_back(st.U_prev);
  trace.U.push_back(st.U_curr);
  const auto t0 = std::chrono::steady_clock::now();
  while (st.n < steps) {
    Eigen::VectorXd G;
    const Eigen::VectorXd* G_n = nullptr;
    if (setup.source) {
      G = flatten(sample_field<double>(setup.grid, setup.source, setup.grid.time(st.n)));
      G_n = &G;
    }
    step_flat(st, op, G_n, cfg.blowup_guard);
    trace.U.push_back(st.U_curr);
  }
  trace.march_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return trace;
}

double max_divergence(const PathTrace& a, const PathTrace& b) {
  double worst = 0.0;
  const std::size_t n = std::min(a.U.size(), b.U.size());
  for (std::size_t k = 0; k < n; ++k) {
    const double d = (a.U[k] - b.U[k]).norm() / std::max(1.0, b.U[k].norm());
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace

CompareResult compare_baseline(const HarnessConfig& cfg, int J, double l, int steps) {
  if (case_is_complex(cfg.case_name)) {
    throw std::invalid_argument("compare_baseline: flattened paths are real-valued; use a real case");
  }
  if (J > cfg.dense_cap) {
    throw std::invalid_argument("compare_baseline: J exceeds dense_cap (" +
                                std::to_string(cfg.dense_cap) + ")");
  }
  HarnessConfig local = cfg;
  local.J = J;
  local.l = l;
  const ManufacturedCase<double> mc = example1(local.q);
  const ProblemSetup<double> setup =
      make_setup(mc, J, local.t0, l, steps, local.params(), local.source_form);

  CompareResult out;
  out.J = J;
  out.steps = steps;
  const PathTrace lyap = march_lyapunov(setup, local, steps);
  const PathTrace banded = march_flat(setup, local, steps, FlatLinearSolver::banded_lu);
  const PathTrace dense = march_flat(setup, local, steps, FlatLinearSolver::dense_lu_per_step);
  out.lyap_ms = lyap.march_ms;
  out.banded_flat_ms = banded.march_ms;
  out.dense_flat_ms = dense.march_ms;
  out.divergence_banded = max_divergence(lyap, banded);
  out.divergence_dense = max_divergence(lyap, dense);
  out.speedup_dense_over_lyap = (lyap.march_ms > 0.0) ? dense.march_ms / lyap.march_ms : 0.0;
  out.speedup_banded_over_lyap = (lyap.march_ms > 0.0) ? banded.march_ms / lyap.march_ms : 0.0;
  return out;
}

}  // namespace sylvbq
