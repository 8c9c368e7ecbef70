#ifndef SYLVBQ_METRICS_HPP
#define SYLVBQ_METRICS_HPP

#include <optional>
#include <vector>

#include "sylvbq/sylvester.hpp"
#include "sylvbq/types.hpp"

namespace sylvbq {

struct StepError {
  int n = 0;
  double err = 0.0;                // ||U^n - u^n||_F
  std::optional<double> rel;       // err / ||u^n||_F, absent when ||u^n|| = 0
};

/// Er and RelEr are maxima over the recorded steps, taken independently.
struct ErrorReport {
  double Er = 0.0;
  std::optional<double> RelEr;
  int arg_n_abs = 0;   // step attaining Er
  int arg_n_rel = 0;   // step attaining RelEr
  std::vector<StepError> per_step;
  double runtime_ms = 0.0;
  long long solver_iters_total = 0;
  SylvesterMethod method = SylvesterMethod::fixed_point;
};

class ErrorAccumulator {
 public:
  template <typename S>
  void record(int n, const Field<S>& numeric, const Field<S>& exact) {
    StepError e;
    e.n = n;
    e.err = (numeric - exact).norm();
    const double den = exact.norm();
    if (den > 0.0) e.rel = e.err / den;
    push(e);
  }

  ErrorReport finish() { return report_; }

 private:
  void push(const StepError& e) {
    if (report_.per_step.empty() || e.err > report_.Er) {
      report_.Er = std::max(report_.Er, e.err);
      if (e.err >= report_.Er) report_.arg_n_abs = e.n;
    }
    if (e.rel && (!report_.RelEr || *e.rel > *report_.RelEr)) {
      report_.RelEr = e.rel;
      report_.arg_n_rel = e.n;
    }
    report_.per_step.push_back(e);
  }

  ErrorReport report_;
};

/// Error metrics over a stored trajectory against an exact sampler.
template <typename S, typename ExactSampler>
ErrorReport error_metrics(const std::vector<std::pair<int, Field<S>>>& trajectory,
                          ExactSampler&& exact_at) {
  ErrorAccumulator acc;
  for (const auto& [n, U] : trajectory) {
    acc.record<S>(n, U, exact_at(n));
  }
  return acc.finish();
}

}  // namespace sylvbq

#endif
