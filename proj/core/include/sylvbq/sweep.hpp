#ifndef SYLVBQ_SWEEP_HPP
#define SYLVBQ_SWEEP_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sylvbq/config.hpp"
#include "sylvbq/metrics.hpp"

namespace sylvbq {

/// Flattened outcome of a single manufactured-case run, real or complex.
struct RunSummary {
  bool ok = true;
  std::string error_tag;  // "blowup" / "solver_failure" / exception text
  double Er = 0.0;
  std::optional<double> RelEr;
  int arg_n_abs = 0;
  double runtime_ms = 0.0;
  long long solver_iters = 0;
  std::string method;
  double contraction = 0.0;
  int steps_done = 0;
};

bool case_is_complex(const std::string& case_name);

/// Runs the configured case once; never throws for blow-up or solver
/// failure (recorded in the summary instead).
RunSummary run_case(const HarnessConfig& cfg);

struct SweepRow {
  int J = 0;
  double l = 0.0;
  double alpha = 0.0, q = 0.0;
  RunSummary summary;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// observed order between successive ok rows: log(Er_k/Er_{k+1}) / log(h_k/h_{k+1})
  std::vector<std::optional<double>> observed_order;
  std::string csv;  // header + one line per row, deterministic except runtime_ms
};

SweepResult sweep(const HarnessConfig& base, const std::vector<std::pair<int, double>>& ladder,
                  double domain_span);

struct CompareResult {
  int J = 0;
  int steps = 0;
  double lyap_ms = 0.0;
  double banded_flat_ms = 0.0;
  double dense_flat_ms = 0.0;
  double divergence_banded = 0.0;  // max_n ||U_lyap - U_flat|| / max(1, ||U_flat||)
  double divergence_dense = 0.0;
  double speedup_dense_over_lyap = 0.0;
  double speedup_banded_over_lyap = 0.0;
};

/// Times the Lyapunov path against the flattened banded-LU and flattened
/// dense-LU-per-step paths on identical inputs. Serial by construction.
CompareResult compare_baseline(const HarnessConfig& cfg, int J, double l, int steps);

}  // namespace sylvbq

#endif
