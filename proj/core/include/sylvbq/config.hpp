#ifndef SYLVBQ_CONFIG_HPP
#define SYLVBQ_CONFIG_HPP

#include <iosfwd>
#include <string>

#include "sylvbq/problems.hpp"
#include "sylvbq/stepper.hpp"

namespace sylvbq {

/// Harness configuration. Mirrors the flat `key = value` config-file keys;
/// explicit CLI flags override file values.
struct HarnessConfig {
  std::string case_name = "example1";
  int J = 10;
  double l = 0.01;
  double alpha = 0.25;
  double q = 0.01;
  double t0 = 0.0;
  double T = 1.0;
  InitMode init_mode = InitMode::exact;
  SolverBackend solver = SolverBackend::auto_select;
  double tol = 1e-12;
  int max_iters = 200;
  int dense_cap = 48;     // largest J admitted to the dense flattened path
  double epsilon = 1.0;   // stability probe bound
  double eta = 1e-3;      // stability probe initial pair norm
  SourceForm source_form = SourceForm::consistent;
  double blowup_guard = 1e12;

  int n_steps() const;
  SchemeParams params() const { return {alpha, q}; }
  RunConfig run_config() const;
};

/// Parses `key = value` lines; '#' starts a comment, blank lines ignored.
/// Unknown keys are rejected.
HarnessConfig parse_config(std::istream& in, HarnessConfig base = {});
HarnessConfig load_config_file(const std::string& path, HarnessConfig base = {});
void apply_config_key(HarnessConfig& cfg, const std::string& key, const std::string& value);

}  // namespace sylvbq

#endif
