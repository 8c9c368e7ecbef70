// Command-line driver: error runs, convergence sweeps, solver-path timing
// comparisons, stability probes, discriminant diagnostics and
// manufactured-pair residual checks.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sylvbq/config.hpp"
#include "sylvbq/diagnostics.hpp"
#include "sylvbq/field_io.hpp"
#include "sylvbq/problems.hpp"
#include "sylvbq/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 2;
constexpr int kExitSolverFailure = 3;
constexpr int kExitBlowup = 4;
constexpr int kExitGateFailure = 5;

struct CommonFlags {
  std::optional<std::string> config_path;
  std::optional<std::string> case_name;
  std::optional<int> J;
  std::optional<double> l;
  std::optional<double> alpha, q, t0, T, tol, epsilon, eta, blowup_guard;
  std::optional<int> max_iters, dense_cap;
  std::optional<std::string> init_mode, solver, source_form;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "flat key = value config file");
  cmd->add_option("--case", f.case_name, "example1 | example2");
  cmd->add_option("--J", f.J, "subintervals per axis");
  cmd->add_option("--l", f.l, "time step");
  cmd->add_option("--alpha", f.alpha, "barycenter weight");
  cmd->add_option("--q", f.q, "fourth-order coefficient");
  cmd->add_option("--t0", f.t0, "initial time");
  cmd->add_option("--T", f.T, "final time");
  cmd->add_option("--init-mode", f.init_mode, "exact | taylor");
  cmd->add_option("--solver", f.solver, "auto | fixed_point | schur | kron_direct");
  cmd->add_option("--tol", f.tol, "solver relative residual tolerance");
  cmd->add_option("--max-iters", f.max_iters, "fixed-point iteration cap");
  cmd->add_option("--dense-cap", f.dense_cap, "largest J admitted to the dense flat path");
  cmd->add_option("--epsilon", f.epsilon, "stability probe bound");
  cmd->add_option("--eta", f.eta, "stability probe initial pair norm");
  cmd->add_option("--source-form", f.source_form, "consistent | printed");
  cmd->add_option("--blowup-guard", f.blowup_guard, "norm guard for divergence detection");
}

sylvbq::HarnessConfig resolve(const CommonFlags& f) {
  sylvbq::HarnessConfig cfg;
  if (f.config_path) cfg = sylvbq::load_config_file(*f.config_path, cfg);
  using sylvbq::apply_config_key;
  if (f.case_name) apply_config_key(cfg, "case", *f.case_name);
  if (f.J) apply_config_key(cfg, "J", std::to_string(*f.J));
  if (f.l) cfg.l = *f.l;
  if (f.alpha) cfg.alpha = *f.alpha;
  if (f.q) cfg.q = *f.q;
  if (f.t0) cfg.t0 = *f.t0;
  if (f.T) cfg.T = *f.T;
  if (f.init_mode) apply_config_key(cfg, "init_mode", *f.init_mode);
  if (f.solver) apply_config_key(cfg, "solver", *f.solver);
  if (f.tol) cfg.tol = *f.tol;
  if (f.max_iters) cfg.max_iters = *f.max_iters;
  if (f.dense_cap) cfg.dense_cap = *f.dense_cap;
  if (f.epsilon) cfg.epsilon = *f.epsilon;
  if (f.eta) cfg.eta = *f.eta;
  if (f.source_form) apply_config_key(cfg, "source_form", *f.source_form);
  if (f.blowup_guard) cfg.blowup_guard = *f.blowup_guard;
  return cfg;
}

std::vector<std::pair<int, double>> parse_ladder(const std::vector<std::string>& pairs) {
  std::vector<std::pair<int, double>> ladder;
  for (const auto& p : pairs) {
    const auto colon = p.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("--pair wants J:l, got " + p);
    }
    ladder.emplace_back(std::stoi(p.substr(0, colon)), std::stod(p.substr(colon + 1)));
  }
  return ladder;
}

int exit_code_for(const sylvbq::RunSummary& s) {
  if (s.ok) return kExitOk;
  if (s.error_tag.rfind("blowup", 0) == 0) return kExitBlowup;
  return kExitSolverFailure;
}

template <typename S>
void dump_final_field(const sylvbq::HarnessConfig& cfg, const std::string& path) {
  const auto mc = [&] {
    if constexpr (sylvbq::scalar_traits<S>::is_complex) {
      return sylvbq::example2(cfg.q);
    } else {
      return sylvbq::example1(cfg.q);
    }
  }();
  const auto setup = sylvbq::make_setup(mc, cfg.J, cfg.t0, cfg.l, cfg.n_steps(), cfg.params(),
                                        cfg.source_form);
  const auto res = sylvbq::run(setup, cfg.run_config());
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open dump path " + path);
  sylvbq::dump_field(out, res.U_final, cfg.t0 + res.steps_done * cfg.l);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lyapunov-Sylvester solver harness for the 2D Boussinesq scheme"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* cmd_run = app.add_subcommand("run", "single case run with error metrics");
  CommonFlags run_flags;
  add_common(cmd_run, run_flags);
  std::string dump_path;
  cmd_run->add_option("--dump", dump_path, "write the final field snapshot to this path");

  auto* cmd_sweep = app.add_subcommand("sweep", "ladder of (J,l) runs, CSV output");
  CommonFlags sweep_flags;
  add_common(cmd_sweep, sweep_flags);
  std::vector<std::string> pair_args;
  cmd_sweep->add_option("--pair", pair_args, "ladder entry J:l (repeatable)")->required();
  std::string csv_out;
  cmd_sweep->add_option("--out", csv_out, "CSV output path (default stdout)");
  bool sweep_check = false;
  cmd_sweep->add_flag("--check", sweep_check, "exit 5 unless Er decreases along the ladder");

  auto* cmd_compare = app.add_subcommand("compare", "time Lyapunov vs flattened paths");
  CommonFlags cmp_flags;
  add_common(cmd_compare, cmp_flags);
  int cmp_steps = 100;
  cmd_compare->add_option("--steps", cmp_steps, "steps to march");
  double min_speedup = 10.0;
  cmd_compare->add_option("--min-speedup", min_speedup, "gate for --check");
  bool cmp_check = false;
  cmd_compare->add_flag("--check", cmp_check,
                        "exit 5 unless dense-flat/Lyapunov speedup >= --min-speedup");

  auto* cmd_probe = app.add_subcommand("probe", "homogeneous small-data stability probe");
  CommonFlags probe_flags;
  add_common(cmd_probe, probe_flags);
  int probe_steps = 200;
  cmd_probe->add_option("--steps", probe_steps, "steps to march");
  bool probe_check = false;
  cmd_probe->add_flag("--check", probe_check, "exit 5 unless the trajectory stays <= epsilon");

  auto* cmd_diag = app.add_subcommand("diagnose", "first-step discriminant diagnostics");
  CommonFlags diag_flags;
  add_common(cmd_diag, diag_flags);
  double norm_phi = 2.0;
  cmd_diag->add_option("--norm-phi", norm_phi, "sup norm of the initial velocity");
  std::optional<double> diag_h;
  cmd_diag->add_option("--space-step", diag_h, "space step (default from case domain and J)");

  auto* cmd_resid = app.add_subcommand("residual", "manufactured-pair residual decay check");
  CommonFlags resid_flags;
  add_common(cmd_resid, resid_flags);
  double resid_h = 0.1;
  cmd_resid->add_option("--h0", resid_h, "base space step");
  double resid_t = 0.5;
  cmd_resid->add_option("--t", resid_t, "evaluation time");
  int resid_levels = 3;
  cmd_resid->add_option("--levels", resid_levels, "number of halvings");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) {
      const auto cfg = resolve(run_flags);
      const auto s = sylvbq::run_case(cfg);
      if (!s.ok) {
        std::printf("status: %s\n", s.error_tag.c_str());
        return exit_code_for(s);
      }
      std::printf("case=%s J=%d l=%.6g steps=%d source=%s init=%s\n", cfg.case_name.c_str(),
                  cfg.J, cfg.l, s.steps_done, sylvbq::to_string(cfg.source_form).c_str(),
                  cfg.init_mode == sylvbq::InitMode::exact ? "exact" : "taylor");
      std::printf("Er=%.8e at n=%d\n", s.Er, s.arg_n_abs);
      if (s.RelEr) {
        std::printf("RelEr=%.8e\n", *s.RelEr);
      } else {
        std::printf("RelEr=absent (zero exact norm)\n");
      }
      std::printf("method=%s iters=%lld contraction=%.4e runtime_ms=%.2f\n", s.method.c_str(),
                  s.solver_iters, s.contraction, s.runtime_ms);
      if (!dump_path.empty()) {
        if (sylvbq::case_is_complex(cfg.case_name)) {
          dump_final_field<std::complex<double>>(cfg, dump_path);
        } else {
          dump_final_field<double>(cfg, dump_path);
        }
        std::printf("final field written to %s\n", dump_path.c_str());
      }
      return kExitOk;
    }

    if (cmd_sweep->parsed()) {
      const auto cfg = resolve(sweep_flags);
      const auto ladder = parse_ladder(pair_args);
      const auto mc_span = sylvbq::case_is_complex(cfg.case_name) ? 4.0 * M_PI : 2.0;
      const auto result = sylvbq::sweep(cfg, ladder, mc_span);
      if (csv_out.empty()) {
        std::fputs(result.csv.c_str(), stdout);
      } else {
        std::ofstream out(csv_out);
        if (!out) throw std::invalid_argument("cannot open " + csv_out);
        out << result.csv;
        std::printf("wrote %s\n", csv_out.c_str());
      }
      if (sweep_check) {
        bool decreasing = true;
        for (std::size_t k = 0; k + 1 < result.rows.size(); ++k) {
          const auto& a = result.rows[k].summary;
          const auto& b = result.rows[k + 1].summary;
          if (!a.ok || !b.ok || !(b.Er < a.Er)) decreasing = false;
        }
        if (!decreasing) return kExitGateFailure;
      }
      for (const auto& row : result.rows) {
        if (!row.summary.ok && row.summary.error_tag.rfind("blowup", 0) == 0) return kExitBlowup;
        if (!row.summary.ok) return kExitSolverFailure;
      }
      return kExitOk;
    }

    if (cmd_compare->parsed()) {
      const auto cfg = resolve(cmp_flags);
      const auto r = sylvbq::compare_baseline(cfg, cfg.J, cfg.l, cmp_steps);
      std::printf("J=%d steps=%d\n", r.J, r.steps);
      std::printf("lyapunov_ms=%.3f banded_flat_ms=%.3f dense_flat_ms=%.3f\n", r.lyap_ms,
                  r.banded_flat_ms, r.dense_flat_ms);
      std::printf("divergence: banded=%.3e dense=%.3e\n", r.divergence_banded,
                  r.divergence_dense);
      std::printf("speedup dense/lyap=%.2f banded/lyap=%.2f\n", r.speedup_dense_over_lyap,
                  r.speedup_banded_over_lyap);
      if (cmp_check && !(r.speedup_dense_over_lyap >= min_speedup)) return kExitGateFailure;
      return kExitOk;
    }

    if (cmd_probe->parsed()) {
      const auto cfg = resolve(probe_flags);
      const auto r =
          sylvbq::stability_probe(cfg.eta, probe_steps, cfg.J, cfg.l, cfg.params(), cfg.epsilon);
      if (r.blew_up) {
        std::printf("blow-up at n=%d\n", r.blowup_step);
        return probe_check ? kExitGateFailure : kExitBlowup;
      }
      std::printf("eta=%.3e steps=%d max_pair_norm=%.8e at n=%d bounded=%s (epsilon=%.3e)\n",
                  r.eta, r.steps, r.max_pair_norm, r.arg_n, r.bounded ? "yes" : "no",
                  r.epsilon);
      if (probe_check && !r.bounded) return kExitGateFailure;
      return kExitOk;
    }

    if (cmd_diag->parsed()) {
      const auto cfg = resolve(diag_flags);
      const double span = sylvbq::case_is_complex(cfg.case_name) ? 4.0 * M_PI : 2.0;
      const double h = diag_h ? *diag_h : span / cfg.J;
      const auto coeffs = sylvbq::compute_coefficients(cfg.alpha, cfg.q, cfg.l, h);
      const auto d =
          sylvbq::discriminant_diagnostics(cfg.l, h, norm_phi, cfg.epsilon, coeffs);
      std::printf("l=%.6g h=%.6g |phi|=%.6g epsilon=%.6g\n", d.l, d.h, d.norm_phi, d.epsilon);
      std::printf("Delta1=%.10g (%s)\n", d.Delta1,
                  d.has_real_root ? "real roots" : "no real root");
      std::printf("eta1=%.10g\n", d.eta1);
      std::printf("A=%.10g B=%.10g C=%.10g\n", d.Acoef, d.Bcoef, d.Ccoef);
      std::printf("Delta2_asymptotic=%.10g\n", d.Delta2_asymptotic);
      return kExitOk;
    }

    if (cmd_resid->parsed()) {
      const auto cfg = resolve(resid_flags);
      const auto report = [&](auto mc) {
        for (const auto form : {sylvbq::SourceForm::printed, sylvbq::SourceForm::consistent}) {
          std::printf("source=%s:\n", sylvbq::to_string(form).c_str());
          double prev = 0.0;
          for (int k = 0; k < resid_levels; ++k) {
            const double hk = resid_h / (1 << k);
            const double lk = hk / 10.0;
            const double r = sylvbq::residual_check(mc, hk, lk, resid_t, form);
            if (k == 0) {
              std::printf("  h=%-10.4g residual=%.6e\n", hk, r);
            } else {
              std::printf("  h=%-10.4g residual=%.6e ratio=%.3f\n", hk, r, prev / r);
            }
            prev = r;
          }
        }
      };
      if (sylvbq::case_is_complex(cfg.case_name)) {
        report(sylvbq::example2(cfg.q));
      } else {
        report(sylvbq::example1(cfg.q));
      }
      return kExitOk;
    }
  } catch (const sylvbq::BlowupError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBlowup;
  } catch (const sylvbq::SolverFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolverFailure;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadConfig;
  }
  return kExitOk;
}
