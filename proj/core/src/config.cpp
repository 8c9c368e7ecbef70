#include "sylvbq/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sylvbq {

int HarnessConfig::n_steps() const {
  if (!(l > 0.0) || !(T >= t0)) {
    throw std::invalid_argument("config: need l > 0 and T >= t0");
  }
  return static_cast<int>(std::lround((T - t0) / l));
}

RunConfig HarnessConfig::run_config() const {
  RunConfig rc;
  rc.init = init_mode;
  rc.backend = solver;
  rc.tol = tol;
  rc.max_iters = max_iters;
  rc.blowup_guard = blowup_guard;
  return rc;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  const double d = std::stod(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("config: bad number for " + key + ": " + v);
  return d;
}

int to_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  const int i = std::stoi(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("config: bad integer for " + key + ": " + v);
  return i;
}

}  // namespace

void apply_config_key(HarnessConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "case") {
    cfg.case_name = value;
  } else if (key == "J") {
    cfg.J = to_int(key, value);
  } else if (key == "l") {
    cfg.l = to_double(key, value);
  } else if (key == "alpha") {
    cfg.alpha = to_double(key, value);
  } else if (key == "q") {
    cfg.q = to_double(key, value);
  } else if (key == "t0") {
    cfg.t0 = to_double(key, value);
  } else if (key == "T") {
    cfg.T = to_double(key, value);
  } else if (key == "init_mode") {
    if (value == "exact") {
      cfg.init_mode = InitMode::exact;
    } else if (value == "taylor") {
      cfg.init_mode = InitMode::taylor;
    } else {
      throw std::invalid_argument("config: init_mode must be exact or taylor");
    }
  } else if (key == "solver") {
    cfg.solver = solver_backend_from_string(value);
  } else if (key == "tol") {
    cfg.tol = to_double(key, value);
  } else if (key == "max_iters") {
    cfg.max_iters = to_int(key, value);
  } else if (key == "dense_cap") {
    cfg.dense_cap = to_int(key, value);
  } else if (key == "epsilon") {
    cfg.epsilon = to_double(key, value);
  } else if (key == "eta") {
    cfg.eta = to_double(key, value);
  } else if (key == "source_form") {
    cfg.source_form = source_form_from_string(value);
  } else if (key == "blowup_guard") {
    cfg.blowup_guard = to_double(key, value);
  } else {
    throw std::invalid_argument("config: unknown key: " + key);
  }
}

HarnessConfig parse_config(std::istream& in, HarnessConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key = value");
    }
    apply_config_key(base, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return base;
}

HarnessConfig load_config_file(const std::string& path, HarnessConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  return parse_config(in, base);
}

}  // namespace sylvbq
