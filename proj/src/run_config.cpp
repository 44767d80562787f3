#include "sphdg/run_config.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace sphdg {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

real to_real(const std::string& v, int line) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return real(d);
  } catch (const std::exception&) {
    throw config_error("line " + std::to_string(line) + ": expected a number, got '" + v + "'");
  }
}

int to_int(const std::string& v, int line) {
  try {
    size_t pos = 0;
    const int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw config_error("line " + std::to_string(line) + ": expected an integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw config_error("line " + std::to_string(line) + ": expected a boolean, got '" + v + "'");
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string section = "run";
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "run" && section != "limiter" && section != "scenario")
        throw config_error("line " + std::to_string(lineno) + ": unknown section '" + section +
                           "' (known: run, limiter, scenario)");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (section == "run") {
      if (key == "scenario")
        cfg.scenario = val;
      else if (key == "N")
        cfg.n_cells = to_int(val, lineno);
      else if (key == "k")
        cfg.degree = to_int(val, lineno);
      else if (key == "rk")
        cfg.rk_order = to_int(val, lineno);
      else if (key == "scheme") {
        if (val != "wb" && val != "standard" && val != "standard_corr")
          throw config_error("line " + std::to_string(lineno) +
                             ": scheme must be wb, standard or standard_corr");
        cfg.scheme = val;
      } else if (key == "cfl")
        cfg.cfl = to_real(val, lineno);
      else if (key == "t_end")
        cfg.t_end = to_real(val, lineno);
      else if (key == "out")
        cfg.out_dir = val;
      else if (key == "snapshot_every")
        cfg.snapshot_every = to_int(val, lineno);
      else if (key == "threads")
        cfg.threads = to_int(val, lineno);
      else if (key == "profile")
        cfg.profile_path = val;
      else
        throw config_error("line " + std::to_string(lineno) + ": unknown key '" + key +
                           "' in [run] (known: scenario, N, k, rk, scheme, cfl, t_end, out, "
                           "snapshot_every, threads, profile)");
    } else if (section == "limiter") {
      if (key == "enabled") {
        cfg.limiter.enabled = to_bool(val, lineno);
        cfg.limiter_enabled_set = true;
      } else if (key == "beta")
        cfg.limiter.beta = to_real(val, lineno);
      else if (key == "M")
        cfg.limiter.tvb_m = to_real(val, lineno);
      else
        throw config_error("line " + std::to_string(lineno) + ": unknown key '" + key +
                           "' in [limiter] (known: enabled, beta, M)");
    } else {  // [scenario]: free-form numeric overrides
      cfg.scenario_overrides[key] = to_real(val, lineno);
    }
  }
  if (cfg.scenario.empty()) throw config_error("config: 'scenario' is required");
  if (cfg.degree < 1) throw config_error("config: k must be >= 1");
  if (cfg.rk_order < 1 || cfg.rk_order > 3) throw config_error("config: rk must be 1, 2 or 3");
  if (cfg.cfl == 0 || (cfg.cfl > 0 && !(cfg.cfl > 0)))
    throw config_error("config: cfl must be positive");
  if (cfg.degree >= 2 && cfg.rk_order < 3)
    std::cerr << "warning: k = " << cfg.degree << " with rk = " << cfg.rk_order
              << " limits the convergence order in time\n";
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  return parse_config(in);
}

}  // namespace sphdg
