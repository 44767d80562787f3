#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "sphdg/limiter.hpp"
#include "sphdg/types.hpp"

namespace sphdg {

struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Everything a run needs beyond the scenario itself. Values left at their
/// sentinel defaults fall back to the scenario's own defaults.
struct RunConfig {
  std::string scenario;
  std::map<std::string, real> scenario_overrides;
  std::string profile_path;

  int n_cells = 0;  // 0: scenario default
  int degree = 2;
  int rk_order = 3;
  std::string scheme = "wb";  // wb | standard | standard_corr

  LimiterConfig limiter;
  bool limiter_enabled_set = false;

  real cfl = -1;    // <0: scenario default
  real t_end = -1;  // <0: scenario default

  std::string out_dir;
  int snapshot_every = 0;
  int threads = 1;
};

/// key=value format with [section] headers; '#' starts a comment. Unknown
/// keys or malformed values raise config_error with the line number.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

}  // namespace sphdg
