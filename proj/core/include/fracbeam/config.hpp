#pragma once

#include "fracbeam/beam_model.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fracbeam {

/// Physical parameters plus the settings used by the experiment commands.
struct RunConfig {
  PhysicalParams params;
  std::uint64_t seed = 42;

  double lambda_min = 1.0;
  double lambda_max = 1e4;
  int points_per_decade = 20;

  double t_final = 20.0;
  int steps = 400;

  std::vector<double> tau_grid = {0.25, 0.5, 0.75, 1.0};
  std::vector<double> sigma_grid = {0.25, 0.5, 0.75, 1.0};
  double tolerance = 0.05;

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Line-oriented `key = value` text; `#` starts a comment. Unknown keys,
/// malformed values and out-of-range settings are rejected with ConfigError.
/// Grids are comma-separated lists.
RunConfig parse_config(std::string_view text);

/// Reads and parses a config file.
RunConfig load_config(const std::string& path);

/// Sets one key from its textual value, as a config line would.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Strict decimal parse of the whole string; throws ConfigError otherwise.
double parse_number(std::string_view text, std::string_view what);

}  // namespace fracbeam
