#include "fracbeam/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fracbeam {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

std::int64_t parse_integer(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(what) + ": expected an integer, got " + quoted(text));
  }
  return value;
}

std::vector<double> parse_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number(trim(text.substr(0, comma)), what));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

void require(bool ok, std::string_view key, const std::string& message) {
  if (!ok) throw ConfigError(std::string(key) + ": " + message);
}

}  // namespace

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(value)) {
    throw ConfigError(std::string(what) + ": expected a number, got " + quoted(text));
  }
  return value;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  auto& p = c.params;
  if (key == "rho1") p.rho1 = parse_number(value, key);
  else if (key == "rho2") p.rho2 = parse_number(value, key);
  else if (key == "kappa") p.kappa = parse_number(value, key);
  else if (key == "b") p.bending = parse_number(value, key);
  else if (key == "L") p.length = parse_number(value, key);
  else if (key == "tau") p.tau = parse_number(value, key);
  else if (key == "sigma") p.sigma = parse_number(value, key);
  else if (key == "n_modes") {
    const auto n = parse_integer(value, key);
    require(n >= 1 && n <= 4096, key, "must be in [1, 4096], got " + std::to_string(n));
    p.n_modes = static_cast<int>(n);
  } else if (key == "seed") {
    const auto s = parse_integer(value, key);
    require(s >= 0, key, "must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "lambda_min") c.lambda_min = parse_number(value, key);
  else if (key == "lambda_max") c.lambda_max = parse_number(value, key);
  else if (key == "points_per_decade") {
    const auto n = parse_integer(value, key);
    require(n >= 1 && n <= 10000, key, "must be in [1, 10000]");
    c.points_per_decade = static_cast<int>(n);
  } else if (key == "t_final") c.t_final = parse_number(value, key);
  else if (key == "steps") {
    const auto n = parse_integer(value, key);
    require(n >= 1 && n <= 1000000, key, "must be in [1, 1000000]");
    c.steps = static_cast<int>(n);
  } else if (key == "tau_grid") c.tau_grid = parse_list(value, key);
  else if (key == "sigma_grid") c.sigma_grid = parse_list(value, key);
  else if (key == "tolerance") c.tolerance = parse_number(value, key);
  else throw ConfigError("unknown key " + quoted(key));
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  require(lambda_min > 0.0, "lambda_min", "must be positive");
  require(lambda_max > lambda_min, "lambda_max", "must exceed lambda_min");
  require(t_final > 0.0, "t_final", "must be positive");
  require(tolerance >= 0.0, "tolerance", "must be non-negative");
  for (double t : tau_grid) require(t >= 0.0 && t <= 1.0, "tau_grid", "entries must lie in [0, 1]");
  for (double s : sigma_grid) require(s >= 0.0 && s <= 1.0, "sigma_grid", "entries must lie in [0, 1]");
  require(!tau_grid.empty(), "tau_grid", "must not be empty");
  require(!sigma_grid.empty(), "sigma_grid", "must not be empty");
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value', got " +
                        quoted(line));
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    }
    try {
      apply_setting(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  config.validate();
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + quoted(path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace fracbeam
