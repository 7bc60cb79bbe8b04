// fracbeam: command line front end for the fractional-damping beam toolkit.
//
//   fracbeam <verify|spectrum|resolvent|fit-exponent|simulate|region-map>
//            [--config <path>] [--out <path>] [--in <path>] [overrides...]
//
// Exit codes: 0 success, 1 check failure, 2 usage or config error.

#include "fracbeam/config.hpp"
#include "fracbeam/csv.hpp"
#include "fracbeam/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

int main(int argc, char** argv) {
  using namespace fracbeam;

  CLI::App app{"Spectral verification toolkit for the Timoshenko beam with fractional damping"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_path;
  std::string in_path;
  // Flag name -> config key; values are applied through the config parser.
  const std::vector<std::pair<std::string, std::string>> overrides = {
      {"--lambda-min", "lambda_min"}, {"--lambda-max", "lambda_max"},
      {"--points-per-decade", "points_per_decade"}, {"--t-final", "t_final"},
      {"--steps", "steps"}, {"--tau-grid", "tau_grid"}, {"--sigma-grid", "sigma_grid"},
      {"--tolerance", "tolerance"}, {"--seed", "seed"}, {"--tau", "tau"}, {"--sigma", "sigma"},
      {"--n-modes", "n_modes"}};
  std::vector<std::string> override_values(overrides.size());

  for (const char* name : {"verify", "spectrum", "resolvent", "fit-exponent", "simulate", "region-map"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--out", out_path, "output CSV path");
    sub->add_option("--in", in_path, "input CSV (fit-exponent)");
    for (std::size_t i = 0; i < overrides.size(); ++i) {
      sub->add_option(overrides[i].first, override_values[i]);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitSuccess : kExitUsage;
  }

  const auto* chosen = app.get_subcommands().front();
  CommandOptions options;
  options.command = *parse_command(chosen->get_name());
  if (!out_path.empty()) options.out = out_path;
  if (!in_path.empty()) options.in = in_path;

  RunConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
    for (std::size_t i = 0; i < overrides.size(); ++i) {
      if (chosen->count(overrides[i].first) > 0) {
        apply_setting(config, overrides[i].second, override_values[i]);
      }
    }
    config.validate();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  return run_command(config, options, std::cout, std::cerr);
}
