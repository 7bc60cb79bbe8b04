#pragma once

// Orchestration behind the command line tool: the invariant suite, the CSV
// producing commands and the (tau, sigma) region map.

#include "fracbeam/config.hpp"
#include "fracbeam/spectral_analysis.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fracbeam {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;

enum class Command { verify, spectrum, resolvent, fit_exponent, simulate, region_map };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command command);

/// R_A = [1/2, 1]^2 (analytic), R_CG = (0, 1)^2 (Gevrey).
enum class Region { analytic, gevrey, none };

std::string_view region_label(Region region);
Region classify_region(double tau, double sigma);

/// 2 m / (m + 1) with m = min(tau, sigma).
double gevrey_exponent(double tau, double sigma);

/// Decay exponent guaranteed for (tau, sigma): 1 on R_A, the Gevrey exponent
/// on R_CG outside R_A, NaN where no claim is made.
double guaranteed_exponent(double tau, double sigma);

struct RegionClassification {
  double tau = 0.0;
  double sigma = 0.0;
  Region region = Region::none;
  double phi_theory = 0.0;
  double phi_hat = 0.0;
  double r_squared = 0.0;
  std::optional<bool> pass;  ///< empty when the region makes no claim
};

/// Sweeps the resolvent on [lambda_min, lambda_max] for the given exponents
/// and fits the top two decades.
RegionClassification measure_region(const RunConfig& config, double tau, double sigma);

/// Fit window rule shared by fit-exponent and region-map: the top two decades
/// of the samples lying in [lambda_min, lambda_max].
ExponentFit fit_in_config_window(const RunConfig& config, std::span<const ResolventSample> samples);

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double limit = 0.0;
  std::string detail;
};

/// "PASS <name> value=... limit=..." or "FAIL check=<name> value=... limit=... <detail>".
std::string format_check(const CheckResult& check);

/// Invariant suite of the modal model, spectral checks and time evolution for
/// the parameters in config.
std::vector<CheckResult> verify_suite(const RunConfig& config);

struct CommandOptions {
  Command command = Command::verify;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> in;
};

/// Runs one command; returns kExitSuccess, kExitCheckFailure or kExitUsage.
/// Human-readable progress goes to `log`, failure lines to `err`.
int run_command(const RunConfig& config, const CommandOptions& options, std::ostream& log,
                std::ostream& err);

}  // namespace fracbeam
