#include "fracbeam/csv.hpp"
#include "fracbeam/experiment.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

using namespace fracbeam;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("fracbeam_test_" + name); }

RunConfig small_config() {
  RunConfig c;
  c.params.n_modes = 8;
  c.lambda_max = 1e3;
  c.points_per_decade = 8;
  c.steps = 50;
  c.t_final = 5.0;
  return c;
}

}  // namespace

TEST_CASE("region classification and guaranteed exponents") {
  CHECK(classify_region(0.25, 0.25) == Region::gevrey);
  CHECK(guaranteed_exponent(0.25, 0.25) == doctest::Approx(0.4));
  CHECK(classify_region(0.3, 0.8) == Region::gevrey);
  CHECK(guaranteed_exponent(0.3, 0.8) == doctest::Approx(0.6 / 1.3));
  CHECK(guaranteed_exponent(0.3, 0.8) == doctest::Approx(0.4615).epsilon(1e-4));
  CHECK(classify_region(0.75, 0.9) == Region::analytic);
  CHECK(guaranteed_exponent(0.75, 0.9) == 1.0);
  CHECK(classify_region(0.5, 0.5) == Region::analytic);
  CHECK(classify_region(1.0, 0.25) == Region::none);
  CHECK(classify_region(0.0, 0.5) == Region::none);
  CHECK(std::isnan(guaranteed_exponent(0.0, 0.5)));
  CHECK(region_label(Region::gevrey) == "R_CG\\R_A");
}

TEST_CASE("command names round trip") {
  for (auto c : {Command::verify, Command::spectrum, Command::resolvent, Command::fit_exponent,
                 Command::simulate, Command::region_map}) {
    CHECK(parse_command(to_string(c)) == c);
  }
  CHECK_FALSE(parse_command("plot").has_value());
}

TEST_CASE("verify suite passes on a small model") {
  auto config = small_config();
  for (auto [tau, sigma] : {std::pair{1.0, 1.0}, {0.25, 0.5}, {0.0, 0.0}}) {
    config.params.tau = tau;
    config.params.sigma = sigma;
    for (const auto& check : verify_suite(config)) {
      CAPTURE(format_check(check));
      CHECK(check.passed);
    }
  }
  const CheckResult failing{"demo", false, 2.0, 1.0, "tau=0.5"};
  CHECK(format_check(failing).rfind("FAIL check=demo", 0) == 0);
}

TEST_CASE("commands write their CSV schemas deterministically") {
  const auto config = small_config();
  std::ostringstream log, err;

  for (auto [command, name, header] :
       {std::tuple{Command::spectrum, "spectrum", "re,im"}, {Command::resolvent, "resolvent", "lambda,norm"},
        {Command::simulate, "energy", "t,energy"}}) {
    const auto a = scratch(std::string(name) + "_a.csv");
    const auto b = scratch(std::string(name) + "_b.csv");
    CHECK(run_command(config, {command, a, {}}, log, err) == kExitSuccess);
    CHECK(run_command(config, {command, b, {}}, log, err) == kExitSuccess);
    const auto text = slurp(a);
    CHECK(text.rfind(std::string(header) + "\n", 0) == 0);
    CHECK(text == slurp(b));
    fs::remove(a);
    fs::remove(b);
  }

  const auto res = scratch("fit_input.csv");
  REQUIRE(run_command(config, {Command::resolvent, res, {}}, log, err) == kExitSuccess);
  std::ostringstream fit_log;
  CHECK(run_command(config, {Command::fit_exponent, {}, res}, fit_log, err) == kExitSuccess);
  CHECK(fit_log.str().find("phi_hat=") != std::string::npos);
  fs::remove(res);
}

TEST_CASE("region map rows") {
  auto config = small_config();
  config.tau_grid = {0.25, 0.5};
  config.sigma_grid = {0.25, 1.0};
  const auto out = scratch("regionmap.csv");
  std::ostringstream log, err;
  CHECK(run_command(config, {Command::region_map, out, {}}, log, err) == kExitSuccess);
  const auto table = read_csv(out);
  CHECK(table.header == schema::regionmap.columns);
  REQUIRE(table.rows.size() == 4);
  const auto region = table.column("region");
  const auto pass = table.column("pass");
  CHECK(table.rows[0][region] == "R_CG\\R_A");
  CHECK(table.rows[1][region] == "none");
  CHECK(table.rows[1][pass] == "na");
  CHECK(table.rows[3][region] == "R_A");
  for (int i : {0, 2, 3}) CHECK(table.rows[i][pass] == "true");
  fs::remove(out);
}

TEST_CASE("exit codes") {
  const auto config = small_config();
  std::ostringstream log, err;
  CHECK(run_command(config, {Command::spectrum, {}, {}}, log, err) == kExitUsage);
  CHECK(run_command(config, {Command::fit_exponent, {}, {}}, log, err) == kExitUsage);
  CHECK(run_command(config, {Command::fit_exponent, {}, scratch("absent.csv")}, log, err) == kExitUsage);

  auto bad = config;
  bad.params.tau = 2.0;
  CHECK(run_command(bad, {Command::verify, {}, {}}, log, err) == kExitUsage);

  const auto garbage = scratch("garbage.csv");
  std::ofstream(garbage) << "lambda,norm\n1,abc\n";
  CHECK(run_command(config, {Command::fit_exponent, {}, garbage}, log, err) == kExitUsage);
  fs::remove(garbage);
}
