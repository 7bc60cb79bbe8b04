#include "fracbeam/config.hpp"
#include "fracbeam/csv.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>
#include <string>

using namespace fracbeam;

TEST_CASE("config parses keys, grids and comments") {
  const auto c = parse_config(
      "# analytic corner\n"
      "tau = 0.75\n"
      "sigma=1   # inline\n"
      "\n"
      "n_modes = 32\n"
      "b = 2.5\n"
      "L = 1\n"
      "tau_grid = 0.25, 0.5\n"
      "seed = 7\n");
  CHECK(c.params.tau == 0.75);
  CHECK(c.params.sigma == 1.0);
  CHECK(c.params.n_modes == 32);
  CHECK(c.params.bending == 2.5);
  CHECK(c.params.length == 1.0);
  CHECK(c.tau_grid == std::vector<double>{0.25, 0.5});
  CHECK(c.seed == 7);
  CHECK(c.lambda_max == 1e4);
}

TEST_CASE("config errors name the key or line") {
  auto message = [](std::string_view text) {
    try {
      parse_config(text).validate();
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("tau = 1.5\n").find("tau") != std::string::npos);
  CHECK(message("rho1 = 0\n").find("rho1") != std::string::npos);
  CHECK(message("colour = red\n").find("colour") != std::string::npos);
  CHECK(message("tau = 0.5\nn_modes = 3.5\n").find("line 2") != std::string::npos);
  CHECK(message("just words\n").find("line 1") != std::string::npos);
  CHECK(message("lambda_min = 10\nlambda_max = 1\n").find("lambda") != std::string::npos);
  CHECK(message("tau = 0.5\n").empty());
  CHECK_THROWS_AS(load_config("/nonexistent/fracbeam.cfg"), ConfigError);
  CHECK_THROWS_AS(parse_number("1.0x", "tau"), ConfigError);
  CHECK(parse_number("-2.5e-3", "x") == -2.5e-3);
}

TEST_CASE("csv header-only and small tables") {
  std::ostringstream empty;
  write_csv(empty, {}, schema::spectrum);
  CHECK(empty.str() == "re,im\n");

  std::ostringstream two;
  write_csv(two, {{0.5, -1.0}, {std::int64_t{3}, std::string("x")}}, schema::resolvent);
  CHECK(two.str() == "lambda,norm\n0.5,-1\n3,x\n");
  const auto table = parse_csv(two.str());
  CHECK(table.header == std::vector<std::string>{"lambda", "norm"});
  CHECK(table.rows.size() == 2);
  CHECK(table.column("norm") == 1);
  CHECK_THROWS(table.column("missing"));

  std::ostringstream bad;
  CHECK_THROWS_AS(write_csv(bad, {{1.0}}, schema::energy), std::invalid_argument);

  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("csv doubles survive a round trip bit for bit") {
  std::mt19937_64 rng(2024);
  std::vector<CsvRow> rows;
  std::vector<double> values;
  for (int i = 0; i < 2000; ++i) {
    double v = std::bit_cast<double>(rng());
    if (!std::isfinite(v)) v = 1.0 / (i + 1);
    const double w = std::ldexp(static_cast<double>(rng() >> 11), -53) * std::pow(10.0, i % 40 - 20);
    rows.push_back({v, w});
    values.push_back(v);
    values.push_back(w);
  }
  const auto path = std::filesystem::temp_directory_path() / "fracbeam_roundtrip.csv";
  write_csv(rows, schema::energy, path);
  const auto table = read_csv(path);
  REQUIRE(table.rows.size() == rows.size());
  std::size_t k = 0;
  for (const auto& row : table.rows) {
    for (const auto& cell : row) {
      CHECK(std::bit_cast<std::uint64_t>(std::strtod(cell.c_str(), nullptr)) ==
            std::bit_cast<std::uint64_t>(values[k]));
      ++k;
    }
  }
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_csv(path), std::runtime_error);
}
