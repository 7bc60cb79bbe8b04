#include "fracbeam/fd_oracle.hpp"
#include "fracbeam/spectral_analysis.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace fracbeam;

TEST_CASE("discrete sine vectors diagonalize the grid laplacian") {
  const auto fd = assemble_fd_generator(PhysicalParams{}, 40);
  const Eigen::MatrixXd& v = fd.sine_vectors;
  CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(40, 40)).norm() <= 1e-12);
  const Eigen::MatrixXd av = fd.laplacian * v;
  const Eigen::MatrixXd vl = v * fd.eigenvalues.asDiagonal();
  CHECK((av - vl).norm() <= 1e-10 * av.norm());

  CHECK((fd.fractional_power(1.0) - fd.laplacian).norm() <= 1e-10 * fd.laplacian.norm());
  CHECK((fd.fractional_power(0.0) - Eigen::MatrixXd::Identity(40, 40)).norm() <= 1e-12);
  const Eigen::MatrixXd half = fd.fractional_power(0.5);
  CHECK((half * half - fd.laplacian).norm() <= 1e-10 * fd.laplacian.norm());

  // Lowest grid eigenvalue tends to (pi / L)^2 = 1.
  CHECK(fd.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("grid sizes below three are rejected") {
  CHECK_THROWS_AS(assemble_fd_generator(PhysicalParams{}, 2), std::invalid_argument);
  CHECK_NOTHROW(assemble_fd_generator(PhysicalParams{}, 3));
}

TEST_CASE("shift-invert eigenvalues agree with a dense solve") {
  PhysicalParams p;
  p.tau = 0.5;
  p.sigma = 0.5;
  const auto fd = assemble_fd_generator(p, 48);
  auto dense = compute_spectrum(fd.generator).eigenvalues;
  std::sort(dense.begin(), dense.end(), [](auto a, auto b) { return std::abs(a) < std::abs(b); });
  const auto small = smallest_eigenvalues(fd.generator, 8);
  REQUIRE(small.size() == 8);
  for (std::size_t i = 0; i < small.size(); ++i) {
    // Conjugate pairs share a modulus, so match against the nearest dense value.
    double best = 1e300;
    for (std::size_t j = 0; j < 12; ++j) best = std::min(best, std::abs(small[i] - dense[j]));
    CHECK(best <= 1e-9 * std::abs(small[i]));
    CHECK(std::abs(small[i]) <= std::abs(dense[8]) * (1 + 1e-9));
  }
}
