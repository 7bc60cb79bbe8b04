#include "fracbeam/beam_model.hpp"
#include "fracbeam/quadrature.hpp"

#include <doctest.h>

#ifdef FRACBEAM_HAVE_BOOST_QUADRATURE
#include <boost/math/quadrature/gauss_kronrod.hpp>
#endif

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace fracbeam;
using std::numbers::pi;

namespace {

PhysicalParams with(double tau, double sigma, int n) {
  PhysicalParams p;
  p.tau = tau;
  p.sigma = sigma;
  p.n_modes = n;
  return p;
}

// <e_j', e_k> integrated directly from the sine basis.
double coupling_reference(int k, int j, double length) {
  const double c = 2.0 / length * j * pi / length;
  auto f = [&](double x) { return c * std::cos(j * pi * x / length) * std::sin(k * pi * x / length); };
#ifdef FRACBEAM_HAVE_BOOST_QUADRATURE
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, length, 10, 1e-14);
#else
  // Midpoint rule with many panels; enough for the 1e-8 bound below.
  const int n = 200000;
  const double h = length / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += f((i + 0.5) * h);
  return s * h;
#endif
}

}  // namespace

TEST_CASE("modal eigenvalues follow (k pi / L)^2") {
  PhysicalParams p;
  p.n_modes = 3;
  auto mu = build_modal_basis(p).eigenvalues();
  CHECK(mu(0) == doctest::Approx(1.0));
  CHECK(mu(1) == doctest::Approx(4.0));
  CHECK(mu(2) == doctest::Approx(9.0));

  p.length = 1.0;
  p.n_modes = 1;
  CHECK(build_modal_basis(p).eigenvalues()(0) == doctest::Approx(pi * pi));

  p.length = 2.0;
  p.n_modes = 2;
  mu = build_modal_basis(p).eigenvalues();
  CHECK(mu(0) == doctest::Approx(pi * pi / 4));
  CHECK(mu(1) == doctest::Approx(pi * pi));

  const auto powers = build_modal_basis(with(1, 1, 4)).power(0.5);
  for (int k = 0; k < 4; ++k) CHECK(powers(k) == doctest::Approx(k + 1.0));
}

TEST_CASE("coupling entries match an independent quadrature") {
  CHECK(coupling_entry(1, 2, pi) == doctest::Approx(-8.0 / (3.0 * pi)).epsilon(1e-14));
  for (double length : {pi, 1.0, 2.5}) {
    for (int k = 1; k <= 8; ++k) {
      for (int j = 1; j <= 8; ++j) {
        CAPTURE(k);
        CAPTURE(j);
        CHECK(std::abs(coupling_entry(k, j, length) - coupling_reference(k, j, length)) <= 1e-10 * (1.0 + k * j));
      }
    }
  }
  // The library's own quadrature agrees too.
  CHECK(coupling_entry_by_quadrature(3, 6, pi) == doctest::Approx(coupling_entry(3, 6, pi)).epsilon(1e-12));
}

TEST_CASE("coupling matrix is skew with the parity pattern") {
  const auto g = build_coupling_matrix(with(1, 1, 12)).g;
  CHECK((g + g.transpose()).norm() == doctest::Approx(0.0));
  for (int k = 0; k < 12; ++k) {
    for (int j = 0; j < 12; ++j) {
      if ((k + j) % 2 == 0) CHECK(g(k, j) == 0.0);
      else CHECK(g(k, j) != 0.0);
    }
  }
}

TEST_CASE("single mode generator and energy in closed form") {
  const auto model = ModalModel::assemble(with(1, 1, 1));
  Eigen::Matrix4d b;
  b << 0, 1, 0, 0, -1, -1, 0, 0, 0, 0, 0, 1, 0, 0, -2, -1;
  CHECK((model.generator() - b).norm() <= 1e-15);
  const Eigen::Vector4d m(1, 1, 2, 1);
  CHECK((model.energy() - Eigen::Matrix4d(m.asDiagonal())).norm() <= 1e-15);

  // Damping enters as mu^tau; with L = 1 that is pi^(2 tau).
  PhysicalParams p = with(0.5, 0.25, 1);
  p.length = 1.0;
  const auto d = damping_matrix(p, build_modal_basis(p));
  CHECK(d(1, 1) == doctest::Approx(pi));
  CHECK(d(3, 3) == doctest::Approx(std::sqrt(pi)));
  CHECK(d(0, 0) == 0.0);
}

TEST_CASE("dissipativity identity on the exponent grid") {
  for (int n : {1, 4, 16, 64}) {
    for (double tau : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      for (double sigma : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto p = with(tau, sigma, n);
        const auto model = ModalModel::assemble(p);
        const Eigen::MatrixXd& m = model.energy();
        const Eigen::MatrixXd& b = model.generator();
        const Eigen::MatrixXd r =
            m * b + b.transpose() * m + 2.0 * damping_matrix(p, model.basis());
        CAPTURE(n);
        CAPTURE(tau);
        CAPTURE(sigma);
        CHECK(r.norm() / (m * b).norm() <= 1e-12);
      }
    }
  }
}

TEST_CASE("energy matrix is positive definite and factored consistently") {
  const auto model = ModalModel::assemble(with(0.5, 0.75, 32));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(model.energy());
  CHECK(eig.eigenvalues().minCoeff() > 0.0);

  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd x(model.dimension());
    for (auto& v : x) v = normal(rng);
    const double direct = x.dot(model.energy() * x);
    CHECK(std::pow(model.energy_norm(x), 2) == doctest::Approx(direct).epsilon(1e-12));
    CHECK((model.from_energy_coords(model.to_energy_coords(x)) - x).norm() <= 1e-12 * x.norm());
  }
  const Eigen::MatrixXd& c = model.energy_factor();
  const Eigen::MatrixXd lhs = c * model.generator() * c.inverse();
  CHECK((lhs - model.generator_energy_coords()).norm() <= 1e-10 * lhs.norm());
}

TEST_CASE("parameter validation names the offending key") {
  auto expect_key = [](PhysicalParams p, const char* key) {
    try {
      p.validate();
      FAIL("expected rejection of " << key);
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find(key) != std::string::npos);
    }
  };
  PhysicalParams p;
  p.rho1 = 0.0;
  expect_key(p, "rho1");
  p = {};
  p.tau = 1.5;
  expect_key(p, "tau");
  p = {};
  p.sigma = -0.1;
  expect_key(p, "sigma");
  p = {};
  p.length = -1.0;
  expect_key(p, "L");
  p = {};
  p.n_modes = 0;
  expect_key(p, "n_modes");
  CHECK_THROWS_AS(ModalModel::assemble(p), std::invalid_argument);
}
