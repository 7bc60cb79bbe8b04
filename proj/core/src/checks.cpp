#include "fracbeam/spectral_analysis.hpp"

#include "fracbeam/detail/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

namespace fracbeam {

DissipativityReport verify_dissipativity(const ModalModel& model) {
  const Eigen::MatrixXd mb = model.energy() * model.generator();
  const Eigen::MatrixXd damping = damping_matrix(model.params(), model.basis());
  const Eigen::MatrixXd residual = mb + mb.transpose() + 2.0 * damping;

  DissipativityReport report;
  report.scale = mb.norm();
  report.relative_residual = residual.norm() / report.scale;

  const Eigen::MatrixXd sym = 0.5 * (mb + mb.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  report.max_symmetric_eigenvalue = es.eigenvalues().maxCoeff();
  report.passed = report.relative_residual <= 1e-12 &&
                  report.max_symmetric_eigenvalue <= 1e-10 * report.scale;
  return report;
}

double interpolation_ratio(const ModalBasis& basis, const Eigen::VectorXd& u, double alpha,
                           double beta, double gamma) {
  if (!(alpha < beta && beta < gamma)) {
    throw std::invalid_argument("interpolation_ratio: need alpha < beta < gamma");
  }
  auto weighted_norm = [&](double theta) {
    return (basis.power(theta).array() * u.array()).matrix().norm();
  };
  const double span = gamma - alpha;
  const double lower = std::pow(weighted_norm(alpha), (gamma - beta) / span);
  const double upper = std::pow(weighted_norm(gamma), (beta - alpha) / span);
  return weighted_norm(beta) / (lower * upper);
}

InterpolationReport verify_interpolation(const ModalBasis& basis, double alpha, double beta,
                                         double gamma, int trial_count, std::uint64_t seed) {
  if (!(alpha < beta && beta < gamma)) {
    throw std::invalid_argument("verify_interpolation: need alpha < beta < gamma");
  }
  if (trial_count < 1) throw std::invalid_argument("verify_interpolation: trial_count must be >= 1");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> decay(0.0, 3.0);
  InterpolationReport report;
  report.trials = trial_count;
  Eigen::VectorXd u(basis.size());
  for (int t = 0; t < trial_count; ++t) {
    // Random modal profile with a random algebraic decay rate, so trials mix
    // smooth and rough vectors.
    do {
      const double p = decay(rng);
      for (int k = 0; k < u.size(); ++k) u(k) = normal(rng) * std::pow(k + 1.0, -p);
    } while (u.squaredNorm() == 0.0);
    report.max_ratio = std::max(report.max_ratio, interpolation_ratio(basis, u, alpha, beta, gamma));
  }
  report.passed = report.max_ratio <= 1.0 + 1e-10;
  return report;
}

namespace {

struct LemmaSample {
  double resolvent = 0.0;
  double shear = 0.0;
  double velocity_u = 0.0;
  double velocity_psi = 0.0;
};

void summarize(LemmaSeries& s, const std::vector<double>& lambdas) {
  s.overall_max = 0.0;
  for (double v : s.per_lambda_max) s.overall_max = std::max(s.overall_max, v);
  std::vector<double> sorted = s.per_lambda_max;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  s.median = n == 0 ? 0.0 : (n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]));

  const double tail_start = lambdas.empty() ? 0.0 : lambdas.back() / 10.0;
  s.last_decade_max = 0.0;
  s.non_increasing_tail = true;
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (lambdas[i] < tail_start * (1.0 - 1e-12)) continue;
    const double v = s.per_lambda_max[i];
    s.last_decade_max = std::max(s.last_decade_max, v);
    if (v > previous * (1.0 + 1e-9)) s.non_increasing_tail = false;
    previous = v;
  }
  s.bounded = std::isfinite(s.overall_max) && s.last_decade_max <= 2.0 * s.median;
}

}  // namespace

LemmaReport verify_lemma_estimates(const ModalModel& model, std::span<const double> lambda_grid,
                                   int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("verify_lemma_estimates: trials must be >= 1");
  for (double l : lambda_grid) {
    if (std::abs(l) < kLemmaDeltaFloor) {
      throw std::invalid_argument("verify_lemma_estimates: lambda=" + std::to_string(l) +
                                  " is below the delta floor |lambda| >= 1");
    }
  }

  const int n = model.n_modes();
  const int dim = model.dimension();
  const auto& p = model.params();

  // Right-hand sides drawn once and shared by every grid point. Mode k of each
  // field carries energy ~ k^{-2}, so the draw stays in H as N grows instead
  // of piling its energy into the highest retained modes.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const Eigen::VectorXd& mu = model.basis().eigenvalues();
  std::vector<Eigen::VectorXcd> forcing;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXcd f(dim);
    for (int k = 0; k < n; ++k) {
      const double decay = 1.0 / (k + 1.0);
      const double scales[4] = {decay / std::sqrt(p.kappa * mu(k)), decay / std::sqrt(p.rho1),
                                decay / std::sqrt(p.bending * mu(k) + p.kappa),
                                decay / std::sqrt(p.rho2)};
      for (int b = 0; b < 4; ++b) f(b * n + k) = {scales[b] * normal(rng), scales[b] * normal(rng)};
    }
    forcing.push_back(f / model.energy_norm(f));
  }

  const Eigen::MatrixXcd gen = model.generator().cast<std::complex<double>>();
  std::vector<std::optional<std::vector<LemmaSample>>> results(lambda_grid.size());
  detail::parallel_for(lambda_grid.size(), [&](std::size_t i) {
    const double l = lambda_grid[i];
    Eigen::MatrixXcd shifted = -gen;
    shifted.diagonal().array() += std::complex<double>(0.0, l);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
    if (!(lu.rcond() > 1.0 / kMaxResolventCondition)) return;

    std::vector<LemmaSample> samples;
    for (const auto& f : forcing) {
      const Eigen::VectorXcd u = lu.solve(f);
      if (!u.allFinite()) return;
      const double f_norm = model.energy_norm(f);
      const double u_norm = model.energy_norm(u);
      const double w2 = field(u, Field::velocity, n).squaredNorm();
      const double v2 = field(u, Field::angular_velocity, n).squaredNorm();
      const double kinetic = p.rho1 * w2 + p.rho2 * v2;
      const double potential = std::max(0.0, u_norm * u_norm - kinetic);
      const double fu = f_norm * u_norm;
      const double al = std::abs(l);
      samples.push_back({u_norm / f_norm, al * potential / (al * kinetic + fu), al * w2 / fu,
                         al * v2 / fu});
    }
    results[i] = std::move(samples);
  });

  LemmaReport report;
  std::vector<LemmaSeries> series(4);
  series[0].name = "resolvent";
  series[1].name = "shear";
  series[2].name = "velocity_u";
  series[3].name = "velocity_psi";
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    if (!results[i]) {
      report.failed.push_back(lambda_grid[i]);
      continue;
    }
    report.lambdas.push_back(lambda_grid[i]);
    LemmaSample m;
    for (const auto& s : *results[i]) {
      m.resolvent = std::max(m.resolvent, s.resolvent);
      m.shear = std::max(m.shear, s.shear);
      m.velocity_u = std::max(m.velocity_u, s.velocity_u);
      m.velocity_psi = std::max(m.velocity_psi, s.velocity_psi);
    }
    series[0].per_lambda_max.push_back(m.resolvent);
    series[1].per_lambda_max.push_back(m.shear);
    series[2].per_lambda_max.push_back(m.velocity_u);
    series[3].per_lambda_max.push_back(m.velocity_psi);
  }

  report.series.push_back(std::move(series[0]));
  report.series.push_back(std::move(series[1]));
  if (p.tau >= 0.5) report.series.push_back(std::move(series[2]));
  if (p.sigma >= 0.5) report.series.push_back(std::move(series[3]));

  report.passed = !report.lambdas.empty();
  for (auto& s : report.series) {
    summarize(s, report.lambdas);
    report.passed = report.passed && s.bounded;
  }
  return report;
}

}  // namespace fracbeam
