#include "fracbeam/spectral_analysis.hpp"

#include "fracbeam/detail/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace fracbeam {

namespace {

std::string describe(double lambda, double condition) {
  std::ostringstream os;
  os.precision(17);
  os << "resolvent unresolvable at lambda=" << lambda << " (condition estimate " << condition
     << " exceeds " << kMaxResolventCondition << ")";
  return os.str();
}

// Inverse of the smallest singular value, after the condition guard.
template <typename Matrix>
double inverse_smallest_singular_value(const Matrix& shifted, double lambda) {
  Eigen::BDCSVD<Matrix> svd(shifted);
  const auto& sv = svd.singularValues();
  const double largest = sv(0);
  const double smallest = sv(sv.size() - 1);
  const double condition =
      smallest > 0.0 ? largest / smallest : std::numeric_limits<double>::infinity();
  if (!(condition <= kMaxResolventCondition)) throw ResolventError(lambda, condition);
  return 1.0 / smallest;
}

}  // namespace

ResolventError::ResolventError(double lambda, double condition)
    : std::runtime_error(describe(lambda, condition)), lambda_(lambda), condition_(condition) {}

double resolvent_norm(const ModalModel& model, double lambda) {
  // C (i l - B)^{-1} C^{-1} = (i l - C B C^{-1})^{-1}.
  const Eigen::MatrixXd& similar = model.generator_energy_coords();
  Eigen::MatrixXcd shifted = -similar.cast<std::complex<double>>();
  shifted.diagonal().array() += std::complex<double>(0.0, lambda);
  return inverse_smallest_singular_value(shifted, lambda);
}

double real_resolvent_norm(const ModalModel& model, double lambda) {
  Eigen::MatrixXd shifted = -model.generator_energy_coords();
  shifted.diagonal().array() += lambda;
  return inverse_smallest_singular_value(shifted, lambda);
}

std::vector<double> log_grid(double lo, double hi, int points_per_decade) {
  if (!(lo > 0.0) || !(hi >= lo) || points_per_decade < 1) {
    throw std::invalid_argument("log_grid needs 0 < lo <= hi and points_per_decade >= 1");
  }
  const double decades = std::log10(hi / lo);
  const int intervals = std::max(0, static_cast<int>(std::lround(decades * points_per_decade)));
  std::vector<double> grid;
  grid.reserve(intervals + 1);
  if (intervals == 0) {
    grid.push_back(lo);
    return grid;
  }
  const double step = decades / intervals;
  for (int i = 0; i <= intervals; ++i) grid.push_back(lo * std::pow(10.0, i * step));
  grid.back() = hi;
  return grid;
}

SweepResult resolvent_sweep(const ModalModel& model, std::span<const double> lambda_grid) {
  for (std::size_t i = 1; i < lambda_grid.size(); ++i) {
    if (!(lambda_grid[i] > lambda_grid[i - 1])) {
      throw std::invalid_argument("resolvent_sweep: grid must be strictly increasing");
    }
  }
  std::vector<std::optional<double>> norms(lambda_grid.size());
  detail::parallel_for(lambda_grid.size(), [&](std::size_t i) {
    try {
      norms[i] = resolvent_norm(model, lambda_grid[i]);
    } catch (const ResolventError&) {
      norms[i].reset();
    }
  });

  SweepResult result;
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    if (norms[i]) {
      result.samples.push_back({lambda_grid[i], *norms[i]});
    } else {
      result.failed.push_back(lambda_grid[i]);
    }
  }
  if (10 * result.failed.size() > lambda_grid.size()) {
    throw std::runtime_error("resolvent_sweep: " + std::to_string(result.failed.size()) + " of " +
                             std::to_string(lambda_grid.size()) + " grid points failed");
  }
  return result;
}

HilleYosidaReport hille_yosida_check(const ModalModel& model, std::span<const double> lambda_grid) {
  HilleYosidaReport report;
  report.entries.resize(lambda_grid.size());
  for (double l : lambda_grid) {
    if (!(l > 0.0)) throw std::invalid_argument("hille_yosida_check: lambda must be positive");
  }
  detail::parallel_for(lambda_grid.size(), [&](std::size_t i) {
    const double l = lambda_grid[i];
    const double norm = real_resolvent_norm(model, l);
    report.entries[i] = {l, norm, l * norm};
  });
  report.passed = true;
  for (const auto& e : report.entries) {
    if (e.ratio > report.worst_ratio) {
      report.worst_ratio = e.ratio;
      report.worst_lambda = e.lambda;
    }
    if (e.ratio > 1.0 + 1e-8) report.passed = false;
  }
  return report;
}

StaticSolution static_solve(const ModalModel& model, const Eigen::VectorXd& rhs) {
  if (rhs.size() != model.dimension()) {
    throw std::invalid_argument("static_solve: right-hand side has length " +
                                std::to_string(rhs.size()) + ", expected " +
                                std::to_string(model.dimension()));
  }
  if (!rhs.allFinite()) throw std::invalid_argument("static_solve: non-finite right-hand side");

  const Eigen::MatrixXd& gen = model.generator();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gen);
  if (!lu.isInvertible() || lu.rcond() < 1.0 / kMaxResolventCondition) {
    throw std::runtime_error("static_solve: generator is singular (rcond " +
                             std::to_string(lu.rcond()) + ")");
  }
  StaticSolution out;
  out.state = lu.solve(rhs);
  out.bound = real_resolvent_norm(model, 0.0);
  const double f_norm = model.energy_norm(rhs);
  out.ratio = f_norm > 0.0 ? model.energy_norm(out.state) / f_norm : 0.0;
  return out;
}

}  // namespace fracbeam
