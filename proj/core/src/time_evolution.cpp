#include "fracbeam/time_evolution.hpp"

#include "fracbeam/detail/parallel.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fracbeam {

namespace {

double largest_singular_value(const Eigen::MatrixXd& m) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

void require_time_grid(std::span<const double> times) {
  if (times.empty()) throw std::invalid_argument("time grid is empty");
  if (!(times.front() >= 0.0)) throw std::invalid_argument("time grid must start at t >= 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("time grid must be strictly increasing (index " +
                                  std::to_string(i) + ")");
    }
  }
}

// Reuses the last exponential when consecutive steps agree to roundoff.
class StepPropagator {
 public:
  explicit StepPropagator(const Eigen::MatrixXd& generator) : generator_(generator) {}

  const Eigen::MatrixXd& operator()(double dt) {
    if (!(cached_dt_ > 0.0) || std::abs(dt - cached_dt_) > 1e-13 * cached_dt_) {
      cached_ = (generator_ * dt).exp();
      cached_dt_ = dt;
    }
    return cached_;
  }

 private:
  const Eigen::MatrixXd& generator_;
  Eigen::MatrixXd cached_;
  double cached_dt_ = -1.0;
};

Trajectory propagate_expm(const ModalModel& model, const Eigen::VectorXd& initial,
                          std::span<const double> times) {
  Trajectory traj;
  traj.method = PropagationMethod::matrix_exponential;
  traj.times.assign(times.begin(), times.end());
  traj.states.resize(model.dimension(), static_cast<Eigen::Index>(times.size()));

  StepPropagator step(model.generator());
  Eigen::VectorXd x = initial;
  if (times.front() > 0.0) x = propagator(model, times.front()) * x;
  traj.states.col(0) = x;
  for (std::size_t i = 1; i < times.size(); ++i) {
    x = step(times[i] - times[i - 1]) * x;
    traj.states.col(static_cast<Eigen::Index>(i)) = x;
  }
  return traj;
}

Trajectory propagate_eigen(const ModalModel& model, const Eigen::VectorXd& initial,
                           std::span<const double> times) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(model.generator());
  if (es.info() != Eigen::Success) throw std::runtime_error("propagate: eigensolver failed");
  const Eigen::MatrixXcd vecs = es.eigenvectors();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vecs);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  if (!(cond <= 1e8)) {
    throw std::runtime_error("propagate: eigenvector basis too ill-conditioned (cond " +
                             std::to_string(cond) + ")");
  }
  const Eigen::VectorXcd coeffs = vecs.partialPivLu().solve(initial.cast<std::complex<double>>());
  const Eigen::VectorXcd values = es.eigenvalues();

  Trajectory traj;
  traj.method = PropagationMethod::eigendecomposition;
  traj.times.assign(times.begin(), times.end());
  traj.states.resize(model.dimension(), static_cast<Eigen::Index>(times.size()));
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Eigen::VectorXcd scaled = (values * times[i]).array().exp() * coeffs.array();
    traj.states.col(static_cast<Eigen::Index>(i)) = (vecs * scaled).real();
  }
  return traj;
}

}  // namespace

std::string_view to_string(PropagationMethod method) {
  switch (method) {
    case PropagationMethod::automatic: return "automatic";
    case PropagationMethod::matrix_exponential: return "matrix_exponential";
    case PropagationMethod::eigendecomposition: return "eigendecomposition";
  }
  return "unknown";
}

Eigen::MatrixXd propagator(const ModalModel& model, double t) {
  return (model.generator() * t).exp();
}

double propagator_norm(const ModalModel& model, double t) {
  return largest_singular_value((model.generator_energy_coords() * t).exp());
}

Trajectory propagate(const ModalModel& model, const Eigen::VectorXd& initial,
                     std::span<const double> times, PropagationMethod method) {
  if (initial.size() != model.dimension()) {
    throw std::invalid_argument("propagate: initial state has length " +
                                std::to_string(initial.size()) + ", expected " +
                                std::to_string(model.dimension()));
  }
  require_time_grid(times);
  Trajectory traj = method == PropagationMethod::eigendecomposition
                        ? propagate_eigen(model, initial, times)
                        : propagate_expm(model, initial, times);
  if (!traj.states.allFinite()) throw std::runtime_error("propagate: non-finite state (overflow)");
  return traj;
}

EnergyTrace energy_trace(const ModalModel& model, const Trajectory& trajectory) {
  EnergyTrace trace;
  trace.times = trajectory.times;
  const auto count = trajectory.times.size();
  trace.energies.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double e = model.energy_norm(Eigen::VectorXd(trajectory.states.col(static_cast<Eigen::Index>(i))));
    trace.energies[i] = e * e;
  }
  if (count == 0) return trace;

  const double floor = 1e-6 * trace.energies.front();
  for (std::size_t i = 1; i < count; ++i) {
    const double scale = kEnergyStepTolerance * std::max(trace.energies[i - 1], floor);
    const double increase = trace.energies[i] - trace.energies[i - 1];
    if (scale > 0.0) trace.worst_increase = std::max(trace.worst_increase, increase / scale);
    if (increase > scale) trace.monotone = false;
  }

  trace.tail_start = trace.times.front() + 0.5 * (trace.times.back() - trace.times.front());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (trace.times[i] < trace.tail_start || !(trace.energies[i] > 0.0)) continue;
    const double y = std::log(trace.energies[i]);
    sx += trace.times[i];
    sy += y;
    sxx += trace.times[i] * trace.times[i];
    sxy += trace.times[i] * y;
    ++n;
  }
  const double denom = n * sxx - sx * sx;
  trace.fitted_rate =
      n >= 2 && denom > 0.0 ? (n * sxy - sx * sy) / denom : std::numeric_limits<double>::quiet_NaN();
  return trace;
}

DerivativeProbe derivative_norm_probe(const ModalModel& model, std::span<const double> t_grid) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1]))) {
      throw std::invalid_argument("derivative_norm_probe: t grid must be positive and increasing");
    }
  }
  const Eigen::MatrixXd& similar = model.generator_energy_coords();
  DerivativeProbe probe;
  probe.samples.resize(t_grid.size());
  detail::parallel_for(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    const double norm = largest_singular_value(similar * (similar * t).exp());
    probe.samples[i] = {t, norm, t * norm};
  });
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& s : probe.samples) {
    probe.sup_scaled = std::max(probe.sup_scaled, s.scaled);
    lo = std::min(lo, s.scaled);
  }
  probe.scaled_spread = probe.samples.empty() ? 0.0 : probe.sup_scaled / lo;
  return probe;
}

double dissipation_rate(const ModalModel& model, const Eigen::VectorXd& state) {
  const int n = model.n_modes();
  const auto& p = model.params();
  const auto alpha = field(state, Field::velocity, n);
  const auto beta = field(state, Field::angular_velocity, n);
  return 2.0 * ((model.basis().power(p.tau).array() * alpha.array().square()).sum() +
                (model.basis().power(p.sigma).array() * beta.array().square()).sum());
}

}  // namespace fracbeam
