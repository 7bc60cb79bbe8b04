#pragma once

// Exact propagation X(t) = exp(B_N t) X0 and energy bookkeeping.

#include "fracbeam/beam_model.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace fracbeam {

enum class PropagationMethod {
  automatic,          ///< matrix exponential
  matrix_exponential, ///< scaling and squaring (Pade), one exponential per distinct step
  eigendecomposition, ///< V exp(Lambda t) V^{-1}; rejected when cond(V) > 1e8
};

std::string_view to_string(PropagationMethod method);

struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd states;  ///< column i is X(times[i])
  PropagationMethod method = PropagationMethod::matrix_exponential;
};

/// Throws std::invalid_argument for unsorted or negative times and
/// std::runtime_error on non-finite output.
Trajectory propagate(const ModalModel& model, const Eigen::VectorXd& initial,
                     std::span<const double> times,
                     PropagationMethod method = PropagationMethod::automatic);

struct EnergyTrace {
  std::vector<double> times;
  std::vector<double> energies;
  /// Least-squares slope of log E over samples with t >= tail_start.
  double fitted_rate = 0.0;
  double tail_start = 0.0;
  /// Largest step increase E(t_{i+1}) - E(t_i) relative to the tolerance scale.
  double worst_increase = 0.0;
  bool monotone = true;
};

inline constexpr double kEnergyStepTolerance = 1e-9;

/// E(t_i) = X^T M X. Non-increase is checked against
/// 1e-9 * max(E(t_i), 1e-6 * E(t_0)) per step, the floor absorbing roundoff
/// once the energy has dropped by several orders of magnitude.
EnergyTrace energy_trace(const ModalModel& model, const Trajectory& trajectory);

/// exp(B_N t) as a dense matrix.
Eigen::MatrixXd propagator(const ModalModel& model, double t);

/// ||exp(B_N t)|| in the energy operator norm.
double propagator_norm(const ModalModel& model, double t);

struct DerivativeSample {
  double t = 0.0;
  double norm = 0.0;  ///< ||B_N exp(B_N t)|| in the energy operator norm
  double scaled = 0.0;  ///< t * norm
};

struct DerivativeProbe {
  std::vector<DerivativeSample> samples;
  double sup_scaled = 0.0;
  double scaled_spread = 0.0;  ///< max(t * norm) / min(t * norm) over the grid
};

DerivativeProbe derivative_norm_probe(const ModalModel& model, std::span<const double> t_grid);

/// 2 sum mu^tau alpha^2 + 2 sum mu^sigma beta^2, the instantaneous energy loss rate.
double dissipation_rate(const ModalModel& model, const Eigen::VectorXd& state);

}  // namespace fracbeam
