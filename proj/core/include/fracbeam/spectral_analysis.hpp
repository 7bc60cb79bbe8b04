#pragma once

// Spectrum, energy-norm resolvent and the inequality checks that can be
// evaluated on an assembled ModalModel.

#include "fracbeam/beam_model.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracbeam {

struct SpectrumReport {
  std::vector<std::complex<double>> eigenvalues;  ///< sorted by real part, then imaginary part
  double spectral_abscissa = 0.0;
  /// max atan(|Im| / |Re|) over eigenvalues with |Re| >= 1e-12, radians.
  double sector_half_angle = 0.0;
};

SpectrumReport compute_spectrum(const ModalModel& model);
SpectrumReport compute_spectrum(const Eigen::MatrixXd& matrix);

/// Nearest-neighbour matching of each eigenvalue with the conjugate of another.
struct PairingReport {
  double max_distance = 0.0;  ///< worst |conj(l) - partner| / max(1, |l|)
  int ambiguous = 0;          ///< eigenvalues with two candidate partners inside tolerance
  bool passed = false;
};

PairingReport check_conjugate_pairing(std::span<const std::complex<double>> eigenvalues,
                                      double tolerance = 1e-8);

/// Thrown when i*lambda (or lambda) is numerically in the spectrum.
class ResolventError : public std::runtime_error {
 public:
  ResolventError(double lambda, double condition);
  double lambda() const { return lambda_; }
  double condition() const { return condition_; }

 private:
  double lambda_;
  double condition_;
};

inline constexpr double kMaxResolventCondition = 1e14;

/// ||(i lambda I - B_N)^{-1}|| in the operator norm induced by the energy norm.
double resolvent_norm(const ModalModel& model, double lambda);

/// ||(lambda I - B_N)^{-1}|| in the energy operator norm, lambda real.
double real_resolvent_norm(const ModalModel& model, double lambda);

struct ResolventSample {
  double lambda = 0.0;
  double norm = 0.0;
};

struct SweepResult {
  std::vector<ResolventSample> samples;  ///< sorted by lambda
  std::vector<double> failed;            ///< grid points skipped as unresolvable
};

/// Evaluates resolvent_norm on each grid point, possibly concurrently.
/// Throws std::runtime_error if more than 10% of the points fail.
SweepResult resolvent_sweep(const ModalModel& model, std::span<const double> lambda_grid);

/// Log-spaced grid from lo to hi inclusive with the given density per decade.
std::vector<double> log_grid(double lo, double hi, int points_per_decade);

struct FitWindow {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

struct ExponentFit {
  double phi_hat = 0.0;    ///< negated slope of log(norm) against log(lambda)
  double r_squared = 0.0;
  FitWindow window;
  int n_samples = 0;
};

/// Least-squares power-law fit on samples with lambda inside window (inclusive).
ExponentFit fit_decay_exponent(std::span<const ResolventSample> samples, FitWindow window);

/// Default fit window: the top two decades of the sampled range.
FitWindow top_decades_window(std::span<const ResolventSample> samples, double decades = 2.0);

struct HilleYosidaEntry {
  double lambda = 0.0;
  double norm = 0.0;
  double ratio = 0.0;  ///< lambda * norm, must not exceed 1 + 1e-8
};

struct HilleYosidaReport {
  std::vector<HilleYosidaEntry> entries;
  double worst_ratio = 0.0;
  double worst_lambda = 0.0;
  bool passed = false;
};

HilleYosidaReport hille_yosida_check(const ModalModel& model, std::span<const double> lambda_grid);

struct DissipativityReport {
  double relative_residual = 0.0;  ///< ||M B + B^T M + 2 D||_F / ||M B||_F
  double max_symmetric_eigenvalue = 0.0;  ///< of (M B + B^T M) / 2
  double scale = 0.0;                     ///< ||M B||_F
  bool passed = false;
};

DissipativityReport verify_dissipativity(const ModalModel& model);

struct InterpolationReport {
  double max_ratio = 0.0;
  int trials = 0;
  bool passed = false;
};

/// ||A^beta u|| / (||A^alpha u||^{(gamma-beta)/(gamma-alpha)} ||A^gamma u||^{(beta-alpha)/(gamma-alpha)})
double interpolation_ratio(const ModalBasis& basis, const Eigen::VectorXd& u, double alpha,
                           double beta, double gamma);

/// Random trials of the moment inequality with diagonal powers; constant 1.
InterpolationReport verify_interpolation(const ModalBasis& basis, double alpha, double beta,
                                         double gamma, int trial_count, std::uint64_t seed);

/// Per-lambda maxima over random right-hand sides of one empirical ratio.
struct LemmaSeries {
  std::string name;
  std::vector<double> per_lambda_max;
  double overall_max = 0.0;
  double median = 0.0;
  double last_decade_max = 0.0;
  bool non_increasing_tail = false;  ///< over the last decade of the grid
  bool bounded = false;              ///< last_decade_max <= 2 * median
};

struct LemmaReport {
  std::vector<double> lambdas;  ///< grid points that resolved
  std::vector<double> failed;
  std::vector<LemmaSeries> series;
  bool passed = false;
};

inline constexpr double kLemmaDeltaFloor = 1.0;

/// Random F with unit energy norm, U = (i lambda - B)^{-1} F, and the ratios
///   resolvent:  ||U|| / ||F||
///   shear:      |l| P(U) / (|l| K(U) + ||F|| ||U||)   P potential, K kinetic
///   velocity_u: |l| ||w||^2 / (||F|| ||U||)          only when tau >= 1/2
///   velocity_psi: |l| ||v||^2 / (||F|| ||U||)        only when sigma >= 1/2
/// Throws std::invalid_argument if the grid dips below the delta floor.
LemmaReport verify_lemma_estimates(const ModalModel& model, std::span<const double> lambda_grid,
                                   int trials, std::uint64_t seed);

struct StaticSolution {
  Eigen::VectorXd state;
  double bound = 0.0;  ///< ||B_N^{-1}|| in the energy operator norm
  double ratio = 0.0;  ///< ||U||_H / ||F||_H, zero when F = 0
};

/// U = B_N^{-1} F. Throws std::runtime_error if B_N is singular.
StaticSolution static_solve(const ModalModel& model, const Eigen::VectorXd& rhs);

}  // namespace fracbeam
