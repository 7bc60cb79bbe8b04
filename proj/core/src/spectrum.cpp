#include "fracbeam/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracbeam {

SpectrumReport compute_spectrum(const Eigen::MatrixXd& matrix) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(matrix, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver did not converge on a " +
                             std::to_string(matrix.rows()) + "x" +
                             std::to_string(matrix.cols()) + " generator");
  }
  SpectrumReport report;
  const Eigen::VectorXcd& values = solver.eigenvalues();
  report.eigenvalues.assign(values.data(), values.data() + values.size());
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  report.spectral_abscissa = -std::numeric_limits<double>::infinity();
  for (const auto& l : report.eigenvalues) {
    report.spectral_abscissa = std::max(report.spectral_abscissa, l.real());
    if (std::abs(l.real()) >= 1e-12) {
      report.sector_half_angle =
          std::max(report.sector_half_angle, std::atan(std::abs(l.imag()) / std::abs(l.real())));
    }
  }
  return report;
}

SpectrumReport compute_spectrum(const ModalModel& model) {
  return compute_spectrum(model.generator());
}

PairingReport check_conjugate_pairing(std::span<const std::complex<double>> eigenvalues,
                                      double tolerance) {
  PairingReport report;
  for (const auto& l : eigenvalues) {
    const auto target = std::conj(l);
    const double tol = tolerance * std::max(1.0, std::abs(l));
    double best = std::numeric_limits<double>::infinity();
    int within = 0;
    for (const auto& m : eigenvalues) {
      const double d = std::abs(m - target);
      best = std::min(best, d);
      if (d <= tol) ++within;
    }
    report.max_distance = std::max(report.max_distance, best / std::max(1.0, std::abs(l)));
    if (within > 1) ++report.ambiguous;
  }
  report.passed = report.max_distance <= tolerance;
  return report;
}

}  // namespace fracbeam
