#include "fracbeam/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>

namespace fracbeam {

ExponentFit fit_decay_exponent(std::span<const ResolventSample> samples, FitWindow window) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& s : samples) {
    if (s.lambda >= window.lambda_min && s.lambda <= window.lambda_max) {
      if (!(s.lambda > 0.0) || !(s.norm > 0.0)) {
        throw std::invalid_argument("fit_decay_exponent: samples must have positive lambda and norm");
      }
      xs.push_back(std::log(s.lambda));
      ys.push_back(std::log(s.norm));
    }
  }
  const int n = static_cast<int>(xs.size());
  if (n < 3) {
    throw std::invalid_argument("fit_decay_exponent: need at least 3 samples in window, got " +
                                std::to_string(n));
  }

  double mean_x = 0.0;
  double mean_y = 0.0;
  for (int i = 0; i < n; ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_decay_exponent: degenerate window, all lambda equal");

  const double slope = sxy / sxx;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[i] - (mean_y + slope * (xs[i] - mean_x));
    ss_res += r * r;
  }

  ExponentFit fit;
  fit.phi_hat = -slope;
  // A flat series is fit exactly by slope zero.
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.window = window;
  fit.n_samples = n;
  return fit;
}

FitWindow top_decades_window(std::span<const ResolventSample> samples, double decades) {
  if (samples.empty()) throw std::invalid_argument("top_decades_window: no samples");
  double hi = samples.front().lambda;
  double lo = hi;
  for (const auto& s : samples) {
    hi = std::max(hi, s.lambda);
    lo = std::min(lo, s.lambda);
  }
  return {std::max(lo, hi * std::pow(10.0, -decades)) * (1.0 - 1e-12), hi};
}

}  // namespace fracbeam
