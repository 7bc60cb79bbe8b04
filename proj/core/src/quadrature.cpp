#include "fracbeam/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracbeam {

namespace {

constexpr std::array<double, 4> kNodes = {0.1834346424956498, 0.5255324099163290,
                                          0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kWeights = {0.3626837833783620, 0.3137066458778873,
                                            0.2223810344533745, 0.1012285362903763};

}  // namespace

double integrate_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                int panels) {
  if (panels < 1) throw std::invalid_argument("integrate_gauss_legendre: panels must be >= 1");
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    const double half = 0.5 * width;
    double sum = 0.0;
    for (std::size_t i = 0; i < kNodes.size(); ++i) {
      sum += kWeights[i] * (f(mid - half * kNodes[i]) + f(mid + half * kNodes[i]));
    }
    total += half * sum;
  }
  return total;
}

double coupling_entry_by_quadrature(int k, int j, double length, int panels) {
  const double scale = 2.0 / length;
  const double wk = k * std::numbers::pi / length;
  const double wj = j * std::numbers::pi / length;
  // e_j'(x) e_k(x) = (2/L) (j pi / L) cos(j pi x / L) sin(k pi x / L)
  return integrate_gauss_legendre(
      [&](double x) { return scale * wj * std::cos(wj * x) * std::sin(wk * x); }, 0.0, length,
      panels);
}

}  // namespace fracbeam
