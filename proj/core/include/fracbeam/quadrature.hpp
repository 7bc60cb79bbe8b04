#pragma once

#include <functional>

namespace fracbeam {

/// Composite 8-point Gauss-Legendre rule on `panels` equal subintervals.
double integrate_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                int panels);

/// <e_j', e_k> on (0, L) by quadrature; reference value for coupling_entry.
double coupling_entry_by_quadrature(int k, int j, double length, int panels = 64);

}  // namespace fracbeam
