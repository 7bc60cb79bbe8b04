#pragma once

// Second-order finite-difference discretization of the same beam system on a
// uniform interior grid. Used only to cross-check modal eigenvalues; its
// centered first derivative does not make the generator exactly dissipative.

#include "fracbeam/beam_model.hpp"

#include <complex>
#include <vector>

namespace fracbeam {

struct FdModel {
  int n_grid = 0;
  double h = 0.0;
  Eigen::MatrixXd laplacian;   ///< A_h = tridiag(-1, 2, -1) / h^2
  Eigen::MatrixXd derivative;  ///< centered D_h with zero Dirichlet extension
  Eigen::MatrixXd sine_vectors;   ///< orthonormal eigenvectors of A_h, column k-1 for mode k
  Eigen::VectorXd eigenvalues;    ///< (4/h^2) sin^2(k pi / (2(n+1)))
  Eigen::MatrixXd generator;   ///< 4n x 4n, same block order as the modal state
  Eigen::MatrixXd energy;      ///< 4n x 4n grid energy Gram matrix

  /// A_h^theta = V diag(mu^theta) V^T.
  Eigen::MatrixXd fractional_power(double theta) const;
};

/// Throws std::invalid_argument for n_grid < 3. params.n_modes is ignored.
FdModel assemble_fd_generator(const PhysicalParams& params, int n_grid);

/// The `count` eigenvalues of smallest modulus of a real nonsingular matrix,
/// by shift-invert Arnoldi at the origin. Sorted by modulus.
std::vector<std::complex<double>> smallest_eigenvalues(const Eigen::MatrixXd& matrix, int count);

}  // namespace fracbeam
