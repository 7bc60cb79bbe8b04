#pragma once

// Modal (sine-basis) Galerkin model of the Timoshenko beam with fractional
// damping terms A^tau u_t and A^sigma psi_t, A = -d^2/dx^2 with Dirichlet
// conditions on (0, L).

#include <Eigen/Dense>

#include <numbers>
#include <string>
#include <vector>

namespace fracbeam {

/// Physical coefficients, damping exponents and modal truncation level.
struct PhysicalParams {
  double rho1 = 1.0;     ///< rho * area
  double rho2 = 1.0;     ///< rho * moment of inertia
  double kappa = 1.0;    ///< shear stiffness k A G
  double bending = 1.0;  ///< bending stiffness E I
  double length = std::numbers::pi;
  double tau = 1.0;      ///< damping exponent on u_t, in [0, 1]
  double sigma = 1.0;    ///< damping exponent on psi_t, in [0, 1]
  int n_modes = 64;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

/// Eigenvalues mu_k = (k pi / L)^2 of the Dirichlet Laplacian, k = 1..N.
class ModalBasis {
 public:
  ModalBasis() = default;
  explicit ModalBasis(Eigen::VectorXd mu) : mu_(std::move(mu)) {}

  int size() const { return static_cast<int>(mu_.size()); }
  const Eigen::VectorXd& eigenvalues() const { return mu_; }

  /// Diagonal of A^theta, i.e. mu_k^theta.
  Eigen::VectorXd power(double theta) const;

 private:
  Eigen::VectorXd mu_;
};

/// G(k, j) = <e_j', e_k> for the orthonormal sines e_m = sqrt(2/L) sin(m pi x / L).
/// Zero when k + j is even, 4kj / (L (k^2 - j^2)) otherwise; skew-symmetric.
struct CouplingMatrix {
  Eigen::MatrixXd g;
};

/// Fields of the state U = (u, w, psi, v) in storage order.
enum class Field { displacement = 0, velocity = 1, rotation = 2, angular_velocity = 3 };

/// Real or complex state of length 4N, blocks ordered as Field.
template <typename Vector>
auto field(Vector&& x, Field f, int n_modes) {
  return x.segment(static_cast<int>(f) * n_modes, n_modes);
}

ModalBasis build_modal_basis(const PhysicalParams& params);
CouplingMatrix build_coupling_matrix(const PhysicalParams& params);

/// Single entry of the coupling matrix, 1-based mode indices.
double coupling_entry(int k, int j, double length);

Eigen::MatrixXd assemble_generator(const PhysicalParams& params, const ModalBasis& basis,
                                   const CouplingMatrix& coupling);
Eigen::MatrixXd assemble_energy_matrix(const PhysicalParams& params, const ModalBasis& basis,
                                       const CouplingMatrix& coupling);

/// blockdiag(0, diag(mu^tau), 0, diag(mu^sigma)).
Eigen::MatrixXd damping_matrix(const PhysicalParams& params, const ModalBasis& basis);

/// Immutable assembled model. Holds the generator B_N, the energy Gram matrix
/// M and its upper triangular factor C with M = C^T C, so that ||X||_H = |C X|.
class ModalModel {
 public:
  /// Assembles and validates; throws std::runtime_error if M is not positive definite.
  static ModalModel assemble(const PhysicalParams& params);

  const PhysicalParams& params() const { return params_; }
  const ModalBasis& basis() const { return basis_; }
  const CouplingMatrix& coupling() const { return coupling_; }
  const Eigen::MatrixXd& generator() const { return generator_; }
  const Eigen::MatrixXd& energy() const { return energy_; }
  const Eigen::MatrixXd& energy_factor() const { return factor_; }

  /// C B_N C^{-1}: the generator in energy-orthonormal coordinates. Its
  /// Euclidean operator norms equal M-norms of the original operator.
  const Eigen::MatrixXd& generator_energy_coords() const { return similar_generator_; }

  int n_modes() const { return params_.n_modes; }
  int dimension() const { return 4 * params_.n_modes; }

  double energy_norm(const Eigen::VectorXd& x) const;
  double energy_norm(const Eigen::VectorXcd& x) const;

  /// C X and C^{-1} Y.
  Eigen::VectorXd to_energy_coords(const Eigen::VectorXd& x) const;
  Eigen::VectorXcd to_energy_coords(const Eigen::VectorXcd& x) const;
  Eigen::VectorXd from_energy_coords(const Eigen::VectorXd& y) const;
  Eigen::VectorXcd from_energy_coords(const Eigen::VectorXcd& y) const;

 private:
  PhysicalParams params_;
  ModalBasis basis_;
  CouplingMatrix coupling_;
  Eigen::MatrixXd generator_;
  Eigen::MatrixXd energy_;
  Eigen::MatrixXd factor_;
  Eigen::MatrixXd similar_generator_;
};

}  // namespace fracbeam
