#include "fracbeam/beam_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracbeam {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(name) + " must be a finite positive number, got " +
                                std::to_string(value));
  }
}

void require_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                std::to_string(value));
  }
}

void require_consistent(const PhysicalParams& params, const ModalBasis& basis,
                        const CouplingMatrix& coupling) {
  const int n = params.n_modes;
  if (basis.size() != n || coupling.g.rows() != n || coupling.g.cols() != n) {
    throw std::invalid_argument("dimension mismatch: n_modes=" + std::to_string(n) +
                                ", basis=" + std::to_string(basis.size()) + ", coupling=" +
                                std::to_string(coupling.g.rows()) + "x" +
                                std::to_string(coupling.g.cols()));
  }
}

}  // namespace

void PhysicalParams::validate() const {
  require_positive(rho1, "rho1");
  require_positive(rho2, "rho2");
  require_positive(kappa, "kappa");
  require_positive(bending, "b");
  require_positive(length, "L");
  require_unit_interval(tau, "tau");
  require_unit_interval(sigma, "sigma");
  if (n_modes < 1) {
    throw std::invalid_argument("n_modes must be >= 1, got " + std::to_string(n_modes));
  }
}

Eigen::VectorXd ModalBasis::power(double theta) const {
  if (theta == 0.0) return Eigen::VectorXd::Ones(mu_.size());
  if (theta == 1.0) return mu_;
  return mu_.array().pow(theta).matrix();
}

ModalBasis build_modal_basis(const PhysicalParams& params) {
  params.validate();
  Eigen::VectorXd mu(params.n_modes);
  for (int k = 1; k <= params.n_modes; ++k) {
    const double root = k * std::numbers::pi / params.length;
    mu(k - 1) = root * root;
  }
  return ModalBasis(std::move(mu));
}

double coupling_entry(int k, int j, double length) {
  if ((k + j) % 2 == 0) return 0.0;
  const double kk = k;
  const double jj = j;
  return 4.0 * kk * jj / (length * (kk * kk - jj * jj));
}

CouplingMatrix build_coupling_matrix(const PhysicalParams& params) {
  params.validate();
  const int n = params.n_modes;
  CouplingMatrix c{Eigen::MatrixXd::Zero(n, n)};
  for (int k = 1; k <= n; ++k) {
    for (int j = 1; j <= n; ++j) {
      c.g(k - 1, j - 1) = coupling_entry(k, j, params.length);
    }
  }
  return c;
}

Eigen::MatrixXd assemble_generator(const PhysicalParams& params, const ModalBasis& basis,
                                   const CouplingMatrix& coupling) {
  require_consistent(params, basis, coupling);
  const int n = params.n_modes;
  const Eigen::VectorXd& mu = basis.eigenvalues();
  const Eigen::MatrixXd& g = coupling.g;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);

  // Block indices: 0 = a (u), 1 = alpha (w), 2 = b (psi), 3 = beta (v).
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  auto blk = [&](int r, int c) { return gen.block(r * n, c * n, n, n); };

  blk(0, 1) = id;
  blk(1, 0) = (-params.kappa / params.rho1) * mu.asDiagonal().toDenseMatrix();
  blk(1, 1) = (-1.0 / params.rho1) * basis.power(params.tau).asDiagonal().toDenseMatrix();
  blk(1, 2) = (params.kappa / params.rho1) * g;
  blk(2, 3) = id;
  blk(3, 0) = (-params.kappa / params.rho2) * g;
  Eigen::MatrixXd stiff = params.bending * mu.asDiagonal().toDenseMatrix();
  stiff.diagonal().array() += params.kappa;
  blk(3, 2) = (-1.0 / params.rho2) * stiff;
  blk(3, 3) = (-1.0 / params.rho2) * basis.power(params.sigma).asDiagonal().toDenseMatrix();
  return gen;
}

Eigen::MatrixXd assemble_energy_matrix(const PhysicalParams& params, const ModalBasis& basis,
                                       const CouplingMatrix& coupling) {
  require_consistent(params, basis, coupling);
  const int n = params.n_modes;
  const Eigen::VectorXd& mu = basis.eigenvalues();
  const Eigen::MatrixXd& g = coupling.g;

  // kappa |u_x + psi|^2 = kappa (a^T D a + 2 b^T G a + b^T b), exact on the span.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  auto blk = [&](int r, int c) { return m.block(r * n, c * n, n, n); };
  blk(0, 0) = params.kappa * mu.asDiagonal().toDenseMatrix();
  blk(1, 1).diagonal().setConstant(params.rho1);
  blk(2, 0) = params.kappa * g;
  blk(0, 2) = params.kappa * g.transpose();
  blk(2, 2) = params.bending * mu.asDiagonal().toDenseMatrix();
  blk(2, 2).diagonal().array() += params.kappa;
  blk(3, 3).diagonal().setConstant(params.rho2);
  return m;
}

Eigen::MatrixXd damping_matrix(const PhysicalParams& params, const ModalBasis& basis) {
  const int n = basis.size();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  d.block(n, n, n, n).diagonal() = basis.power(params.tau);
  d.block(3 * n, 3 * n, n, n).diagonal() = basis.power(params.sigma);
  return d;
}

ModalModel ModalModel::assemble(const PhysicalParams& params) {
  params.validate();
  ModalModel model;
  model.params_ = params;
  model.basis_ = build_modal_basis(params);
  model.coupling_ = build_coupling_matrix(params);
  model.generator_ = assemble_generator(params, model.basis_, model.coupling_);
  model.energy_ = assemble_energy_matrix(params, model.basis_, model.coupling_);

  Eigen::LLT<Eigen::MatrixXd> llt(model.energy_);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("energy matrix lost positive definiteness (Cholesky failed)");
  }
  model.factor_ = llt.matrixU();

  // C B C^{-1}: solve X C = B for X = B C^{-1}, then left-multiply by C.
  const auto upper = model.factor_.triangularView<Eigen::Upper>();
  Eigen::MatrixXd b_cinv = upper.solve<Eigen::OnTheRight>(model.generator_);
  model.similar_generator_ = model.factor_ * b_cinv;
  return model;
}

double ModalModel::energy_norm(const Eigen::VectorXd& x) const {
  return (factor_.triangularView<Eigen::Upper>() * x).norm();
}

double ModalModel::energy_norm(const Eigen::VectorXcd& x) const {
  return to_energy_coords(x).norm();
}

Eigen::VectorXd ModalModel::to_energy_coords(const Eigen::VectorXd& x) const {
  return factor_.triangularView<Eigen::Upper>() * x;
}

Eigen::VectorXcd ModalModel::to_energy_coords(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd y(x.size());
  const auto upper = factor_.triangularView<Eigen::Upper>();
  y.real() = upper * x.real().eval();
  y.imag() = upper * x.imag().eval();
  return y;
}

Eigen::VectorXd ModalModel::from_energy_coords(const Eigen::VectorXd& y) const {
  return factor_.triangularView<Eigen::Upper>().solve(y);
}

Eigen::VectorXcd ModalModel::from_energy_coords(const Eigen::VectorXcd& y) const {
  Eigen::VectorXcd x(y.size());
  const auto upper = factor_.triangularView<Eigen::Upper>();
  x.real() = upper.solve(y.real().eval());
  x.imag() = upper.solve(y.imag().eval());
  return x;
}

}  // namespace fracbeam
