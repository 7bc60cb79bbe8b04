#include "fracbeam/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace fracbeam {

Eigen::MatrixXd FdModel::fractional_power(double theta) const {
  if (theta == 0.0) return Eigen::MatrixXd::Identity(n_grid, n_grid);
  const Eigen::VectorXd scaled = eigenvalues.array().pow(theta).matrix();
  return sine_vectors * scaled.asDiagonal() * sine_vectors.transpose();
}

FdModel assemble_fd_generator(const PhysicalParams& params, int n_grid) {
  if (n_grid < 3) {
    throw std::invalid_argument("n_grid must be >= 3, got " + std::to_string(n_grid));
  }
  PhysicalParams checked = params;
  checked.n_modes = 1;
  checked.validate();

  const int n = n_grid;
  FdModel fd;
  fd.n_grid = n;
  fd.h = params.length / (n + 1);
  const double h = fd.h;
  const double inv_h2 = 1.0 / (h * h);

  fd.laplacian = Eigen::MatrixXd::Zero(n, n);
  fd.derivative = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    fd.laplacian(i, i) = 2.0 * inv_h2;
    if (i > 0) {
      fd.laplacian(i, i - 1) = -inv_h2;
      fd.derivative(i, i - 1) = -0.5 / h;
    }
    if (i + 1 < n) {
      fd.laplacian(i, i + 1) = -inv_h2;
      fd.derivative(i, i + 1) = 0.5 / h;
    }
  }

  fd.eigenvalues.resize(n);
  fd.sine_vectors.resize(n, n);
  const double norm = std::sqrt(2.0 / (n + 1));
  for (int k = 1; k <= n; ++k) {
    const double s = std::sin(k * std::numbers::pi / (2.0 * (n + 1)));
    fd.eigenvalues(k - 1) = 4.0 * inv_h2 * s * s;
    for (int i = 1; i <= n; ++i) {
      fd.sine_vectors(i - 1, k - 1) = norm * std::sin(static_cast<double>(i) * k * std::numbers::pi / (n + 1));
    }
  }

  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd damp_u = fd.fractional_power(params.tau);
  const Eigen::MatrixXd damp_psi = fd.fractional_power(params.sigma);
  const Eigen::MatrixXd& lap = fd.laplacian;
  const Eigen::MatrixXd& dx = fd.derivative;

  fd.generator = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  auto gen = [&](int r, int c) { return fd.generator.block(r * n, c * n, n, n); };
  gen(0, 1) = id;
  gen(1, 0) = (-params.kappa / params.rho1) * lap;
  gen(1, 1) = (-1.0 / params.rho1) * damp_u;
  gen(1, 2) = (params.kappa / params.rho1) * dx;
  gen(2, 3) = id;
  gen(3, 0) = (-params.kappa / params.rho2) * dx;
  gen(3, 2) = (-1.0 / params.rho2) * (params.bending * lap + params.kappa * id);
  gen(3, 3) = (-1.0 / params.rho2) * damp_psi;

  // h [rho1 |w|^2 + rho2 |v|^2 + kappa |D u + psi|^2 + b psi^T A_h psi]
  fd.energy = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  auto en = [&](int r, int c) { return fd.energy.block(r * n, c * n, n, n); };
  const Eigen::MatrixXd dtd = dx.transpose() * dx;
  en(0, 0) = h * params.kappa * dtd;
  en(0, 2) = h * params.kappa * dx.transpose();
  en(2, 0) = h * params.kappa * dx;
  en(2, 2) = h * (params.kappa * id + params.bending * lap);
  en(1, 1) = h * params.rho1 * id;
  en(3, 3) = h * params.rho2 * id;
  return fd;
}

std::vector<std::complex<double>> smallest_eigenvalues(const Eigen::MatrixXd& matrix, int count) {
  const int dim = static_cast<int>(matrix.rows());
  if (matrix.cols() != dim || count < 1 || count > dim) {
    throw std::invalid_argument("smallest_eigenvalues: bad matrix shape or count");
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(matrix);
  const int max_dim = std::min(dim, std::max(8 * count + 40, 400));
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(dim, max_dim + 1);
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(max_dim + 1, max_dim);

  std::mt19937_64 rng(20231028);
  std::normal_distribution<double> normal;
  Eigen::VectorXd start(dim);
  for (int i = 0; i < dim; ++i) start(i) = normal(rng);
  basis.col(0) = start.normalized();

  const int wanted = std::min(count + 2, dim);
  int next_check = std::min(max_dim, 4 * count + 20);
  int built = 0;
  for (int j = 0; j < max_dim; ++j) {
    Eigen::VectorXd w = lu.solve(basis.col(j));
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i <= j; ++i) {
        const double c = basis.col(i).dot(w);
        hess(i, j) += c;
        w -= c * basis.col(i);
      }
    }
    const double beta = w.norm();
    hess(j + 1, j) = beta;
    built = j + 1;
    const bool breakdown = beta < 1e-14 * hess.col(j).head(j + 1).norm();
    if (!breakdown) basis.col(j + 1) = w / beta;

    if (built < wanted || (built != next_check && !breakdown && built != max_dim)) continue;

    Eigen::EigenSolver<Eigen::MatrixXd> es(hess.topLeftCorner(built, built));
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("smallest_eigenvalues: Hessenberg eigensolver failed");
    }
    const Eigen::VectorXcd ritz = es.eigenvalues();
    const Eigen::MatrixXcd vecs = es.eigenvectors();
    std::vector<int> order(built);
    for (int i = 0; i < built; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(ritz(a)) > std::abs(ritz(b)); });

    bool converged = true;
    for (int r = 0; r < std::min(wanted, built); ++r) {
      const int i = order[r];
      const double resid = breakdown ? 0.0 : beta * std::abs(vecs(built - 1, i)) / vecs.col(i).norm();
      if (resid > 1e-11 * std::abs(ritz(i))) converged = false;
    }
    if (converged || breakdown || built == max_dim) {
      if (!converged && !breakdown) {
        throw std::runtime_error("smallest_eigenvalues: Arnoldi did not converge in " +
                                 std::to_string(max_dim) + " steps");
      }
      std::vector<std::complex<double>> out;
      for (int r = 0; r < std::min(count, built); ++r) out.push_back(1.0 / ritz(order[r]));
      std::sort(out.begin(), out.end(), [](auto a, auto b) { return std::abs(a) < std::abs(b); });
      return out;
    }
    next_check = std::min(max_dim, built + 40);
  }
  throw std::runtime_error("smallest_eigenvalues: unreachable");
}

}  // namespace fracbeam
