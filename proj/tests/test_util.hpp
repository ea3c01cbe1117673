#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qda/rng.hpp"
#include "qda/state_vector.hpp"

namespace qda::test {

inline Eigen::VectorXd random_unit_vector(Rng& rng, Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal();
  return v.normalized();
}

inline StateVector random_state(Rng& rng, int qubits) {
  const std::size_t dim = std::size_t(1) << qubits;
  std::vector<Complex> amps(dim);
  double norm2 = 0.0;
  for (auto& a : amps) {
    a = Complex(rng.normal(), rng.normal());
    norm2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= inv;
  return StateVector::from_amplitudes(std::move(amps));
}

inline Eigen::MatrixXd random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

// Random orthogonal matrix via QR of a Gaussian matrix.
inline Eigen::MatrixXd random_orthogonal(Rng& rng, Eigen::Index n) {
  const Eigen::MatrixXd g = random_matrix(rng, n, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  return q;
}

// Random density matrix rho = A A^dag / tr(A A^dag), complex Wishart.
inline DensityMatrix random_density_matrix(Rng& rng, int qubits) {
  const Eigen::Index dim = Eigen::Index(1) << qubits;
  Eigen::MatrixXcd a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix{std::move(rho), qubits};
}

// Data matrix with prescribed singular values: X = U diag(sigma) V^T.
inline Eigen::MatrixXd matrix_with_spectrum(Rng& rng, const Eigen::VectorXd& sigma,
                                            Eigen::Index cols) {
  const Eigen::Index d = sigma.size();
  const Eigen::MatrixXd u = random_orthogonal(rng, d);
  const Eigen::MatrixXd v = random_orthogonal(rng, cols).leftCols(d);
  return u * sigma.asDiagonal() * v.transpose();
}

}  // namespace qda::test
