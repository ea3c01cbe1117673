#include "qda/state_vector.hpp"

#include <cmath>
#include <stdexcept>

namespace qda {

namespace {
int qubits_for_length(std::size_t len) {
  if (len < 2) throw std::invalid_argument("amplitude vector too short");
  int q = 0;
  std::size_t d = 1;
  while (d < len) {
    d <<= 1;
    ++q;
  }
  if (d != len) throw std::invalid_argument("amplitude vector length is not a power of two");
  if (q > kMaxQubits) throw std::invalid_argument("exceeds simulator cap of 20 qubits");
  return q;
}
}  // namespace

StateVector::StateVector(int num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("need at least one qubit");
  if (num_qubits > kMaxQubits) throw std::invalid_argument("exceeds simulator cap of 20 qubits");
  num_qubits_ = num_qubits;
  amps_.assign(std::size_t(1) << num_qubits, Complex(0.0, 0.0));
  amps_[0] = Complex(1.0, 0.0);
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amps) {
  StateVector sv;
  sv.num_qubits_ = qubits_for_length(amps.size());
  sv.amps_ = std::move(amps);
  if (std::abs(sv.norm() - 1.0) > kNormTolerance)
    throw std::invalid_argument("state vector is not normalized");
  return sv;
}

StateVector StateVector::from_amplitudes(const Eigen::VectorXcd& amps) {
  return from_amplitudes(std::vector<Complex>(amps.data(), amps.data() + amps.size()));
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

Complex StateVector::inner_product(const StateVector& other) const {
  if (other.num_qubits_ != num_qubits_) throw std::invalid_argument("qubit counts differ");
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < amps_.size(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
  return acc;
}

double StateVector::fidelity(const StateVector& other) const {
  return std::norm(inner_product(other));
}

Eigen::VectorXcd StateVector::to_eigen() const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(amps_.size()));
  for (std::size_t i = 0; i < amps_.size(); ++i) v[static_cast<Eigen::Index>(i)] = amps_[i];
  return v;
}

void DensityMatrix::validate(double tol) const {
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("density matrix not square");
  if (matrix.rows() != Eigen::Index(1) << num_qubits)
    throw std::invalid_argument("density matrix dimension mismatch");
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("density matrix not Hermitian");
  if (std::abs(matrix.trace().real() - 1.0) > tol || std::abs(matrix.trace().imag()) > tol)
    throw std::invalid_argument("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw std::invalid_argument("density matrix not positive semidefinite");
}

Eigen::VectorXd DensityMatrix::eigenvalues_descending() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix, Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

StateVector amplitude_encode_complex(const Eigen::VectorXcd& v, int qubits) {
  if (qubits < 1 || qubits > kMaxQubits) throw std::invalid_argument("bad qubit count");
  const std::size_t dim = std::size_t(1) << qubits;
  if (static_cast<std::size_t>(v.size()) > dim)
    throw std::invalid_argument("vector does not fit the register");
  double n = v.norm();
  if (n <= 0.0) throw std::invalid_argument("zero vector");
  std::vector<Complex> amps(dim, Complex(0.0, 0.0));
  for (Eigen::Index i = 0; i < v.size(); ++i) amps[static_cast<std::size_t>(i)] = v[i] / n;
  return StateVector::from_amplitudes(std::move(amps));
}

int qubits_for_dimension(Eigen::Index n) {
  int q = 1;
  while ((Eigen::Index(1) << q) < n) ++q;
  return q;
}

}  // namespace qda
