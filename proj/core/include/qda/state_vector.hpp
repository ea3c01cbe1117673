#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qda {

using Complex = std::complex<double>;

// Hard simulator ceiling: 2^20 complex amplitudes (16 MB).
inline constexpr int kMaxQubits = 20;
inline constexpr double kNormTolerance = 1e-10;

// Exact complex statevector over q qubits, big-endian: qubit 0 is the most
// significant bit of a basis-state index. This convention is fixed
// project-wide.
class StateVector {
 public:
  // |0...0> on num_qubits wires.
  explicit StateVector(int num_qubits);

  // Takes ownership of a full amplitude vector (length must be a power of
  // two); throws unless the norm is 1 within kNormTolerance.
  static StateVector from_amplitudes(std::vector<Complex> amps);
  static StateVector from_amplitudes(const Eigen::VectorXcd& amps);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }

  const std::vector<Complex>& amplitudes() const { return amps_; }
  std::vector<Complex>& amplitudes() { return amps_; }
  Complex amplitude(std::size_t basis_index) const { return amps_[basis_index]; }

  double norm() const;
  // Probability of each basis state.
  std::vector<double> probabilities() const;

  // <this|other>.
  Complex inner_product(const StateVector& other) const;
  // |<this|other>|^2.
  double fidelity(const StateVector& other) const;

  Eigen::VectorXcd to_eigen() const;

 private:
  StateVector() = default;
  std::vector<Complex> amps_;
  int num_qubits_ = 0;
};

// Density matrix over q qubits; Hermitian, trace 1, PSD.
struct DensityMatrix {
  Eigen::MatrixXcd matrix;
  int num_qubits = 0;

  // Throws if the invariants are violated beyond tolerance.
  void validate(double tol = kNormTolerance) const;
  Eigen::VectorXd eigenvalues_descending() const;
};

// Normalized amplitude encoding: v is padded with zeros to 2^qubits and scaled
// to unit norm. Throws on a zero vector or if v does not fit.
StateVector amplitude_encode_complex(const Eigen::VectorXcd& v, int qubits);

template <typename Derived>
StateVector amplitude_encode(const Eigen::MatrixBase<Derived>& v, int qubits) {
  return amplitude_encode_complex(v.template cast<Complex>(), qubits);
}

// Smallest q with 2^q >= n (at least 1).
int qubits_for_dimension(Eigen::Index n);

}  // namespace qda
