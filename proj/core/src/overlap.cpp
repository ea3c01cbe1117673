#include "qda/overlap.hpp"

#include <cmath>
#include <stdexcept>

namespace qda {

namespace {
StateVector product_state(const StateVector& anc_zero_a, const StateVector& b) {
  // kron(|0>, a, b) with the ancilla as wire 0.
  const std::size_t da = anc_zero_a.dim(), db = b.dim();
  std::vector<Complex> amps(2 * da * db, Complex(0, 0));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      amps[i * db + j] = anc_zero_a.amplitude(i) * b.amplitude(j);
  return StateVector::from_amplitudes(std::move(amps));
}

double ancilla_zero_probability(const StateVector& state,
                                const std::optional<std::uint64_t>& shots, std::uint64_t seed) {
  if (!shots) return register_probabilities(state, 0, 1)[0];
  const auto counts = sample_shots(state, 0, 1, *shots, seed);
  return double(counts[0]) / double(*shots);
}
}  // namespace

Eigen::MatrixXcd state_preparation_unitary(const Eigen::VectorXcd& target) {
  if (std::abs(target.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("preparation target must be unit norm");
  Eigen::MatrixXcd col = target;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(col);
  Eigen::MatrixXcd q = qr.householderQ();
  // Q e0 = target / r00 with |r00| = 1; absorb the phase so U e0 = target.
  const Complex r00 = qr.matrixQR()(0, 0);
  q.col(0) *= r00;
  return q;
}

OverlapResult overlap_score(const StateVector& a, const StateVector& b, OverlapMode mode,
                            std::optional<std::uint64_t> shots, std::uint64_t seed) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("mismatched registers");
  const int k = a.num_qubits();

  OverlapResult result;
  if (mode == OverlapMode::swap_test) {
    StateVector state = product_state(a, b);
    Circuit circ(1 + 2 * k);
    circ.add(Gate::h(0));
    for (int i = 0; i < k; ++i) circ.add(Gate::swap(1 + i, 1 + k + i, {0}));
    circ.add(Gate::h(0));
    state = apply(state, circ);
    const double p0 = ancilla_zero_probability(state, shots, seed);
    result.p_success = p0;
    result.score = std::sqrt(std::max(0.0, 2.0 * p0 - 1.0));
  } else {
    std::vector<int> system(k);
    for (int i = 0; i < k; ++i) system[i] = 1 + i;
    const Eigen::MatrixXcd ua = state_preparation_unitary(a.to_eigen());
    const Eigen::MatrixXcd ub = state_preparation_unitary(b.to_eigen());

    StateVector state(1 + k);
    Circuit circ(1 + k);
    circ.add(Gate::h(0));
    circ.add(Gate::x(0));
    circ.add(Gate::controlled_unitary(ua, system, {0}));
    circ.add(Gate::x(0));
    circ.add(Gate::controlled_unitary(ub, system, {0}));
    circ.add(Gate::h(0));
    state = apply(state, circ);
    const double p0 = ancilla_zero_probability(state, shots, seed);
    result.p_success = p0;
    result.score = 2.0 * p0 - 1.0;
  }
  return result;
}

}  // namespace qda
