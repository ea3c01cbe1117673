#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qda/gates.hpp"
#include "qda/state_vector.hpp"

namespace qda {

// Applies a gate / circuit and returns the new state; inputs are never
// mutated, so states can be shared freely across threads.
StateVector apply(const StateVector& state, const Gate& gate);
StateVector apply(const StateVector& state, const Circuit& circuit);

// Discrete Fourier transform on a contiguous register [first, first+count),
// big-endian within the register.
StateVector apply_qft(const StateVector& state, int first, int count, bool inverse);

// Reduced density matrix over `keep` (wire indices, any order; rows/columns of
// the result follow ascending wire order).
DensityMatrix partial_trace(const StateVector& state, const std::vector<int>& keep);

// <psi|O|psi> for Hermitian O over the full register. Throws if O is not
// Hermitian within 1e-10.
double expectation(const StateVector& state, const Eigen::MatrixXcd& observable);

// Born-rule sample counts for the register [first, first+count); entry k of
// the result is the number of shots that landed on register value k.
// Deterministic given the seed.
std::vector<std::uint64_t> sample_shots(const StateVector& state, int first, int count,
                                        std::uint64_t shots, std::uint64_t seed);

// Exact marginal probabilities of the register [first, first+count).
std::vector<double> register_probabilities(const StateVector& state, int first, int count);

// Projects the register [first, first+count) onto `value` and renormalizes,
// keeping the full register width. Returns the state and the kept probability
// mass. Throws if the mass is zero.
std::pair<StateVector, double> project_register(const StateVector& state, int first, int count,
                                                std::uint64_t value);

// Same projection, but the measured wires are removed from the result.
std::pair<StateVector, double> condition_on(const StateVector& state, int first, int count,
                                            std::uint64_t value);

}  // namespace qda
