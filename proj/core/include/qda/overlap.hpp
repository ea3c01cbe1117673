#pragma once

#include <cstdint>
#include <optional>

#include "qda/simulator.hpp"
#include "qda/state_vector.hpp"

namespace qda {

enum class OverlapMode { swap_test, hadamard_test };

// Label readout used by both classifiers: signed real overlap thresholded at
// zero, or a pair of magnitude-only swap tests against the two whitened
// class-mean states (larger overlap wins).
enum class ReadoutMode { hadamard, two_swap };

struct OverlapResult {
  double score = 0.0;      // |<a|b>| for swap_test, Re<a|b> for hadamard_test
  double p_success = 0.0;  // P(ancilla = 0)
};

// Interference-circuit overlap between two states of equal width. Exact mode
// (shots absent) evaluates the ancilla distribution analytically; shot mode
// draws from it with the given seed. swap_test: P(0) = (1 + |<a|b>|^2)/2.
// hadamard_test: P(0) = (1 + Re<a|b>)/2 via controlled state preparation.
OverlapResult overlap_score(const StateVector& a, const StateVector& b, OverlapMode mode,
                            std::optional<std::uint64_t> shots = std::nullopt,
                            std::uint64_t seed = 0);

// Unitary with U|0...0> = target (target must be unit norm); used for the
// controlled preparations in the Hadamard test.
Eigen::MatrixXcd state_preparation_unitary(const Eigen::VectorXcd& target);

}  // namespace qda
