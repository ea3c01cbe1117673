#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>

#include "qda/dataset.hpp"
#include "qda/overlap.hpp"
#include "qda/simulator.hpp"
#include "qda/state_vector.hpp"
#include "qda/whitening.hpp"

namespace qda {

// Block anti-diagonal symmetric embedding [[0, X], [X^T, 0]] of a D x n data
// matrix, zero-padded to the next power of two. Its eigenvalues are the +-
// singular values of X, so phase estimation on exp(i X~ t) resolves the
// spectrum the whitener has to invert.
struct HermitianExtension {
  Eigen::MatrixXd matrix;   // 2^system_qubits square
  Eigen::Index rows = 0;    // D
  Eigen::Index cols = 0;    // n
  int system_qubits = 0;
};

HermitianExtension hermitian_extend(const Eigen::MatrixXd& x);

// Classical SVD of the data matrix; diagnostics and configuration only, never
// substituted for the quantum path.
struct SpectralData {
  Eigen::VectorXd singular_values;  // descending
  Eigen::MatrixXd left_vectors;     // D x r
  Eigen::MatrixXd right_vectors;    // n x r
  Eigen::MatrixXd betas;            // r x n, beta(m, j) = <u_m | x_j>
};

SpectralData compute_spectral_data(const Eigen::MatrixXd& x);

// Register layout, fixed: | clock (clock_bits) | ancilla (1) | system |.
// Per clock step the evolution is exp(i X~ t); a clock value y encodes the
// signed fraction phi = sigma t / (2 pi) in two's complement, so recovery is
// |sigma| = |phi| 2 pi / t.
struct PhaseConfig {
  int clock_bits = 8;
  double evolution_time = 0.0;  // t
  double gamma = 0.0;           // rotation constant, <= sigma_min of retained spectrum
  double postselect_tolerance = 1e-10;

  std::uint64_t clock_values() const { return std::uint64_t(1) << clock_bits; }
  int ancilla_wire() const { return clock_bits; }
  int system_first() const { return clock_bits + 1; }
};

// Derives t and gamma from the exact spectrum: t = 2 pi * headroom / sigma_max
// (headroom < 1/2 keeps +- eigenvalue branches from colliding), gamma =
// gamma_fraction * sigma_min of the retained spectrum (singular values above
// sqrt(eigen_cutoff) * sigma_max, matching the classical whitener's filter).
PhaseConfig make_phase_config(const SpectralData& spectral, int clock_bits,
                              double eigen_cutoff = kDefaultEigenCutoff,
                              double gamma_fraction = 0.9, double phase_headroom = 0.45,
                              double postselect_tolerance = 1e-10);

// Amplitude-encodes a D-vector into the u-side (first D coordinates) of the
// extension register.
StateVector embed_data_state(const HermitianExtension& ext, const Eigen::VectorXd& v);

// |0..0>_clock |0>_ancilla (x) |system>.
StateVector make_pipeline_state(const PhaseConfig& cfg, const StateVector& system_state);

// (QFT^dag (x) I) (sum_tau |tau><tau| (x) exp(i X~ tau t)) (H^c (x) I) on the
// clock + system registers; the ancilla is untouched. Throws on phase
// wraparound (sigma_max * t / 2pi >= 1/2).
StateVector qpe(const HermitianExtension& ext, const StateVector& state, const PhaseConfig& cfg);
StateVector qpe_inverse(const HermitianExtension& ext, const StateVector& state,
                        const PhaseConfig& cfg);

// Ry(2 asin(gamma / |sigma(y)|)) on the ancilla, keyed on each clock value y.
// Clock value 0 and values whose recovered |sigma| falls below gamma are left
// unrotated (filtered); if the filtered values hold the majority of the
// nonzero-clock probability mass the configuration is rejected with
// "gamma exceeds singular value". The ancilla must enter in |0>.
StateVector conditioned_rotation(const StateVector& state, int clock_first, int clock_bits,
                                 const PhaseConfig& cfg);

struct PostselectionResult {
  StateVector state;               // full register, ancilla collapsed to |1>
  double success_probability = 0;  // pre-measurement weight of the |1> branch
};

// Inverse QPE, then projects the ancilla onto |1>. Throws "postselection
// starved" when the success probability is below cfg.postselect_tolerance.
PostselectionResult uncompute_and_postselect(const StateVector& state,
                                             const HermitianExtension& ext,
                                             const PhaseConfig& cfg);

// Whole spectral-inversion chain qpe -> conditioned_rotation ->
// uncompute_and_postselect on a system-register input state.
PostselectionResult apply_u_m(const Eigen::MatrixXd& x, const StateVector& system_input,
                              const PhaseConfig& cfg);

// System-register state conditioned on clock = 0 (the exact-uncompute
// branch); second component is the weight of that branch.
std::pair<StateVector, double> extract_system_state(const PostselectionResult& result,
                                                    const PhaseConfig& cfg);

// Projection of a system-register state onto the feature block (first `dim`
// amplitudes), renormalized into a feature register; second component is the
// projection weight. Lossless in the exact regime since left singular vectors
// live in the feature block.
std::pair<StateVector, double> project_feature_state(const StateVector& system_state,
                                                     Eigen::Index dim);

// Whitened weight state |w> ~ Sigma_s^{-1/2}(mu1 - mu0): the mean difference
// is computed classically, amplitude-encoded, and passed through U_M(X~_s).
PostselectionResult prepare_weight_state(const Dataset& source, const PhaseConfig& cfg);

struct QblasOptions {
  int clock_bits = 8;
  double eigen_cutoff = kDefaultEigenCutoff;
  double gamma_fraction = 0.9;
  double phase_headroom = 0.45;
  double postselect_tolerance = 1e-10;
  ReadoutMode readout = ReadoutMode::hadamard;
  std::optional<std::uint64_t> shots;  // absent = exact probabilities
  std::uint64_t seed = 0;
};

struct QblasSample {
  int index = 0;
  double oracle_score = 0.0;
  int oracle_label = 0;
  double quantum_score = 0.0;
  int quantum_label = 0;
  double fidelity = 0.0;  // whitened state vs classical Sigma_t^{-1/2} x
  double success_probability = 0.0;
};

struct QblasRun {
  std::vector<QblasSample> samples;
  Eigen::VectorXi labels;
  double agreement_rate = 0.0;  // quantum vs classical-oracle labels
  double mean_fidelity = 0.0;
  double weight_fidelity = 0.0;
  double weight_success_probability = 0.0;
};

// Algorithm 1 end to end: weight state from the source domain, per-column
// whitened target states, overlap readout.
QblasRun qblas_classify(const Dataset& source, const Dataset& target, const QblasOptions& options);

}  // namespace qda
