#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qda/dataset.hpp"
#include "qda/overlap.hpp"
#include "qda/simulator.hpp"
#include "qda/state_vector.hpp"
#include "qda/whitening.hpp"

namespace qda {

// Hardware-efficient ansatz: per layer, Ry and Rz on every qubit followed by a
// CZ ring (a single CZ for two qubits, none for one). Parameter count is
// 2 * num_qubits * layers.
struct Ansatz {
  int num_qubits = 1;
  int layers = 1;
  Eigen::VectorXd params;

  static Ansatz create(int num_qubits, int layers);
  int param_count() const { return 2 * num_qubits * layers; }

  Circuit circuit(const Eigen::VectorXd& p) const;
  Circuit circuit() const { return circuit(params); }
  // Dense U(p), built by running the circuit on every basis state.
  Eigen::MatrixXcd unitary(const Eigen::VectorXd& p) const;
  StateVector prepare(const Eigen::VectorXd& p) const;
};

// Diagonal training Hamiltonian with non-negative, strictly increasing
// entries; eigenvalue estimates pair against it in opposite order.
struct HamiltonianSpec {
  Eigen::VectorXd diagonal;

  void validate() const;
  Eigen::MatrixXcd matrix() const;
  // Entries (0, 1, ..., N-1)/(N-1).
  static HamiltonianSpec default_for(int num_qubits);
};

enum class OptimizerMethod { gradient_descent, spsa };

struct OptimizerConfig {
  OptimizerMethod method = OptimizerMethod::gradient_descent;
  double learning_rate = 0.1;
  int max_iters = 2000;
  int restarts = 5;
  std::uint64_t seed = 0;
  double convergence_tol = 1e-8;  // cost improvement over the window below
  int convergence_window = 50;
};

// C = Tr(U(theta) rho U(theta)^dag H), evaluated exactly.
double vqsd_cost(const DensityMatrix& rho, const Ansatz& ansatz, const HamiltonianSpec& h);

struct VqsdResult {
  Ansatz ansatz;  // carries the optimal parameters
  Eigen::VectorXd optimal_params;
  Eigen::VectorXd eigenvalues;     // diagonal of rho~ in H-pairing order
  std::vector<double> cost_trace;  // accepted steps of the best restart
  double residual = 0.0;           // off-diagonal Frobenius mass of rho~
  bool converged = false;          // residual below kVqsdResidualTolerance
};

inline constexpr double kVqsdResidualTolerance = 1e-2;

VqsdResult vqsd_diagonalize(const DensityMatrix& rho, const Ansatz& shape,
                            const HamiltonianSpec& h, const OptimizerConfig& opt);

// Sigma^power = U^dag diag(lambda^power) U in the learned eigenbasis; for
// power -1/2, eigenvalues below cutoff * lambda_max map to zero. power must be
// +1/2 or -1/2.
Eigen::MatrixXd build_sigma_power(const VqsdResult& result, double power,
                                  double cutoff = kDefaultEigenCutoff);

// L = 1 - (1/n) sum_j |<x_j| A |cand>| / sqrt(<cand| A^T A |cand>) with
// A = sigma_half; single-column version is the j-th summand.
double vqls_cost(const std::vector<Eigen::VectorXd>& target_cols,
                 const Eigen::MatrixXd& sigma_half, const StateVector& candidate);
double vqls_cost_single(const Eigen::VectorXd& x, const Eigen::MatrixXd& sigma_half,
                        const StateVector& candidate);

struct VqlsResult {
  Ansatz ansatz;
  Eigen::VectorXd optimal_params;
  StateVector solution_state{1};  // phase-fixed so <x|A|solution> is real positive
  double final_cost = 1.0;
  std::optional<double> fidelity_vs_oracle;
  std::vector<double> cost_trace;
  bool converged = false;  // final cost below kVqlsCostTolerance
};

inline constexpr double kVqlsCostTolerance = 1e-4;

VqlsResult vqls_solve(const Eigen::VectorXd& x, const Eigen::MatrixXd& sigma_half,
                      const Ansatz& shape, const OptimizerConfig& opt);

// Two-point rule dC/dtheta_k = [C(+shift) - C(-shift)] / (2 sin shift); exact
// for expectation-valued costs of rotation-gate parameters.
Eigen::VectorXd parameter_shift_gradient(const std::function<double(const Eigen::VectorXd&)>& cost,
                                         const Eigen::VectorXd& params, double shift = M_PI / 2.0);

// Gradient of the single-column VQLS cost: the shift rule applied to the two
// expectation-valued pieces |<x|A psi>|^2 and <psi|A^T A|psi>, combined by
// chain rule (the ratio itself is not an expectation).
Eigen::VectorXd vqls_gradient(const Eigen::VectorXd& x, const Eigen::MatrixXd& sigma_half,
                              const Ansatz& shape, const Eigen::VectorXd& params);

// rho from amplitude-encoding the whole data matrix and tracing out the
// sample-index register; equals the padded second moment X X^T / |X|_F^2.
DensityMatrix data_density_matrix(const Eigen::MatrixXd& features);

struct VqdacOptions {
  int ansatz_layers = 4;
  double eigen_cutoff = kDefaultEigenCutoff;
  OptimizerConfig optimizer;
  ReadoutMode readout = ReadoutMode::hadamard;
  bool shared_solution = false;  // literal averaged Eq.-L mode: one state for all columns
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
};

struct VqdacSample {
  int index = 0;
  double oracle_score = 0.0;
  int oracle_label = 0;
  double quantum_score = 0.0;
  int quantum_label = 0;
  double fidelity = 0.0;   // solution state vs classical whitened oracle
  double vqls_cost = 0.0;  // final cost of this column's solve
};

struct VqdacRun {
  std::vector<VqdacSample> samples;
  Eigen::VectorXi labels;
  double agreement_rate = 0.0;
  double mean_fidelity = 0.0;
  double weight_fidelity = 0.0;
  VqsdResult vqsd_source;
  VqsdResult vqsd_target;
  bool all_converged = true;
};

// Algorithm 2 end to end: VQSD on rho_s and rho_t, VQLS for the weight state
// and each whitened column, overlap readout.
VqdacRun vqdac_classify(const Dataset& source, const Dataset& target, const VqdacOptions& options);

}  // namespace qda
