#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qda/state_vector.hpp"

namespace qda {

inline constexpr double kUnitarityTolerance = 1e-10;

enum class GateKind {
  H,
  X,
  Ry,
  Rz,
  Phase,
  CZ,
  CNOT,
  Swap,
  Qft,
  Iqft,
  ControlledUnitary,
};

// One circuit element. `targets` are the wires the gate matrix acts on
// (targets[0] is the most significant bit of the matrix index, matching the
// project-wide big-endian convention); `controls` gate the action on |1>.
struct Gate {
  GateKind kind;
  std::vector<int> targets;
  std::vector<int> controls;
  double angle = 0.0;
  Eigen::MatrixXcd matrix;  // payload for ControlledUnitary

  static Gate h(int q);
  static Gate x(int q, std::vector<int> controls = {});
  static Gate ry(int q, double theta, std::vector<int> controls = {});
  static Gate rz(int q, double theta);
  static Gate phase(int q, double theta, std::vector<int> controls = {});
  static Gate cz(int a, int b);
  static Gate cnot(int control, int target);
  static Gate swap(int a, int b, std::vector<int> controls = {});
  static Gate qft(int first, int count);
  static Gate iqft(int first, int count);
  // `u` must be unitary within kUnitarityTolerance and of dimension
  // 2^targets.size(); throws otherwise.
  static Gate controlled_unitary(Eigen::MatrixXcd u, std::vector<int> targets,
                                 std::vector<int> controls = {});

  // Throws if target/control sets overlap or repeat a wire.
  void validate_wiring() const;
};

struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;

  explicit Circuit(int q) : num_qubits(q) {}
  Circuit& add(Gate g);
};

// Fixed 2x2 / matrix building blocks.
Eigen::Matrix2cd h_matrix();
Eigen::Matrix2cd x_matrix();
// Ry(theta)|0> = cos(theta/2)|0> + sin(theta/2)|1>.
Eigen::Matrix2cd ry_matrix(double theta);
Eigen::Matrix2cd rz_matrix(double theta);
Eigen::Matrix2cd phase_matrix(double theta);

// Unitary DFT on n qubits, F[j][k] = w^{jk}/sqrt(N) with w = exp(2*pi*i/N).
Eigen::MatrixXcd dft_matrix(int num_qubits, bool inverse);

// Full 2^num_qubits unitary of a gate (controls included); for tests and
// small-register composition, not the hot path.
Eigen::MatrixXcd gate_unitary(const Gate& g, int num_qubits);

std::string gate_name(GateKind kind);

}  // namespace qda
