#include "qda/gates.hpp"

#include <cmath>
#include <mutex>
#include <set>
#include <stdexcept>

#include "qda/simulator.hpp"

namespace qda {

namespace {
void check_unitary(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("gate matrix not square");
  Eigen::MatrixXcd gram = u.adjoint() * u;
  gram -= Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  if (gram.cwiseAbs().maxCoeff() > kUnitarityTolerance)
    throw std::invalid_argument("gate matrix not unitary");
}

std::vector<int> range_targets(int first, int count) {
  if (count < 1) throw std::invalid_argument("empty register");
  std::vector<int> t(count);
  for (int i = 0; i < count; ++i) t[i] = first + i;
  return t;
}
}  // namespace

void Gate::validate_wiring() const {
  std::set<int> seen;
  for (int q : targets)
    if (!seen.insert(q).second) throw std::invalid_argument("repeated target wire");
  for (int q : controls)
    if (!seen.insert(q).second) throw std::invalid_argument("control overlaps target");
}

Gate Gate::h(int q) { return Gate{GateKind::H, {q}, {}, 0.0, {}}; }

Gate Gate::x(int q, std::vector<int> controls) {
  return Gate{GateKind::X, {q}, std::move(controls), 0.0, {}};
}

Gate Gate::ry(int q, double theta, std::vector<int> controls) {
  return Gate{GateKind::Ry, {q}, std::move(controls), theta, {}};
}

Gate Gate::rz(int q, double theta) { return Gate{GateKind::Rz, {q}, {}, theta, {}}; }

Gate Gate::phase(int q, double theta, std::vector<int> controls) {
  return Gate{GateKind::Phase, {q}, std::move(controls), theta, {}};
}

Gate Gate::cz(int a, int b) { return Gate{GateKind::CZ, {a, b}, {}, 0.0, {}}; }

Gate Gate::cnot(int control, int target) {
  return Gate{GateKind::CNOT, {target}, {control}, 0.0, {}};
}

Gate Gate::swap(int a, int b, std::vector<int> controls) {
  return Gate{GateKind::Swap, {a, b}, std::move(controls), 0.0, {}};
}

Gate Gate::qft(int first, int count) {
  return Gate{GateKind::Qft, range_targets(first, count), {}, 0.0, {}};
}

Gate Gate::iqft(int first, int count) {
  return Gate{GateKind::Iqft, range_targets(first, count), {}, 0.0, {}};
}

Gate Gate::controlled_unitary(Eigen::MatrixXcd u, std::vector<int> targets,
                              std::vector<int> controls) {
  check_unitary(u);
  if (u.rows() != Eigen::Index(1) << targets.size())
    throw std::invalid_argument("matrix dimension does not match target register");
  Gate g{GateKind::ControlledUnitary, std::move(targets), std::move(controls), 0.0, std::move(u)};
  g.validate_wiring();
  return g;
}

Circuit& Circuit::add(Gate g) {
  g.validate_wiring();
  for (int q : g.targets)
    if (q < 0 || q >= num_qubits) throw std::out_of_range("gate wire index out of range");
  for (int q : g.controls)
    if (q < 0 || q >= num_qubits) throw std::out_of_range("gate wire index out of range");
  gates.push_back(std::move(g));
  return *this;
}

Eigen::Matrix2cd h_matrix() {
  Eigen::Matrix2cd m;
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Eigen::Matrix2cd x_matrix() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd ry_matrix(double theta) {
  Eigen::Matrix2cd m;
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  m << c, -s, s, c;
  return m;
}

Eigen::Matrix2cd rz_matrix(double theta) {
  Eigen::Matrix2cd m;
  m << std::polar(1.0, -theta / 2.0), 0.0, 0.0, std::polar(1.0, theta / 2.0);
  return m;
}

Eigen::Matrix2cd phase_matrix(double theta) {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, std::polar(1.0, theta);
  return m;
}

Eigen::MatrixXcd dft_matrix(int num_qubits, bool inverse) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) throw std::invalid_argument("bad register size");

  // Building the matrix costs O(4^n) trig calls, so keep one per size; the
  // inverse is the conjugate of the cached forward transform.
  static std::mutex mutex;
  static Eigen::MatrixXcd cache[kMaxQubits + 1];
  std::scoped_lock lock(mutex);
  Eigen::MatrixXcd& f = cache[num_qubits];
  if (f.size() == 0) {
    const Eigen::Index n = Eigen::Index(1) << num_qubits;
    const double scale = 1.0 / std::sqrt(double(n));
    f.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k) {
        long long jk = (static_cast<long long>(j) * k) % n;
        f(j, k) = scale * std::polar(1.0, 2.0 * M_PI * double(jk) / double(n));
      }
  }
  return inverse ? f.conjugate() : f;
}

Eigen::MatrixXcd gate_unitary(const Gate& g, int num_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    std::vector<Complex> amps(dim, Complex(0, 0));
    amps[static_cast<std::size_t>(col)] = 1.0;
    StateVector basis = StateVector::from_amplitudes(std::move(amps));
    StateVector out = apply(basis, g);
    u.col(col) = out.to_eigen();
  }
  return u;
}

std::string gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Ry: return "Ry";
    case GateKind::Rz: return "Rz";
    case GateKind::Phase: return "Phase";
    case GateKind::CZ: return "CZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::Swap: return "SWAP";
    case GateKind::Qft: return "QFT";
    case GateKind::Iqft: return "IQFT";
    case GateKind::ControlledUnitary: return "CU";
  }
  return "?";
}

}  // namespace qda
