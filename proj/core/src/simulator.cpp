#include "qda/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qda/rng.hpp"

namespace qda {

namespace {

// Bit position of wire q in a basis index (wire 0 is the most significant).
inline int bit_pos(int q, int num_qubits) { return num_qubits - 1 - q; }

inline std::size_t wire_mask(int q, int num_qubits) {
  return std::size_t(1) << bit_pos(q, num_qubits);
}

std::size_t control_mask(const std::vector<int>& controls, int num_qubits) {
  std::size_t m = 0;
  for (int q : controls) m |= wire_mask(q, num_qubits);
  return m;
}

void check_wires(const Gate& g, int num_qubits) {
  g.validate_wiring();
  for (int q : g.targets)
    if (q < 0 || q >= num_qubits) throw std::out_of_range("gate wire index out of range");
  for (int q : g.controls)
    if (q < 0 || q >= num_qubits) throw std::out_of_range("gate wire index out of range");
}

void apply_single(std::vector<Complex>& amps, int num_qubits, int target,
                  const std::vector<int>& controls, const Eigen::Matrix2cd& m) {
  const std::size_t tmask = wire_mask(target, num_qubits);
  const std::size_t cmask = control_mask(controls, num_qubits);
  const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & tmask) != 0) continue;
    if ((i & cmask) != cmask) continue;
    const std::size_t j = i | tmask;
    const Complex a = amps[i], b = amps[j];
    amps[i] = m00 * a + m01 * b;
    amps[j] = m10 * a + m11 * b;
  }
}

void apply_cz(std::vector<Complex>& amps, int num_qubits, int a, int b,
              const std::vector<int>& controls) {
  const std::size_t mask =
      wire_mask(a, num_qubits) | wire_mask(b, num_qubits) | control_mask(controls, num_qubits);
  for (std::size_t i = 0; i < amps.size(); ++i)
    if ((i & mask) == mask) amps[i] = -amps[i];
}

void apply_swap(std::vector<Complex>& amps, int num_qubits, int a, int b,
                const std::vector<int>& controls) {
  const std::size_t amask = wire_mask(a, num_qubits);
  const std::size_t bmask = wire_mask(b, num_qubits);
  const std::size_t cmask = control_mask(controls, num_qubits);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & amask) == 0 || (i & bmask) != 0) continue;  // visit a=1, b=0 once
    if ((i & cmask) != cmask) continue;
    const std::size_t j = (i & ~amask) | bmask;
    std::swap(amps[i], amps[j]);
  }
}

// Dense matrix on an arbitrary target list; targets[0] is the most
// significant bit of the sub-register index.
void apply_register_matrix(std::vector<Complex>& amps, int num_qubits,
                           const std::vector<int>& targets, const std::vector<int>& controls,
                           const Eigen::MatrixXcd& m) {
  const int nt = static_cast<int>(targets.size());
  const std::size_t sub_dim = std::size_t(1) << nt;
  const std::size_t cmask = control_mask(controls, num_qubits);

  std::size_t tmask = 0;
  std::vector<std::size_t> scatter(sub_dim, 0);
  for (int b = 0; b < nt; ++b) {
    const std::size_t bit = wire_mask(targets[b], num_qubits);
    tmask |= bit;
    const std::size_t sub_bit = std::size_t(1) << (nt - 1 - b);
    for (std::size_t j = 0; j < sub_dim; ++j)
      if (j & sub_bit) scatter[j] |= bit;
  }

  Eigen::VectorXcd in(sub_dim), out(sub_dim);
  for (std::size_t base = 0; base < amps.size(); ++base) {
    if ((base & tmask) != 0) continue;
    if ((base & cmask) != cmask) continue;
    for (std::size_t j = 0; j < sub_dim; ++j) in[j] = amps[base | scatter[j]];
    out.noalias() = m * in;
    for (std::size_t j = 0; j < sub_dim; ++j) amps[base | scatter[j]] = out[j];
  }
}

}  // namespace

StateVector apply(const StateVector& state, const Gate& gate) {
  check_wires(gate, state.num_qubits());
  std::vector<Complex> amps = state.amplitudes();
  const int nq = state.num_qubits();
  switch (gate.kind) {
    case GateKind::H:
      apply_single(amps, nq, gate.targets[0], gate.controls, h_matrix());
      break;
    case GateKind::X:
      apply_single(amps, nq, gate.targets[0], gate.controls, x_matrix());
      break;
    case GateKind::Ry:
      apply_single(amps, nq, gate.targets[0], gate.controls, ry_matrix(gate.angle));
      break;
    case GateKind::Rz:
      apply_single(amps, nq, gate.targets[0], gate.controls, rz_matrix(gate.angle));
      break;
    case GateKind::Phase:
      apply_single(amps, nq, gate.targets[0], gate.controls, phase_matrix(gate.angle));
      break;
    case GateKind::CZ:
      apply_cz(amps, nq, gate.targets[0], gate.targets[1], gate.controls);
      break;
    case GateKind::CNOT:
      apply_single(amps, nq, gate.targets[0], gate.controls, x_matrix());
      break;
    case GateKind::Swap:
      apply_swap(amps, nq, gate.targets[0], gate.targets[1], gate.controls);
      break;
    case GateKind::Qft:
    case GateKind::Iqft: {
      if (!gate.controls.empty()) throw std::invalid_argument("QFT gate takes no controls");
      const auto f = dft_matrix(static_cast<int>(gate.targets.size()),
                                gate.kind == GateKind::Iqft);
      apply_register_matrix(amps, nq, gate.targets, {}, f);
      break;
    }
    case GateKind::ControlledUnitary:
      apply_register_matrix(amps, nq, gate.targets, gate.controls, gate.matrix);
      break;
  }
  StateVector out = StateVector::from_amplitudes(std::move(amps));
  return out;
}

StateVector apply(const StateVector& state, const Circuit& circuit) {
  if (circuit.num_qubits != state.num_qubits())
    throw std::invalid_argument("circuit and state qubit counts differ");
  StateVector current = state;
  for (const Gate& g : circuit.gates) current = apply(current, g);
  return current;
}

StateVector apply_qft(const StateVector& state, int first, int count, bool inverse) {
  return apply(state, inverse ? Gate::iqft(first, count) : Gate::qft(first, count));
}

DensityMatrix partial_trace(const StateVector& state, const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial trace needs a nonempty keep set");
  const int nq = state.num_qubits();
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw std::invalid_argument("repeated wire in keep set");
  for (int q : kept)
    if (q < 0 || q >= nq) throw std::out_of_range("keep wire out of range");

  const int nk = static_cast<int>(kept.size());
  const int ne = nq - nk;
  const std::size_t kd = std::size_t(1) << nk;
  const std::size_t ed = std::size_t(1) << ne;

  std::vector<std::size_t> kept_scatter(kd, 0), env_scatter(ed, 0);
  std::vector<int> env;
  {
    std::vector<bool> is_kept(nq, false);
    for (int q : kept) is_kept[q] = true;
    for (int q = 0; q < nq; ++q)
      if (!is_kept[q]) env.push_back(q);
  }
  for (int b = 0; b < nk; ++b) {
    const std::size_t bit = std::size_t(1) << bit_pos(kept[b], nq);
    const std::size_t sub_bit = std::size_t(1) << (nk - 1 - b);
    for (std::size_t j = 0; j < kd; ++j)
      if (j & sub_bit) kept_scatter[j] |= bit;
  }
  for (int b = 0; b < ne; ++b) {
    const std::size_t bit = std::size_t(1) << bit_pos(env[b], nq);
    const std::size_t sub_bit = std::size_t(1) << (ne - 1 - b);
    for (std::size_t j = 0; j < ed; ++j)
      if (j & sub_bit) env_scatter[j] |= bit;
  }

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(kd, kd);
  Eigen::VectorXcd v(kd);
  const auto& amps = state.amplitudes();
  for (std::size_t e = 0; e < ed; ++e) {
    const std::size_t base = env_scatter[e];
    for (std::size_t j = 0; j < kd; ++j) v[j] = amps[base | kept_scatter[j]];
    rho.noalias() += v * v.adjoint();
  }
  return DensityMatrix{std::move(rho), nk};
}

double expectation(const StateVector& state, const Eigen::MatrixXcd& observable) {
  if (observable.rows() != observable.cols() ||
      observable.rows() != Eigen::Index(state.dim()))
    throw std::invalid_argument("observable dimension mismatch");
  if ((observable - observable.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("observable not Hermitian");
  Eigen::VectorXcd v = state.to_eigen();
  const Complex val = v.adjoint() * (observable * v);
  return val.real();
}

std::vector<double> register_probabilities(const StateVector& state, int first, int count) {
  const int nq = state.num_qubits();
  if (count < 1 || first < 0 || first + count > nq)
    throw std::out_of_range("register out of range");
  const int shift = nq - first - count;
  const std::size_t mask = (std::size_t(1) << count) - 1;
  std::vector<double> p(std::size_t(1) << count, 0.0);
  const auto& amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i)
    p[(i >> shift) & mask] += std::norm(amps[i]);
  return p;
}

std::vector<std::uint64_t> sample_shots(const StateVector& state, int first, int count,
                                        std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  std::vector<double> p = register_probabilities(state, first, count);
  std::vector<double> cum(p.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    acc += p[k];
    cum[k] = acc;
  }
  cum.back() = 1.0;

  Rng rng(seed);
  std::vector<std::uint64_t> counts(p.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    counts[static_cast<std::size_t>(it - cum.begin())]++;
  }
  return counts;
}

std::pair<StateVector, double> project_register(const StateVector& state, int first, int count,
                                                std::uint64_t value) {
  const int nq = state.num_qubits();
  if (count < 1 || first < 0 || first + count > nq)
    throw std::out_of_range("register out of range");
  const int shift = nq - first - count;
  const std::size_t mask = (std::size_t(1) << count) - 1;
  std::vector<Complex> amps = state.amplitudes();
  double kept = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (((i >> shift) & mask) == value) {
      kept += std::norm(amps[i]);
    } else {
      amps[i] = Complex(0, 0);
    }
  }
  if (kept <= 0.0) throw std::runtime_error("projection has zero support");
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& a : amps) a *= scale;
  return {StateVector::from_amplitudes(std::move(amps)), kept};
}

std::pair<StateVector, double> condition_on(const StateVector& state, int first, int count,
                                            std::uint64_t value) {
  const int nq = state.num_qubits();
  if (count < 1 || first < 0 || first + count > nq)
    throw std::out_of_range("register out of range");
  if (count == nq) throw std::invalid_argument("cannot condition on every wire");
  const int shift = nq - first - count;
  const std::size_t mask = (std::size_t(1) << count) - 1;
  const std::size_t rest_dim = std::size_t(1) << (nq - count);
  const std::size_t low_mask = (std::size_t(1) << shift) - 1;

  std::vector<Complex> reduced(rest_dim, Complex(0, 0));
  double kept = 0.0;
  const auto& amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (((i >> shift) & mask) != value) continue;
    kept += std::norm(amps[i]);
    const std::size_t high = i >> (shift + count);
    reduced[(high << shift) | (i & low_mask)] = amps[i];
  }
  if (kept <= 0.0) throw std::runtime_error("projection has zero support");
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& a : reduced) a *= scale;
  return {StateVector::from_amplitudes(std::move(reduced)), kept};
}

}  // namespace qda
