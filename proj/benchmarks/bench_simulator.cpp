#include <benchmark/benchmark.h>

#include "qda/rng.hpp"
#include "qda/simulator.hpp"

using namespace qda;

namespace {
StateVector random_state(int qubits, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t dim = std::size_t(1) << qubits;
  std::vector<Complex> amps(dim);
  double norm2 = 0.0;
  for (auto& a : amps) {
    a = Complex(rng.normal(), rng.normal());
    norm2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= inv;
  return StateVector::from_amplitudes(std::move(amps));
}
}  // namespace

static void BM_SingleQubitGate(benchmark::State& state) {
  const int qubits = int(state.range(0));
  const StateVector psi = random_state(qubits, 1);
  const Gate gate = Gate::ry(qubits / 2, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply(psi, gate));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SingleQubitGate)->Arg(10)->Arg(14)->Arg(18);

static void BM_ControlledUnitary(benchmark::State& state) {
  const int system = int(state.range(0));
  const int qubits = system + 2;
  const StateVector psi = random_state(qubits, 2);
  const Eigen::MatrixXcd u = dft_matrix(system, false);
  std::vector<int> targets;
  for (int q = 2; q < qubits; ++q) targets.push_back(q);
  const Gate gate = Gate::controlled_unitary(u, targets, {0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply(psi, gate));
  }
}
BENCHMARK(BM_ControlledUnitary)->Arg(4)->Arg(6);

static void BM_Qft(benchmark::State& state) {
  const int qubits = int(state.range(0));
  const StateVector psi = random_state(qubits, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_qft(psi, 0, qubits, false));
  }
}
BENCHMARK(BM_Qft)->Arg(8)->Arg(12);

static void BM_PartialTrace(benchmark::State& state) {
  const int qubits = int(state.range(0));
  const StateVector psi = random_state(qubits, 4);
  const std::vector<int> keep = {qubits - 2, qubits - 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_trace(psi, keep));
  }
}
BENCHMARK(BM_PartialTrace)->Arg(10)->Arg(14);

static void BM_SampleShots(benchmark::State& state) {
  const StateVector psi = random_state(10, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_shots(psi, 0, 10, 10000, 7));
  }
}
BENCHMARK(BM_SampleShots);
