#include <benchmark/benchmark.h>

#include "qda/dataset.hpp"
#include "qda/qblas.hpp"
#include "qda/rng.hpp"
#include "qda/variational.hpp"

using namespace qda;

namespace {
SyntheticDomains small_domains(int n) {
  SyntheticSpec spec;
  spec.dim = 2;
  spec.n_source = n;
  spec.n_target = n;
  spec.class_gap = 4.0;
  spec.shift_angle = 0.5;
  spec.seed = 9;
  return generate_synthetic_domains(spec);
}
}  // namespace

static void BM_ApplyUM(benchmark::State& state) {
  const int clock_bits = int(state.range(0));
  const SyntheticDomains d = small_domains(14);
  const Eigen::MatrixXd& x = d.target.features;
  const PhaseConfig cfg = make_phase_config(compute_spectral_data(x), clock_bits);
  const HermitianExtension ext = hermitian_extend(x);
  const StateVector input = embed_data_state(ext, x.col(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_u_m(x, input, cfg));
  }
}
BENCHMARK(BM_ApplyUM)->Arg(4)->Arg(6)->Arg(8);

static void BM_QblasClassify(benchmark::State& state) {
  const SyntheticDomains d = small_domains(8);
  QblasOptions opt;
  opt.clock_bits = 6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qblas_classify(d.source, d.target, opt));
  }
}
BENCHMARK(BM_QblasClassify);

static void BM_VqsdCost(benchmark::State& state) {
  const SyntheticDomains d = small_domains(8);
  const DensityMatrix rho = data_density_matrix(d.source.features);
  Ansatz a = Ansatz::create(1, 4);
  Rng rng(3);
  for (Eigen::Index i = 0; i < a.params.size(); ++i) a.params[i] = rng.uniform(-M_PI, M_PI);
  const HamiltonianSpec h = HamiltonianSpec::default_for(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vqsd_cost(rho, a, h));
  }
}
BENCHMARK(BM_VqsdCost);

static void BM_VqlsGradient(benchmark::State& state) {
  Rng rng(5);
  const Eigen::MatrixXd g(Eigen::MatrixXd::Random(4, 4));
  const Eigen::MatrixXd a = g * g.transpose() + 0.2 * Eigen::MatrixXd::Identity(4, 4);
  Eigen::VectorXd x = Eigen::VectorXd::Random(4).normalized();
  const Ansatz shape = Ansatz::create(2, 4);
  Eigen::VectorXd theta(shape.param_count());
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta[i] = rng.uniform(-M_PI, M_PI);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vqls_gradient(x, a, shape, theta));
  }
}
BENCHMARK(BM_VqlsGradient);

BENCHMARK_MAIN();
