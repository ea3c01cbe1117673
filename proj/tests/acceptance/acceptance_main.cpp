// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qda/experiment.hpp"
#include "qda/overlap.hpp"
#include "qda/qblas.hpp"
#include "qda/report.hpp"
#include "qda/rng.hpp"
#include "qda/variational.hpp"
#include "test_util.hpp"

using namespace qda;

namespace {

struct Checker {
  int failures = 0;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int g_failed_criteria = 0;

void criterion(int number, const std::string& title,
               const std::function<void(Checker&)>& body) {
  Checker c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.failures == 0) {
    std::printf("PASS — criterion %d: %s (%.1fs)\n", number, title.c_str(), seconds);
  } else {
    std::printf("FAIL — criterion %d: %s (%.1fs) [%s]\n", number, title.c_str(), seconds,
                c.detail.c_str());
    ++g_failed_criteria;
  }
  std::fflush(stdout);
}

// Data matrix with dyadic singular-value ratios so that headroom 1/4 makes
// every phase an exact multiple of 1/16 (4 clock bits).
Eigen::MatrixXd exact_phase_matrix(Rng& rng, int dim) {
  Eigen::VectorXd sigma(dim);
  if (dim == 2) {
    sigma << 4, 2;
  } else {
    sigma.resize(4);
    sigma << 4, 2, 2, 1;
  }
  return test::matrix_with_spectrum(rng, sigma, dim + 2);
}

Dataset labeled_source(const Eigen::MatrixXd& x) {
  Eigen::VectorXi y(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) y[j] = j < x.cols() / 2 ? 0 : 1;
  return Dataset{x, y, DomainTag::source};
}

Eigen::VectorXd classical_whitened(const Eigen::MatrixXd& x, const Eigen::VectorXd& v) {
  const Eigen::MatrixXd sigma = x * x.transpose() / x.squaredNorm();
  return build_whitener(sigma, 1e-12).inverse_sqrt * v;
}

void criterion_1_exact_regime(Checker& c) {
  int datasets = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(derive_seed(1001, trial));
    const int dim = trial % 2 == 0 ? 2 : 4;
    const Dataset source = labeled_source(exact_phase_matrix(rng, dim));
    const Dataset target{exact_phase_matrix(rng, dim), std::nullopt, DomainTag::target};

    QblasOptions opt;
    opt.clock_bits = 4;
    opt.phase_headroom = 0.25;
    opt.readout = ReadoutMode::hadamard;
    opt.seed = derive_seed(2001, trial);
    const QblasRun run = qblas_classify(source, target, opt);

    c.require(run.weight_fidelity >= 1.0 - 1e-6, "weight fidelity below 1-1e-6");
    for (const QblasSample& s : run.samples)
      c.require(s.fidelity >= 1.0 - 1e-6, "column fidelity below 1-1e-6");
    c.require(run.agreement_rate == 1.0, "label agreement below 100%");
    ++datasets;
  }
  c.require(datasets >= 20, "fewer than 20 datasets");
}

void criterion_2_generic_regime(Checker& c) {
  std::vector<Eigen::MatrixXd> matrices;
  std::vector<std::vector<Eigen::VectorXd>> columns;
  Rng rng(3001);
  while (matrices.size() < 12) {
    const Eigen::MatrixXd x = test::random_matrix(rng, 2, 6);
    const Eigen::VectorXd sv = compute_spectral_data(x).singular_values;
    if (sv[0] / sv[sv.size() - 1] > 6.0) continue;  // keep the set well conditioned
    matrices.push_back(x);
    std::vector<Eigen::VectorXd> cols;
    for (int j = 0; j < 4; ++j) cols.push_back(test::random_unit_vector(rng, 2));
    columns.push_back(cols);
  }

  double previous = 0.0;
  double mean_at_8 = 0.0;
  for (int bits : {4, 6, 8}) {
    double mean = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < matrices.size(); ++i) {
      const Eigen::MatrixXd& x = matrices[i];
      const PhaseConfig cfg = make_phase_config(compute_spectral_data(x), bits);
      const HermitianExtension ext = hermitian_extend(x);
      for (const Eigen::VectorXd& v : columns[i]) {
        const PostselectionResult res = apply_u_m(x, embed_data_state(ext, v), cfg);
        const StateVector sys = extract_system_state(res, cfg).first;
        const StateVector out = project_feature_state(sys, 2).first;
        mean += out.fidelity(amplitude_encode(classical_whitened(x, v), 1));
        ++count;
      }
    }
    mean /= double(count);
    c.require(mean >= previous - 1e-9, "mean fidelity decreased with clock width");
    previous = mean;
    if (bits == 8) mean_at_8 = mean;
  }
  c.require(mean_at_8 >= 0.99, "mean fidelity at 8 clock bits below 0.99");
}

void criterion_3_swap_test_law(Checker& c) {
  Rng rng(4001);
  for (int trial = 0; trial < 100; ++trial) {
    const StateVector a = test::random_state(rng, 2);
    const StateVector b = test::random_state(rng, 2);
    const double expected = (1.0 + std::norm(a.inner_product(b))) / 2.0;

    const OverlapResult exact = overlap_score(a, b, OverlapMode::swap_test);
    c.require(std::abs(exact.p_success - expected) <= 1e-10, "exact swap law violated");

    const std::uint64_t shots = 100000;
    const OverlapResult sampled =
        overlap_score(a, b, OverlapMode::swap_test, shots, derive_seed(4002, trial));
    const double dev = 5.0 * std::sqrt(std::max(expected * (1.0 - expected), 1e-12) /
                                       double(shots));
    c.require(std::abs(sampled.p_success - expected) <= dev,
              "sampled swap probability outside 5 sigma");
  }
}

void criterion_4_vqsd(Checker& c) {
  const HamiltonianSpec h = HamiltonianSpec::default_for(2);
  const Ansatz shape = Ansatz::create(2, 4);
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(derive_seed(5001, trial));
    const DensityMatrix rho = test::random_density_matrix(rng, 2);

    OptimizerConfig opt;  // defaults: gd, lr 0.1, 2000 iters, 5 restarts
    opt.seed = derive_seed(5002, trial);
    const VqsdResult res = vqsd_diagonalize(rho, shape, h, opt);

    Eigen::VectorXd sorted = res.eigenvalues;
    std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<double>());
    const Eigen::VectorXd oracle = rho.eigenvalues_descending();
    for (Eigen::Index i = 0; i < oracle.size(); ++i)
      c.require(std::abs(sorted[i] - oracle[i]) <= 1e-2, "eigenvalue off by more than 1e-2");

    double bound = 0.0;
    for (Eigen::Index i = 0; i < oracle.size(); ++i) bound += oracle[i] * h.diagonal[i];
    c.require(res.cost_trace.back() <= bound + 1e-2, "cost above the rearrangement bound + 1e-2");
    c.require(res.cost_trace.back() >= bound - 1e-9, "cost below the rearrangement bound");
  }
}

void criterion_5_vqls(Checker& c) {
  const Ansatz shape = Ansatz::create(2, 4);
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(derive_seed(6001, trial));
    const Eigen::MatrixXd q = test::random_orthogonal(rng, 4);
    Eigen::VectorXd ev(4);
    for (int i = 0; i < 4; ++i) ev[i] = 0.1 + 0.9 * rng.uniform();  // condition number <= 10
    const Eigen::MatrixXd a = q * ev.asDiagonal() * q.transpose();
    const Eigen::VectorXd x = test::random_unit_vector(rng, 4);

    OptimizerConfig opt;
    opt.seed = derive_seed(6002, trial);
    const VqlsResult res = vqls_solve(x, a, shape, opt);
    c.require(res.fidelity_vs_oracle.has_value() && *res.fidelity_vs_oracle >= 0.99,
              "solution fidelity below 0.99");

    for (int point = 0; point < 10; ++point) {
      Eigen::VectorXd theta(shape.param_count());
      for (Eigen::Index i = 0; i < theta.size(); ++i) theta[i] = rng.uniform(-M_PI, M_PI);
      const Eigen::VectorXd grad = vqls_gradient(x, a, shape, theta);
      const double hstep = 1e-5;
      for (Eigen::Index k = 0; k < theta.size(); ++k) {
        Eigen::VectorXd tp = theta, tm = theta;
        tp[k] += hstep;
        tm[k] -= hstep;
        const double fd = (vqls_cost_single(x, a, shape.prepare(tp)) -
                           vqls_cost_single(x, a, shape.prepare(tm))) /
                          (2.0 * hstep);
        c.require(std::abs(grad[k] - fd) <= 1e-5, "gradient disagrees with finite differences");
      }
    }
  }
}

void criterion_6_end_to_end(Checker& c) {
  ExperimentConfig cfg;
  cfg.pipeline = PipelineChoice::all;
  cfg.use_generator = true;
  cfg.generator = benchmark_spec();
  cfg.seed = 42;
  const ExperimentOutcome outcome = run_experiment(cfg);

  c.require(outcome.qblas && outcome.qblas->agreement_rate >= 0.95,
            "qblas agreement below 95%");
  c.require(outcome.vqdac && outcome.vqdac->agreement_rate >= 0.90,
            "vqdac agreement below 90%");
  c.require(outcome.oracle_accuracy && outcome.non_adapted_accuracy &&
                *outcome.oracle_accuracy - *outcome.non_adapted_accuracy >= 0.05,
            "adaptation gain below 5 percentage points");
}

void criterion_7_reproducibility(Checker& c) {
  ExperimentConfig cfg;
  cfg.pipeline = PipelineChoice::all;
  cfg.use_generator = true;
  cfg.generator.dim = 2;
  cfg.generator.n_source = 10;
  cfg.generator.n_target = 6;
  cfg.generator.class_gap = 4.0;
  cfg.generator.shift_angle = 0.4;
  cfg.generator.seed = 77;
  cfg.clock_bits = 5;
  cfg.seed = 77;

  const ExperimentOutcome a = run_experiment(cfg);
  const ExperimentOutcome b = run_experiment(cfg);
  c.require(canonical_report_json(a.report_json) == canonical_report_json(b.report_json),
            "reports differ canonically");
}

void criterion_8_invariant_suites(Checker& c) {
  Rng rng(8001);

  // Norm preservation and QFT inverse.
  for (int trial = 0; trial < 100; ++trial) {
    const StateVector in = test::random_state(rng, 4);
    Circuit circ(4);
    circ.add(Gate::h(int(rng.below(4))));
    circ.add(Gate::ry(int(rng.below(4)), rng.uniform(-M_PI, M_PI)));
    circ.add(Gate::cz(0, 1 + int(rng.below(3))));
    circ.add(Gate::qft(0, 3));
    const StateVector out = apply(in, circ);
    c.require(std::abs(out.norm() - 1.0) < 1e-10, "norm drifted");

    const StateVector round = apply_qft(apply_qft(in, 0, 4, false), 0, 4, true);
    c.require((round.to_eigen() - in.to_eigen()).cwiseAbs().maxCoeff() < 1e-10,
              "QFT inverse violated");
  }

  // Unitarity of every gate kind.
  for (int trial = 0; trial < 100; ++trial) {
    const double theta = rng.uniform(-M_PI, M_PI);
    const std::vector<Gate> gates = {
        Gate::h(0),           Gate::x(1),
        Gate::ry(2, theta),   Gate::rz(0, theta),
        Gate::phase(1, theta), Gate::cz(0, 2),
        Gate::cnot(1, 2),     Gate::swap(0, 2),
        Gate::qft(0, 2),      Gate::iqft(1, 2),
        Gate::controlled_unitary(ry_matrix(theta), {2}, {0}),
    };
    for (const Gate& g : gates) {
      const Eigen::MatrixXcd u = gate_unitary(g, 3);
      c.require((u.adjoint() * u - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() <
                    1e-10,
                "gate not unitary");
    }
  }

  // PSD preservation: whiteners and reduced density matrices.
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::MatrixXd a = test::random_matrix(rng, 3, 5);
    const Eigen::MatrixXd sigma = a * a.transpose() / a.squaredNorm();
    const Whitener w = build_whitener(sigma);
    c.require((w.inverse_sqrt - w.inverse_sqrt.transpose()).cwiseAbs().maxCoeff() < 1e-12,
              "whitener asymmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w.inverse_sqrt, Eigen::EigenvaluesOnly);
    c.require(es.eigenvalues().minCoeff() > -1e-10, "whitener not PSD");

    const DensityMatrix rho = partial_trace(test::random_state(rng, 4), {1, 3});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(rho.matrix, Eigen::EigenvaluesOnly);
    c.require(es2.eigenvalues().minCoeff() > -1e-10, "reduced state not PSD");
    c.require(std::abs(rho.matrix.trace().real() - 1.0) < 1e-10, "reduced state trace off");
  }

  // Cost bounds and probability-vector constraints.
  const HamiltonianSpec h = HamiltonianSpec::default_for(2);
  const Ansatz shape = Ansatz::create(2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = test::random_density_matrix(rng, 2);
    Ansatz a = shape;
    for (Eigen::Index i = 0; i < a.params.size(); ++i) a.params[i] = rng.uniform(-M_PI, M_PI);

    double bound = 0.0;
    const Eigen::VectorXd oracle = rho.eigenvalues_descending();
    for (Eigen::Index i = 0; i < oracle.size(); ++i) bound += oracle[i] * h.diagonal[i];
    const double cost = vqsd_cost(rho, a, h);
    c.require(cost >= bound - 1e-9, "vqsd cost below the rearrangement bound");

    const Eigen::MatrixXcd rho_t = a.unitary(a.params) * rho.matrix * a.unitary(a.params).adjoint();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < rho_t.rows(); ++i) {
      c.require(rho_t(i, i).real() >= -1e-9, "eigenvalue estimate negative");
      sum += rho_t(i, i).real();
    }
    c.require(std::abs(sum - 1.0) <= 1e-6, "eigenvalue estimates do not sum to 1");

    const Eigen::MatrixXd g = test::random_matrix(rng, 4, 4);
    const Eigen::MatrixXd spd = g * g.transpose() + 0.1 * Eigen::MatrixXd::Identity(4, 4);
    const double l = vqls_cost_single(test::random_unit_vector(rng, 4), spd,
                                      test::random_state(rng, 2));
    c.require(l >= -1e-12 && l <= 1.0 + 1e-12, "vqls cost outside [0,1]");
  }
}

}  // namespace

int main() {
  std::printf("acceptance suite (tolerances pinned in code)\n");

  {
    const auto start = std::chrono::steady_clock::now();
    criterion(1, "QBLAS exact regime: fidelity >= 1-1e-6, 100% label agreement",
              criterion_1_exact_regime);
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s >= 60.0) {
      std::printf("FAIL — criterion 1 runtime bound: %.1fs >= 60s\n", s);
      ++g_failed_criteria;
    }
  }
  {
    const auto start = std::chrono::steady_clock::now();
    criterion(2, "QBLAS generic regime: mean fidelity >= 0.99 at 8 bits, monotone in width",
              criterion_2_generic_regime);
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s >= 300.0) {
      std::printf("FAIL — criterion 2 runtime bound: %.1fs >= 300s\n", s);
      ++g_failed_criteria;
    }
  }
  criterion(3, "swap-test law: exact to 1e-10, sampled within 5 binomial deviations",
            criterion_3_swap_test_law);
  criterion(4, "VQSD eigenvalue recovery within 1e-2 and cost near the lower bound",
            criterion_4_vqsd);
  criterion(5, "VQLS fidelity >= 0.99 and gradients match finite differences to 1e-5",
            criterion_5_vqls);
  criterion(6, "end-to-end benchmark: qblas >= 95%, vqdac >= 90%, adaptation gain >= 5pp",
            criterion_6_end_to_end);
  criterion(7, "reproducibility: identical seeds give canonically identical reports",
            criterion_7_reproducibility);
  criterion(8, "invariant property suites, 100 random cases each", criterion_8_invariant_suites);

  if (g_failed_criteria == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d criterion(s) failed\n", g_failed_criteria);
  return g_failed_criteria;
}
