#include "qda/variational.hpp"

#include <cmath>
#include <stdexcept>

#include "qda/rng.hpp"

namespace qda {

namespace {

struct OptimizeOutcome {
  Eigen::VectorXd best_params;
  double best_cost = 0.0;
  std::vector<double> trace;
};

using CostFn = std::function<double(const Eigen::VectorXd&)>;
using GradFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

OptimizeOutcome run_gradient_descent(const CostFn& cost, const GradFn& grad,
                                     Eigen::VectorXd theta, const OptimizerConfig& opt) {
  OptimizeOutcome out;
  double c = cost(theta);
  out.trace.push_back(c);
  for (int iter = 0; iter < opt.max_iters; ++iter) {
    const Eigen::VectorXd g = grad(theta);
    if (g.cwiseAbs().maxCoeff() < 1e-12) break;

    double step = opt.learning_rate;
    bool accepted = false;
    Eigen::VectorXd candidate;
    double c_new = c;
    for (int bt = 0; bt < 25; ++bt) {
      candidate = theta - step * g;
      c_new = cost(candidate);
      if (c_new <= c) {
        accepted = true;
        break;
      }
      step /= 2.0;
    }
    if (!accepted) break;
    theta = candidate;
    c = c_new;
    out.trace.push_back(c);

    const std::size_t w = std::size_t(opt.convergence_window);
    if (out.trace.size() > w &&
        out.trace[out.trace.size() - 1 - w] - c < opt.convergence_tol)
      break;
  }
  out.best_params = theta;
  out.best_cost = c;
  return out;
}

OptimizeOutcome run_spsa(const CostFn& cost, Eigen::VectorXd theta, const OptimizerConfig& opt,
                         std::uint64_t seed) {
  // Standard SPSA gain schedules.
  const double a = opt.learning_rate, c0 = 0.1, big_a = 0.1 * opt.max_iters;
  Rng rng(seed);
  OptimizeOutcome out;
  out.trace.push_back(cost(theta));
  Eigen::VectorXd delta(theta.size());
  for (int k = 0; k < opt.max_iters; ++k) {
    const double ak = a / std::pow(k + 1.0 + big_a, 0.602);
    const double ck = c0 / std::pow(k + 1.0, 0.101);
    for (Eigen::Index i = 0; i < delta.size(); ++i) delta[i] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    const double cp = cost(theta + ck * delta);
    const double cm = cost(theta - ck * delta);
    theta -= ak * (cp - cm) / (2.0 * ck) * delta;
    out.trace.push_back(cost(theta));
  }
  out.best_params = theta;
  out.best_cost = out.trace.back();
  return out;
}

OptimizeOutcome minimize(const CostFn& cost, const GradFn& grad, int param_count,
                         const OptimizerConfig& opt) {
  if (opt.learning_rate <= 0.0) throw std::invalid_argument("learning rate must be positive");
  if (opt.max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  if (opt.restarts < 1) throw std::invalid_argument("restarts must be at least 1");

  OptimizeOutcome best;
  bool have = false;
  for (int r = 0; r < opt.restarts; ++r) {
    const std::uint64_t seed = derive_seed(opt.seed, std::uint64_t(r) + 1);
    Rng rng(seed);
    Eigen::VectorXd theta0(param_count);
    for (int i = 0; i < param_count; ++i) theta0[i] = rng.uniform(-M_PI, M_PI);

    OptimizeOutcome outcome = opt.method == OptimizerMethod::gradient_descent
                                  ? run_gradient_descent(cost, grad, theta0, opt)
                                  : run_spsa(cost, theta0, opt, derive_seed(seed, 77));
    if (!have || outcome.best_cost < best.best_cost) {
      best = std::move(outcome);
      have = true;
    }
  }
  return best;
}

Eigen::MatrixXcd evolve_density(const DensityMatrix& rho, const Eigen::MatrixXcd& u) {
  return u * rho.matrix * u.adjoint();
}

double offdiagonal_mass(const Eigen::MatrixXcd& m) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j) acc += std::norm(m(i, j));
  return std::sqrt(acc);
}

// <x|A|psi> and <psi|A^T A|psi> for the VQLS cost and its gradient.
struct VqlsTerms {
  Complex overlap;
  double image_norm2;
};

VqlsTerms vqls_terms(const Eigen::VectorXd& x, const Eigen::MatrixXd& a,
                     const Eigen::VectorXcd& psi) {
  const Eigen::VectorXcd image = a.cast<Complex>() * psi;
  return {x.cast<Complex>().dot(image), image.squaredNorm()};
}

}  // namespace

Ansatz Ansatz::create(int num_qubits, int layers) {
  if (num_qubits < 1) throw std::invalid_argument("ansatz needs at least one qubit");
  if (layers < 1) throw std::invalid_argument("ansatz needs at least one layer");
  Ansatz a;
  a.num_qubits = num_qubits;
  a.layers = layers;
  a.params = Eigen::VectorXd::Zero(a.param_count());
  return a;
}

Circuit Ansatz::circuit(const Eigen::VectorXd& p) const {
  if (p.size() != param_count()) throw std::invalid_argument("parameter count mismatch");
  Circuit c(num_qubits);
  for (int l = 0; l < layers; ++l) {
    const int base = 2 * l * num_qubits;
    for (int q = 0; q < num_qubits; ++q) c.add(Gate::ry(q, p[base + 2 * q]));
    for (int q = 0; q < num_qubits; ++q) c.add(Gate::rz(q, p[base + 2 * q + 1]));
    if (num_qubits == 2) {
      c.add(Gate::cz(0, 1));
    } else if (num_qubits > 2) {
      for (int q = 0; q < num_qubits; ++q) c.add(Gate::cz(q, (q + 1) % num_qubits));
    }
  }
  return c;
}

Eigen::MatrixXcd Ansatz::unitary(const Eigen::VectorXd& p) const {
  const Circuit c = circuit(p);
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    std::vector<Complex> amps(dim, Complex(0, 0));
    amps[std::size_t(col)] = 1.0;
    u.col(col) = apply(StateVector::from_amplitudes(std::move(amps)), c).to_eigen();
  }
  return u;
}

StateVector Ansatz::prepare(const Eigen::VectorXd& p) const {
  return apply(StateVector(num_qubits), circuit(p));
}

void HamiltonianSpec::validate() const {
  if (diagonal.size() < 2) throw std::invalid_argument("Hamiltonian needs at least two levels");
  for (Eigen::Index i = 0; i < diagonal.size(); ++i) {
    if (diagonal[i] < 0.0) throw std::invalid_argument("Hamiltonian entries must be non-negative");
    if (i > 0 && diagonal[i] <= diagonal[i - 1])
      throw std::invalid_argument("Hamiltonian entries must be strictly increasing");
  }
}

Eigen::MatrixXcd HamiltonianSpec::matrix() const {
  return diagonal.cast<Complex>().asDiagonal();
}

HamiltonianSpec HamiltonianSpec::default_for(int num_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  HamiltonianSpec h;
  h.diagonal = Eigen::VectorXd::LinSpaced(dim, 0.0, double(dim - 1)) / double(dim - 1);
  return h;
}

double vqsd_cost(const DensityMatrix& rho, const Ansatz& ansatz, const HamiltonianSpec& h) {
  h.validate();
  const Eigen::Index dim = rho.matrix.rows();
  if (dim != Eigen::Index(1) << ansatz.num_qubits || h.diagonal.size() != dim)
    throw std::invalid_argument("dimension mismatch");
  const Eigen::MatrixXcd rho_t = evolve_density(rho, ansatz.unitary(ansatz.params));
  double c = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) c += rho_t(i, i).real() * h.diagonal[i];
  return c;
}

VqsdResult vqsd_diagonalize(const DensityMatrix& rho, const Ansatz& shape,
                            const HamiltonianSpec& h, const OptimizerConfig& opt) {
  rho.validate();
  h.validate();
  const CostFn cost = [&](const Eigen::VectorXd& p) {
    Ansatz a = shape;
    a.params = p;
    return vqsd_cost(rho, a, h);
  };
  const GradFn grad = [&](const Eigen::VectorXd& p) {
    return parameter_shift_gradient(cost, p);
  };

  const OptimizeOutcome best = minimize(cost, grad, shape.param_count(), opt);

  VqsdResult result;
  result.ansatz = shape;
  result.ansatz.params = best.best_params;
  result.optimal_params = best.best_params;
  result.cost_trace = best.trace;

  const Eigen::MatrixXcd rho_t = evolve_density(rho, result.ansatz.unitary(best.best_params));
  result.eigenvalues.resize(rho_t.rows());
  for (Eigen::Index i = 0; i < rho_t.rows(); ++i)
    result.eigenvalues[i] = std::max(0.0, rho_t(i, i).real());
  result.residual = offdiagonal_mass(rho_t);
  result.converged = result.residual < kVqsdResidualTolerance;
  return result;
}

Eigen::MatrixXd build_sigma_power(const VqsdResult& result, double power, double cutoff) {
  if (power != 0.5 && power != -0.5)
    throw std::invalid_argument("power must be +1/2 or -1/2");
  const Eigen::VectorXd& lambda = result.eigenvalues;
  const double lambda_max = lambda.maxCoeff();
  if (lambda_max <= 0.0) throw std::invalid_argument("rank zero");

  Eigen::VectorXd powered = Eigen::VectorXd::Zero(lambda.size());
  int rank = 0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (power > 0.0) {
      powered[i] = std::sqrt(std::max(0.0, lambda[i]));
      ++rank;
    } else if (lambda[i] > cutoff * lambda_max) {
      powered[i] = 1.0 / std::sqrt(lambda[i]);
      ++rank;
    }
  }
  if (rank == 0) throw std::invalid_argument("rank zero");

  const Eigen::MatrixXcd u = result.ansatz.unitary(result.optimal_params);
  const Eigen::MatrixXcd sigma = u.adjoint() * powered.asDiagonal() * u;
  // rho is real symmetric, so its matrix powers are too; drop optimizer noise.
  Eigen::MatrixXd real = sigma.real();
  return (real + real.transpose()) / 2.0;
}

double vqls_cost_single(const Eigen::VectorXd& x, const Eigen::MatrixXd& sigma_half,
                        const StateVector& candidate) {
  if (sigma_half.rows() != sigma_half.cols() ||
      sigma_half.rows() != Eigen::Index(candidate.dim()) || x.size() != sigma_half.rows())
    throw std::invalid_argument("dimension mismatch");
  if (std::abs(x.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("target column must be unit norm");
  const VqlsTerms t = vqls_terms(x, sigma_half, candidate.to_eigen());
  if (t.image_norm2 <= 1e-300) throw std::runtime_error("zero denominator: Sigma^(1/2)|x> = 0");
  return 1.0 - std::abs(t.overlap) / std::sqrt(t.image_norm2);
}

double vqls_cost(const std::vector<Eigen::VectorXd>& target_cols,
                 const Eigen::MatrixXd& sigma_half, const StateVector& candidate) {
  if (target_cols.empty()) throw std::invalid_argument("no target columns");
  double acc = 0.0;
  for (const auto& x : target_cols)
    acc += 1.0 - vqls_cost_single(x, sigma_half, candidate);
  return 1.0 - acc / double(target_cols.size());
}

namespace {

// Multi-column form of the VQLS gradient; see vqls_gradient in the header.
Eigen::VectorXd vqls_gradient_impl(const std::vector<Eigen::VectorXd>& cols,
                                   const Eigen::MatrixXd& a, const Ansatz& shape,
                                   const Eigen::VectorXd& theta) {
  const double shift = M_PI / 2.0;
  const Eigen::Index nc = Eigen::Index(cols.size());

  auto terms_at = [&](const Eigen::VectorXd& p) {
    const Eigen::VectorXcd psi = shape.prepare(p).to_eigen();
    std::vector<VqlsTerms> t(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) t[j] = vqls_terms(cols[j], a, psi);
    return t;
  };

  const auto base = terms_at(theta);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(theta.size());
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    Eigen::VectorXd tp = theta, tm = theta;
    tp[k] += shift;
    tm[k] -= shift;
    const auto plus = terms_at(tp);
    const auto minus = terms_at(tm);
    double g = 0.0;
    for (Eigen::Index j = 0; j < nc; ++j) {
      const double e1 = std::norm(base[j].overlap);
      const double e2 = base[j].image_norm2;
      const double mag = std::sqrt(e1);
      if (mag > 1e-12 * std::sqrt(e2)) {
        const double de1 = (std::norm(plus[j].overlap) - std::norm(minus[j].overlap)) / 2.0;
        const double de2 = (plus[j].image_norm2 - minus[j].image_norm2) / 2.0;
        // d/dtheta [ -|g|/sqrt(E2) ]
        g += -(de1 / (2.0 * mag * std::sqrt(e2)) - mag * de2 / (2.0 * std::pow(e2, 1.5)));
      } else {
        // At the |<x|A psi>| = 0 kink the chain rule is singular; use the
        // two-point difference of the cost itself, which stays finite.
        const double lp = -std::abs(plus[j].overlap) / std::sqrt(plus[j].image_norm2);
        const double lm = -std::abs(minus[j].overlap) / std::sqrt(minus[j].image_norm2);
        g += (lp - lm) / 2.0;
      }
    }
    grad[k] = g / double(nc);
  }
  return grad;
}

VqlsResult vqls_solve_impl(const std::vector<Eigen::VectorXd>& cols,
                           const Eigen::MatrixXd& sigma_half, const Ansatz& shape,
                           const OptimizerConfig& opt) {
  const CostFn cost = [&](const Eigen::VectorXd& p) {
    return vqls_cost(cols, sigma_half, shape.prepare(p));
  };
  const GradFn grad = [&](const Eigen::VectorXd& p) {
    return vqls_gradient_impl(cols, sigma_half, shape, p);
  };

  const OptimizeOutcome best = minimize(cost, grad, shape.param_count(), opt);

  VqlsResult result;
  result.ansatz = shape;
  result.ansatz.params = best.best_params;
  result.optimal_params = best.best_params;
  result.final_cost = best.best_cost;
  result.cost_trace = best.trace;
  result.converged = best.best_cost < kVqlsCostTolerance;

  StateVector solution = shape.prepare(best.best_params);
  // Canonical global phase: align A|solution> with +x of the first column.
  const VqlsTerms t = vqls_terms(cols[0], sigma_half, solution.to_eigen());
  if (std::abs(t.overlap) > 1e-14) {
    const Complex phase = std::conj(t.overlap) / std::abs(t.overlap);
    for (auto& amp : solution.amplitudes()) amp *= phase;
  }
  result.solution_state = std::move(solution);
  return result;
}

}  // namespace

VqlsResult vqls_solve(const Eigen::VectorXd& x, const Eigen::MatrixXd& sigma_half,
                      const Ansatz& shape, const OptimizerConfig& opt) {
  if (std::abs(x.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("target column must be unit norm");

  VqlsResult result = vqls_solve_impl({x}, sigma_half, shape, opt);

  // Dense pseudo-inverse solve as the oracle, on the retained eigenspace.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma_half);
  const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
  if (lmax > 0.0) {
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < inv.size(); ++i)
      if (std::abs(es.eigenvalues()[i]) > 1e-12 * lmax) inv[i] = 1.0 / es.eigenvalues()[i];
    Eigen::VectorXd oracle =
        es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose() * x;
    if (oracle.norm() > 0.0) {
      const StateVector oracle_state =
          amplitude_encode(oracle, qubits_for_dimension(oracle.size()));
      result.fidelity_vs_oracle = result.solution_state.fidelity(oracle_state);
    }
  }
  return result;
}

Eigen::VectorXd vqls_gradient(const Eigen::VectorXd& x, const Eigen::MatrixXd& sigma_half,
                              const Ansatz& shape, const Eigen::VectorXd& params) {
  return vqls_gradient_impl({x}, sigma_half, shape, params);
}

Eigen::VectorXd parameter_shift_gradient(const std::function<double(const Eigen::VectorXd&)>& cost,
                                         const Eigen::VectorXd& params, double shift) {
  if (std::abs(std::sin(shift)) < 1e-12) throw std::invalid_argument("degenerate shift");
  Eigen::VectorXd grad(params.size());
  const double denom = 2.0 * std::sin(shift);
  for (Eigen::Index k = 0; k < params.size(); ++k) {
    Eigen::VectorXd tp = params, tm = params;
    tp[k] += shift;
    tm[k] -= shift;
    grad[k] = (cost(tp) - cost(tm)) / denom;
  }
  return grad;
}

DensityMatrix data_density_matrix(const Eigen::MatrixXd& features) {
  if (features.size() == 0 || features.norm() <= 0.0) throw std::invalid_argument("zero matrix");
  const int feature_qubits = qubits_for_dimension(features.rows());
  const int index_qubits = qubits_for_dimension(features.cols());
  const Eigen::Index fdim = Eigen::Index(1) << feature_qubits;

  // |psi_X> = sum_i |i>|x_i> / |X|_F with the index register in front.
  Eigen::VectorXd flat = Eigen::VectorXd::Zero((Eigen::Index(1) << index_qubits) * fdim);
  for (Eigen::Index i = 0; i < features.cols(); ++i)
    flat.segment(i * fdim, features.rows()) = features.col(i);
  const StateVector psi = amplitude_encode(flat, index_qubits + feature_qubits);

  std::vector<int> keep;
  for (int q = index_qubits; q < index_qubits + feature_qubits; ++q) keep.push_back(q);
  return partial_trace(psi, keep);
}

VqdacRun vqdac_classify(const Dataset& source, const Dataset& target,
                        const VqdacOptions& options) {
  source.validate();
  target.validate();
  if (source.dim() != target.dim()) throw std::invalid_argument("domain dimensions differ");

  const DomainStats stats_s = compute_domain_stats(source);
  const DomainStats stats_t = compute_domain_stats(target);
  const DaClassifier clf = make_da_classifier(stats_s, stats_t, options.eigen_cutoff);

  const Eigen::Index d = source.dim();
  const int q = qubits_for_dimension(d);
  const Eigen::Index pad = Eigen::Index(1) << q;
  const Ansatz shape = Ansatz::create(q, options.ansatz_layers);
  const HamiltonianSpec h = HamiltonianSpec::default_for(q);

  VqdacRun run;

  // Step 1: state preparation; Step 2: diagonalize both domains.
  const DensityMatrix rho_s = data_density_matrix(source.features);
  const DensityMatrix rho_t = data_density_matrix(target.features);
  OptimizerConfig opt_s = options.optimizer;
  opt_s.seed = derive_seed(options.seed, 11);
  OptimizerConfig opt_t = options.optimizer;
  opt_t.seed = derive_seed(options.seed, 12);
  run.vqsd_source = vqsd_diagonalize(rho_s, shape, h, opt_s);
  run.vqsd_target = vqsd_diagonalize(rho_t, shape, h, opt_t);
  run.all_converged = run.vqsd_source.converged && run.vqsd_target.converged;

  const Eigen::MatrixXd a_s = build_sigma_power(run.vqsd_source, 0.5, options.eigen_cutoff);
  const Eigen::MatrixXd a_t = build_sigma_power(run.vqsd_target, 0.5, options.eigen_cutoff);

  auto pad_vector = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(pad);
    p.head(v.size()) = v;
    return p;
  };

  // Step 3: weight state.
  const Eigen::VectorXd delta = stats_s.mean_difference();
  if (delta.norm() <= 1e-14) throw std::invalid_argument("coincident class means");
  OptimizerConfig opt_w = options.optimizer;
  opt_w.seed = derive_seed(options.seed, 13);
  const VqlsResult w_res = vqls_solve(pad_vector(delta).normalized(), a_s, shape, opt_w);
  run.all_converged = run.all_converged && w_res.converged;
  const StateVector& w_state = w_res.solution_state;
  {
    const Eigen::VectorXd w_oracle = clf.weight;
    if (w_oracle.norm() > 0.0)
      run.weight_fidelity = w_state.fidelity(amplitude_encode(pad_vector(w_oracle), q));
  }

  // Class-mean states for the two-swap readout.
  StateVector m0_state(1), m1_state(1);
  if (options.readout == ReadoutMode::two_swap) {
    OptimizerConfig o0 = options.optimizer;
    o0.seed = derive_seed(options.seed, 14);
    OptimizerConfig o1 = options.optimizer;
    o1.seed = derive_seed(options.seed, 15);
    m0_state = vqls_solve(pad_vector(*stats_s.mean0).normalized(), a_s, shape, o0).solution_state;
    m1_state = vqls_solve(pad_vector(*stats_s.mean1).normalized(), a_s, shape, o1).solution_state;
  }

  // Shared-solution mode: one candidate trained on the averaged cost.
  std::optional<StateVector> shared_state;
  if (options.shared_solution) {
    std::vector<Eigen::VectorXd> cols;
    for (Eigen::Index j = 0; j < target.count(); ++j) {
      Eigen::VectorXd x = pad_vector(target.features.col(j));
      if (x.norm() <= 0.0) throw std::runtime_error("zero target column");
      cols.push_back(x.normalized());
    }
    OptimizerConfig o = options.optimizer;
    o.seed = derive_seed(options.seed, 16);
    VqlsResult shared = vqls_solve_impl(cols, a_t, shape, o);
    run.all_converged = run.all_converged && shared.converged;
    shared_state = shared.solution_state;
  }

  const Eigen::Index n = target.count();
  run.samples.reserve(std::size_t(n));
  run.labels.resize(n);
  double agree = 0.0, fid_sum = 0.0;

  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::VectorXd x = target.features.col(j);
    VqdacSample s;
    s.index = int(j);
    s.oracle_score = classical_score(clf, x);
    s.oracle_label = label_for(s.oracle_score);

    StateVector x_state(1);
    if (shared_state) {
      x_state = *shared_state;
      s.vqls_cost = vqls_cost_single(pad_vector(x).normalized(), a_t, x_state);
    } else {
      OptimizerConfig o = options.optimizer;
      o.seed = derive_seed(options.seed, 100 + std::uint64_t(j));
      const VqlsResult res = vqls_solve(pad_vector(x).normalized(), a_t, shape, o);
      run.all_converged = run.all_converged && res.converged;
      x_state = res.solution_state;
      s.vqls_cost = res.final_cost;
    }

    const Eigen::VectorXd oracle_vec = whiten(clf.whitener_target, x);
    if (oracle_vec.norm() > 0.0)
      s.fidelity = x_state.fidelity(amplitude_encode(pad_vector(oracle_vec), q));

    if (options.readout == ReadoutMode::hadamard) {
      const auto ov = overlap_score(w_state, x_state, OverlapMode::hadamard_test, options.shots,
                                    derive_seed(options.seed, 200 + std::uint64_t(j)));
      s.quantum_score = ov.score;
      s.quantum_label = label_for(ov.score);
    } else {
      const auto o0 = overlap_score(m0_state, x_state, OverlapMode::swap_test, options.shots,
                                    derive_seed(options.seed, 300 + 2 * std::uint64_t(j)));
      const auto o1 = overlap_score(m1_state, x_state, OverlapMode::swap_test, options.shots,
                                    derive_seed(options.seed, 300 + 2 * std::uint64_t(j) + 1));
      s.quantum_score = o1.score - o0.score;
      s.quantum_label = o1.score > o0.score ? 1 : 0;
    }

    run.labels[j] = s.quantum_label;
    agree += (s.quantum_label == s.oracle_label) ? 1.0 : 0.0;
    fid_sum += s.fidelity;
    run.samples.push_back(s);
  }

  run.agreement_rate = agree / double(n);
  run.mean_fidelity = fid_sum / double(n);
  return run;
}

}  // namespace qda
