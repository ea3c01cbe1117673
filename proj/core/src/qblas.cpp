#include "qda/qblas.hpp"

#include <cmath>
#include <stdexcept>

#include "qda/rng.hpp"

namespace qda {

namespace {

// Spectral building blocks of exp(i X~ t p) for integer powers p.
struct Evolution {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd eigenvalues;

  explicit Evolution(const HermitianExtension& ext) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ext.matrix);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    vectors = es.eigenvectors();
    eigenvalues = es.eigenvalues();
  }

  double sigma_max() const { return eigenvalues.cwiseAbs().maxCoeff(); }

  Eigen::MatrixXcd power(double t, double p) const {
    Eigen::VectorXcd phases(eigenvalues.size());
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
      phases[i] = std::polar(1.0, eigenvalues[i] * t * p);
    return (vectors.cast<Complex>() * phases.asDiagonal()) * vectors.transpose().cast<Complex>();
  }
};

void check_layout(const StateVector& state, const PhaseConfig& cfg) {
  if (state.num_qubits() <= cfg.clock_bits + 1)
    throw std::invalid_argument("state too small for clock + ancilla + system layout");
}

std::vector<int> system_wires(const StateVector& state, const PhaseConfig& cfg) {
  std::vector<int> wires;
  for (int q = cfg.system_first(); q < state.num_qubits(); ++q) wires.push_back(q);
  return wires;
}

StateVector qpe_direction(const HermitianExtension& ext, const StateVector& state,
                          const PhaseConfig& cfg, bool inverse) {
  check_layout(state, cfg);
  const int system_count = state.num_qubits() - cfg.system_first();
  if ((Eigen::Index(1) << system_count) != ext.matrix.rows())
    throw std::invalid_argument("extension does not match system register");
  if (cfg.clock_bits < 1) throw std::invalid_argument("clock register needs at least one qubit");
  if (cfg.evolution_time <= 0.0) throw std::invalid_argument("evolution time must be positive");

  Evolution evo(ext);
  if (evo.sigma_max() * cfg.evolution_time / (2.0 * M_PI) >= 0.5 * (1.0 - 1e-12))
    throw std::invalid_argument("phase wraparound: sigma_max * t / 2pi >= 1/2");

  const auto wires = system_wires(state, cfg);
  StateVector current = state;

  if (!inverse) {
    for (int j = 0; j < cfg.clock_bits; ++j) current = apply(current, Gate::h(j));
    for (int j = 0; j < cfg.clock_bits; ++j) {
      const double p = double(std::uint64_t(1) << (cfg.clock_bits - 1 - j));
      current = apply(current,
                      Gate::controlled_unitary(evo.power(cfg.evolution_time, p), wires, {j}));
    }
    current = apply(current, Gate::iqft(0, cfg.clock_bits));
  } else {
    current = apply(current, Gate::qft(0, cfg.clock_bits));
    for (int j = cfg.clock_bits - 1; j >= 0; --j) {
      const double p = double(std::uint64_t(1) << (cfg.clock_bits - 1 - j));
      current = apply(current,
                      Gate::controlled_unitary(evo.power(cfg.evolution_time, -p), wires, {j}));
    }
    for (int j = 0; j < cfg.clock_bits; ++j) current = apply(current, Gate::h(j));
  }
  return current;
}

}  // namespace

HermitianExtension hermitian_extend(const Eigen::MatrixXd& x) {
  if (x.size() == 0 || x.norm() <= 0.0) throw std::invalid_argument("zero matrix");
  const Eigen::Index d = x.rows(), n = x.cols();
  const int qubits = qubits_for_dimension(d + n);
  const Eigen::Index dim = Eigen::Index(1) << qubits;

  HermitianExtension ext;
  ext.matrix = Eigen::MatrixXd::Zero(dim, dim);
  ext.matrix.block(0, d, d, n) = x;
  ext.matrix.block(d, 0, n, d) = x.transpose();
  ext.rows = d;
  ext.cols = n;
  ext.system_qubits = qubits;
  return ext;
}

SpectralData compute_spectral_data(const Eigen::MatrixXd& x) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SpectralData s;
  s.singular_values = svd.singularValues();
  s.left_vectors = svd.matrixU();
  s.right_vectors = svd.matrixV();
  s.betas = s.left_vectors.transpose() * x;
  return s;
}

PhaseConfig make_phase_config(const SpectralData& spectral, int clock_bits, double eigen_cutoff,
                              double gamma_fraction, double phase_headroom,
                              double postselect_tolerance) {
  if (clock_bits < 1) throw std::invalid_argument("clock register needs at least one qubit");
  if (phase_headroom <= 0.0 || phase_headroom >= 0.5)
    throw std::invalid_argument("phase headroom must lie in (0, 1/2)");
  if (gamma_fraction <= 0.0 || gamma_fraction > 1.0)
    throw std::invalid_argument("gamma fraction must lie in (0, 1]");

  const double sigma_max = spectral.singular_values.size() ? spectral.singular_values[0] : 0.0;
  if (sigma_max <= 0.0) throw std::invalid_argument("spectrum is empty");
  const double sigma_floor = std::sqrt(eigen_cutoff) * sigma_max;
  double sigma_min = sigma_max;
  for (Eigen::Index i = 0; i < spectral.singular_values.size(); ++i) {
    const double s = spectral.singular_values[i];
    if (s > sigma_floor) sigma_min = s;
  }

  PhaseConfig cfg;
  cfg.clock_bits = clock_bits;
  cfg.evolution_time = 2.0 * M_PI * phase_headroom / sigma_max;
  cfg.gamma = gamma_fraction * sigma_min;
  cfg.postselect_tolerance = postselect_tolerance;
  return cfg;
}

StateVector embed_data_state(const HermitianExtension& ext, const Eigen::VectorXd& v) {
  if (v.size() != ext.rows) throw std::invalid_argument("vector dimension mismatch");
  Eigen::VectorXd padded = Eigen::VectorXd::Zero(ext.matrix.rows());
  padded.head(v.size()) = v;
  return amplitude_encode(padded, ext.system_qubits);
}

StateVector make_pipeline_state(const PhaseConfig& cfg, const StateVector& system_state) {
  const int total = cfg.clock_bits + 1 + system_state.num_qubits();
  if (total > kMaxQubits) throw std::invalid_argument("exceeds simulator cap of 20 qubits");
  std::vector<Complex> amps(std::size_t(1) << total, Complex(0, 0));
  for (std::size_t i = 0; i < system_state.dim(); ++i) amps[i] = system_state.amplitude(i);
  return StateVector::from_amplitudes(std::move(amps));
}

StateVector qpe(const HermitianExtension& ext, const StateVector& state, const PhaseConfig& cfg) {
  return qpe_direction(ext, state, cfg, false);
}

StateVector qpe_inverse(const HermitianExtension& ext, const StateVector& state,
                        const PhaseConfig& cfg) {
  return qpe_direction(ext, state, cfg, true);
}

StateVector conditioned_rotation(const StateVector& state, int clock_first, int clock_bits,
                                 const PhaseConfig& cfg) {
  if (clock_first != 0 || clock_bits != cfg.clock_bits)
    throw std::invalid_argument("clock register must match the pipeline layout");
  check_layout(state, cfg);
  if (cfg.gamma <= 0.0) throw std::invalid_argument("gamma must be positive");

  const int nq = state.num_qubits();
  const int anc = cfg.ancilla_wire();
  const std::size_t anc_mask = std::size_t(1) << (nq - 1 - anc);
  const std::uint64_t t_values = cfg.clock_values();
  const int clock_shift = nq - clock_bits;

  // Ancilla precondition.
  if (register_probabilities(state, anc, 1)[1] > 1e-9)
    throw std::invalid_argument("ancilla must start in |0>");

  // Per clock value: recovered |sigma| and rotation half-angle terms.
  std::vector<double> cos_half(t_values, 1.0), sin_half(t_values, 0.0);
  std::vector<bool> rotated(t_values, false);
  for (std::uint64_t y = 1; y < t_values; ++y) {
    const double signed_fraction =
        (y < t_values / 2) ? double(y) / double(t_values)
                           : (double(y) - double(t_values)) / double(t_values);
    const double sigma = std::abs(signed_fraction) * 2.0 * M_PI / cfg.evolution_time;
    if (sigma < cfg.gamma * (1.0 - 1e-12)) continue;  // filtered
    const double ratio = std::min(1.0, cfg.gamma / sigma);
    const double half = std::asin(ratio);
    cos_half[y] = std::cos(half);
    sin_half[y] = std::sin(half);
    rotated[y] = true;
  }

  // Reject configurations that would filter most of the populated spectrum.
  const auto clock_probs = register_probabilities(state, 0, clock_bits);
  double filtered_mass = 0.0, rotated_mass = 0.0;
  for (std::uint64_t y = 1; y < t_values; ++y)
    (rotated[y] ? rotated_mass : filtered_mass) += clock_probs[y];
  if (filtered_mass > rotated_mass && filtered_mass > 1e-12)
    throw std::runtime_error("gamma exceeds singular value");

  std::vector<Complex> amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & anc_mask) != 0) continue;
    const std::uint64_t y = i >> clock_shift;
    if (!rotated[y]) continue;
    const std::size_t j = i | anc_mask;
    const Complex a0 = amps[i], a1 = amps[j];
    amps[i] = cos_half[y] * a0 - sin_half[y] * a1;
    amps[j] = sin_half[y] * a0 + cos_half[y] * a1;
  }
  return StateVector::from_amplitudes(std::move(amps));
}

PostselectionResult uncompute_and_postselect(const StateVector& state,
                                             const HermitianExtension& ext,
                                             const PhaseConfig& cfg) {
  StateVector uncomputed = qpe_inverse(ext, state, cfg);
  const double success = register_probabilities(uncomputed, cfg.ancilla_wire(), 1)[1];
  if (success < cfg.postselect_tolerance) throw std::runtime_error("postselection starved");
  auto [projected, kept] = project_register(uncomputed, cfg.ancilla_wire(), 1, 1);
  return PostselectionResult{std::move(projected), kept};
}

PostselectionResult apply_u_m(const Eigen::MatrixXd& x, const StateVector& system_input,
                              const PhaseConfig& cfg) {
  const HermitianExtension ext = hermitian_extend(x);
  if (system_input.num_qubits() != ext.system_qubits)
    throw std::invalid_argument("input state does not match extension register");
  StateVector state = make_pipeline_state(cfg, system_input);
  state = qpe(ext, state, cfg);
  state = conditioned_rotation(state, 0, cfg.clock_bits, cfg);
  return uncompute_and_postselect(state, ext, cfg);
}

std::pair<StateVector, double> extract_system_state(const PostselectionResult& result,
                                                    const PhaseConfig& cfg) {
  // Clock = 0, ancilla = 1 as one register value.
  return condition_on(result.state, 0, cfg.clock_bits + 1, 1);
}

std::pair<StateVector, double> project_feature_state(const StateVector& system_state,
                                                     Eigen::Index dim) {
  if (dim < 1 || dim > Eigen::Index(system_state.dim()))
    throw std::invalid_argument("feature dimension out of range");
  Eigen::VectorXcd block(dim);
  for (Eigen::Index i = 0; i < dim; ++i) block[i] = system_state.amplitude(std::size_t(i));
  double total = 0.0;
  for (std::size_t i = 0; i < system_state.dim(); ++i)
    total += std::norm(system_state.amplitude(i));
  const double weight = block.squaredNorm() / total;
  if (block.norm() <= 0.0) throw std::runtime_error("feature block has zero support");
  return {amplitude_encode(block, qubits_for_dimension(dim)), weight};
}

PostselectionResult prepare_weight_state(const Dataset& source, const PhaseConfig& cfg) {
  const DomainStats stats = compute_domain_stats(source);
  const Eigen::VectorXd delta = stats.mean_difference();
  if (delta.norm() <= 1e-14) throw std::invalid_argument("coincident class means");
  const HermitianExtension ext = hermitian_extend(source.features);
  return apply_u_m(source.features, embed_data_state(ext, delta), cfg);
}

QblasRun qblas_classify(const Dataset& source, const Dataset& target,
                        const QblasOptions& options) {
  source.validate();
  target.validate();
  if (source.dim() != target.dim()) throw std::invalid_argument("domain dimensions differ");

  const DomainStats stats_s = compute_domain_stats(source);
  const DomainStats stats_t = compute_domain_stats(target);
  const DaClassifier clf = make_da_classifier(stats_s, stats_t, options.eigen_cutoff);

  const SpectralData spec_s = compute_spectral_data(source.features);
  const SpectralData spec_t = compute_spectral_data(target.features);
  const PhaseConfig cfg_s =
      make_phase_config(spec_s, options.clock_bits, options.eigen_cutoff, options.gamma_fraction,
                        options.phase_headroom, options.postselect_tolerance);
  const PhaseConfig cfg_t =
      make_phase_config(spec_t, options.clock_bits, options.eigen_cutoff, options.gamma_fraction,
                        options.phase_headroom, options.postselect_tolerance);

  const Eigen::Index d = source.dim();
  const int feature_qubits = qubits_for_dimension(d);

  // Weight state and its oracle direction.
  const PostselectionResult w_res = prepare_weight_state(source, cfg_s);
  const auto [w_system, w_clock_weight] = extract_system_state(w_res, cfg_s);
  const auto [w_state, w_feature_weight] = project_feature_state(w_system, d);
  const StateVector w_oracle = amplitude_encode(Eigen::VectorXd(clf.weight), feature_qubits);

  QblasRun run;
  run.weight_fidelity = w_state.fidelity(w_oracle);
  run.weight_success_probability = w_res.success_probability;

  // Whitened class-mean states for the magnitude-only two-swap readout.
  StateVector m0_state(1), m1_state(1);
  if (options.readout == ReadoutMode::two_swap) {
    const HermitianExtension ext_s = hermitian_extend(source.features);
    const PostselectionResult r0 =
        apply_u_m(source.features, embed_data_state(ext_s, *stats_s.mean0), cfg_s);
    const PostselectionResult r1 =
        apply_u_m(source.features, embed_data_state(ext_s, *stats_s.mean1), cfg_s);
    m0_state = project_feature_state(extract_system_state(r0, cfg_s).first, d).first;
    m1_state = project_feature_state(extract_system_state(r1, cfg_s).first, d).first;
  }

  const Eigen::Index n = target.count();
  const HermitianExtension ext_t = hermitian_extend(target.features);
  run.samples.reserve(std::size_t(n));
  run.labels.resize(n);
  double agree = 0.0, fid_sum = 0.0;

  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::VectorXd x = target.features.col(j);
    QblasSample s;
    s.index = int(j);
    s.oracle_score = classical_score(clf, x);
    s.oracle_label = label_for(s.oracle_score);

    const PostselectionResult res = apply_u_m(target.features, embed_data_state(ext_t, x), cfg_t);
    const auto [sys_state, clock_weight] = extract_system_state(res, cfg_t);
    const auto [x_state, feature_weight] = project_feature_state(sys_state, d);
    s.success_probability = res.success_probability;

    const Eigen::VectorXd oracle_vec = whiten(clf.whitener_target, x);
    if (oracle_vec.norm() > 0.0) {
      s.fidelity = x_state.fidelity(amplitude_encode(oracle_vec, feature_qubits));
    }

    if (options.readout == ReadoutMode::hadamard) {
      const auto ov = overlap_score(w_state, x_state, OverlapMode::hadamard_test, options.shots,
                                    derive_seed(options.seed, std::uint64_t(j)));
      s.quantum_score = ov.score;
      s.quantum_label = label_for(ov.score);
    } else {
      const auto o0 = overlap_score(m0_state, x_state, OverlapMode::swap_test, options.shots,
                                    derive_seed(options.seed, 2 * std::uint64_t(j)));
      const auto o1 = overlap_score(m1_state, x_state, OverlapMode::swap_test, options.shots,
                                    derive_seed(options.seed, 2 * std::uint64_t(j) + 1));
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
