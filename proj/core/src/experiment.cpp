#include "qda/experiment.hpp"

#include <ctime>
#include <fstream>

#include "json.hpp"
#include "qda/csv.hpp"
#include "qda/report.hpp"
#include "qda/rng.hpp"

namespace qda {

using nlohmann::ordered_json;

PipelineChoice parse_pipeline(const std::string& name) {
  if (name == "classical") return PipelineChoice::classical;
  if (name == "qblas") return PipelineChoice::qblas;
  if (name == "vqdac") return PipelineChoice::vqdac;
  if (name == "all") return PipelineChoice::all;
  throw UsageError("unknown pipeline: " + name);
}

ReadoutMode parse_readout(const std::string& name) {
  if (name == "hadamard") return ReadoutMode::hadamard;
  if (name == "two_swap") return ReadoutMode::two_swap;
  throw UsageError("unknown readout: " + name);
}

OptimizerMethod parse_optimizer(const std::string& name) {
  if (name == "gradient_descent") return OptimizerMethod::gradient_descent;
  if (name == "spsa") return OptimizerMethod::spsa;
  throw UsageError("unknown optimizer: " + name);
}

void ExperimentConfig::validate() const {
  if (!use_generator && (source_path.empty() || target_path.empty()))
    throw UsageError("need --source and --target CSVs, or --generate");
  if (clock_bits < 1 || clock_bits > 12) throw UsageError("clock bits must lie in [1, 12]");
  if (eigen_cutoff < 0.0) throw UsageError("eigen cutoff must be non-negative");
  if (gamma_fraction <= 0.0 || gamma_fraction > 1.0)
    throw UsageError("gamma fraction must lie in (0, 1]");
  if (phase_headroom <= 0.0 || phase_headroom >= 0.5)
    throw UsageError("phase headroom must lie in (0, 0.5)");
  if (ansatz_layers < 1) throw UsageError("ansatz layers must be at least 1");
  if (learning_rate <= 0.0) throw UsageError("learning rate must be positive");
  if (max_iters < 1) throw UsageError("max iterations must be at least 1");
  if (restarts < 1) throw UsageError("restarts must be at least 1");
  if (shots && *shots < 1) throw UsageError("shots must be at least 1");
  if (use_generator) {
    if (generator.dim < 2) throw UsageError("generator dim must be at least 2");
    if (generator.n_source < 2 || generator.n_target < 2)
      throw UsageError("generator sample counts must be at least 2");
    if (generator.class_gap <= 0.0) throw UsageError("class gap must be positive");
  }
}

SyntheticSpec benchmark_spec() {
  SyntheticSpec spec;
  spec.dim = 2;
  spec.n_source = 40;
  spec.n_target = 40;
  spec.class_gap = 4.0;
  spec.shift_angle = M_PI / 6.0;
  spec.shift_scale = Eigen::VectorXd(2);
  spec.shift_scale << 1.0, 2.0;
  spec.seed = 42;
  return spec;
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

ordered_json config_echo(const ExperimentConfig& c) {
  ordered_json j;
  switch (c.pipeline) {
    case PipelineChoice::classical: j["pipeline"] = "classical"; break;
    case PipelineChoice::qblas: j["pipeline"] = "qblas"; break;
    case PipelineChoice::vqdac: j["pipeline"] = "vqdac"; break;
    case PipelineChoice::all: j["pipeline"] = "all"; break;
  }
  j["source"] = c.source_path;
  j["target"] = c.target_path;
  j["truth"] = c.truth_path;
  j["use_generator"] = c.use_generator;
  if (c.use_generator) {
    ordered_json g;
    g["dim"] = c.generator.dim;
    g["n_source"] = c.generator.n_source;
    g["n_target"] = c.generator.n_target;
    g["class_gap"] = c.generator.class_gap;
    g["shift_angle"] = c.generator.shift_angle;
    g["shift_scale"] = std::vector<double>(
        c.generator.shift_scale.data(),
        c.generator.shift_scale.data() + c.generator.shift_scale.size());
    g["seed"] = c.generator.seed;
    j["generator"] = g;
  }
  j["clock_bits"] = c.clock_bits;
  j["eigen_cutoff"] = c.eigen_cutoff;
  j["gamma_fraction"] = c.gamma_fraction;
  j["phase_headroom"] = c.phase_headroom;
  j["postselect_tolerance"] = c.postselect_tolerance;
  j["ansatz_layers"] = c.ansatz_layers;
  j["optimizer"] = c.optimizer_method == OptimizerMethod::gradient_descent ? "gradient_descent"
                                                                           : "spsa";
  j["learning_rate"] = c.learning_rate;
  j["max_iters"] = c.max_iters;
  j["restarts"] = c.restarts;
  j["convergence_tol"] = c.convergence_tol;
  j["vqls_shared"] = c.vqls_shared;
  j["readout"] = c.readout == ReadoutMode::hadamard ? "hadamard" : "two_swap";
  if (c.shots)
    j["shots"] = *c.shots;
  else
    j["shots"] = nullptr;
  j["seed"] = c.seed;
  j["output"] = c.output_path;
  return j;
}

ordered_json sample_entry(int index, double oracle_score, int oracle_label) {
  ordered_json s;
  s["index"] = index;
  s["oracle_score"] = oracle_score;
  s["oracle_label"] = oracle_label;
  s["quantum_score"] = nullptr;
  s["quantum_label"] = nullptr;
  s["fidelity"] = nullptr;
  s["success_probability"] = nullptr;
  return s;
}

ordered_json aggregates_entry() {
  ordered_json a;
  a["agreement_rate"] = nullptr;
  a["mean_fidelity"] = nullptr;
  a["vqsd_residuals"] = ordered_json::array();
  a["cost_traces"] = ordered_json::object();
  return a;
}

double accuracy(const Eigen::VectorXi& predicted, const Eigen::VectorXi& truth) {
  double hits = 0.0;
  for (Eigen::Index i = 0; i < truth.size(); ++i)
    if (predicted[i] == truth[i]) hits += 1.0;
  return hits / double(truth.size());
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
  config.validate();

  Dataset source, target;
  std::optional<Eigen::VectorXi> truth;
  if (config.use_generator) {
    SyntheticDomains domains = generate_synthetic_domains(config.generator);
    source = std::move(domains.source);
    target = std::move(domains.target);
    truth = domains.target_truth;
  } else {
    source = read_dataset_csv(config.source_path);
    target = read_dataset_csv(config.target_path);
    if (source.tag != DomainTag::source) throw std::runtime_error("source CSV has no labels");
    if (target.tag != DomainTag::target)
      throw std::runtime_error("target CSV must be unlabeled");
    if (!config.truth_path.empty()) {
      truth = read_truth_csv(config.truth_path);
      if (truth->size() != target.count())
        throw std::runtime_error("truth sidecar length does not match target");
    }
  }

  const DomainStats stats_s = compute_domain_stats(source);
  const DomainStats stats_t = compute_domain_stats(target);
  const DaClassifier clf = make_da_classifier(stats_s, stats_t, config.eigen_cutoff);

  const Eigen::Index n = target.count();
  Eigen::VectorXd oracle_scores(n);
  Eigen::VectorXi oracle_labels(n), non_adapted_labels(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    oracle_scores[j] = classical_score(clf, target.features.col(j));
    oracle_labels[j] = label_for(oracle_scores[j]);
    non_adapted_labels[j] = label_for(non_adapted_score(clf, target.features.col(j)));
  }

  ExperimentOutcome outcome;

  ordered_json report;
  report["schema"] = kReportSchemaVersion;
  {
    ordered_json prov;
    prov["config"] = config_echo(config);
    prov["seed"] = config.seed;
    prov["version"] = kProjectVersion;
    prov["timestamp"] = utc_timestamp();
    report["provenance"] = prov;
  }
  {
    ordered_json oracle;
    if (truth) {
      outcome.oracle_accuracy = accuracy(oracle_labels, *truth);
      outcome.non_adapted_accuracy = accuracy(non_adapted_labels, *truth);
      oracle["target_accuracy"] = *outcome.oracle_accuracy;
      oracle["non_adapted_accuracy"] = *outcome.non_adapted_accuracy;
      oracle["adaptation_gain"] = *outcome.oracle_accuracy - *outcome.non_adapted_accuracy;
    } else {
      oracle["target_accuracy"] = nullptr;
      oracle["non_adapted_accuracy"] = nullptr;
      oracle["adaptation_gain"] = nullptr;
    }
    report["oracle"] = oracle;
  }

  ordered_json results = ordered_json::object();
  const bool want_classical =
      config.pipeline == PipelineChoice::classical || config.pipeline == PipelineChoice::all;
  const bool want_qblas =
      config.pipeline == PipelineChoice::qblas || config.pipeline == PipelineChoice::all;
  const bool want_vqdac =
      config.pipeline == PipelineChoice::vqdac || config.pipeline == PipelineChoice::all;

  if (want_classical) {
    ordered_json section;
    section["per_sample"] = ordered_json::array();
    for (Eigen::Index j = 0; j < n; ++j)
      section["per_sample"].push_back(sample_entry(int(j), oracle_scores[j], oracle_labels[j]));
    section["aggregates"] = aggregates_entry();
    results["classical"] = section;
  }

  if (want_qblas) {
    QblasOptions opt;
    opt.clock_bits = config.clock_bits;
    opt.eigen_cutoff = config.eigen_cutoff;
    opt.gamma_fraction = config.gamma_fraction;
    opt.phase_headroom = config.phase_headroom;
    opt.postselect_tolerance = config.postselect_tolerance;
    opt.readout = config.readout;
    opt.shots = config.shots;
    opt.seed = derive_seed(config.seed, 1);
    const QblasRun run = qblas_classify(source, target, opt);

    ordered_json section;
    section["per_sample"] = ordered_json::array();
    for (const QblasSample& s : run.samples) {
      ordered_json e = sample_entry(s.index, s.oracle_score, s.oracle_label);
      e["quantum_score"] = s.quantum_score;
      e["quantum_label"] = s.quantum_label;
      e["fidelity"] = s.fidelity;
      e["success_probability"] = s.success_probability;
      section["per_sample"].push_back(e);
    }
    ordered_json agg = aggregates_entry();
    agg["agreement_rate"] = run.agreement_rate;
    agg["mean_fidelity"] = run.mean_fidelity;
    agg["weight_fidelity"] = run.weight_fidelity;
    agg["weight_success_probability"] = run.weight_success_probability;
    section["aggregates"] = agg;
    results["qblas"] = section;
    outcome.qblas = run;
  }

  if (want_vqdac) {
    VqdacOptions opt;
    opt.ansatz_layers = config.ansatz_layers;
    opt.eigen_cutoff = config.eigen_cutoff;
    opt.optimizer.method = config.optimizer_method;
    opt.optimizer.learning_rate = config.learning_rate;
    opt.optimizer.max_iters = config.max_iters;
    opt.optimizer.restarts = config.restarts;
    opt.optimizer.convergence_tol = config.convergence_tol;
    opt.readout = config.readout;
    opt.shared_solution = config.vqls_shared;
    opt.shots = config.shots;
    opt.seed = derive_seed(config.seed, 2);
    opt.optimizer.seed = opt.seed;
    const VqdacRun run = vqdac_classify(source, target, opt);

    ordered_json section;
    section["per_sample"] = ordered_json::array();
    for (const VqdacSample& s : run.samples) {
      ordered_json e = sample_entry(s.index, s.oracle_score, s.oracle_label);
      e["quantum_score"] = s.quantum_score;
      e["quantum_label"] = s.quantum_label;
      e["fidelity"] = s.fidelity;
      e["vqls_cost"] = s.vqls_cost;
      section["per_sample"].push_back(e);
    }
    ordered_json agg = aggregates_entry();
    agg["agreement_rate"] = run.agreement_rate;
    agg["mean_fidelity"] = run.mean_fidelity;
    agg["vqsd_residuals"] = {run.vqsd_source.residual, run.vqsd_target.residual};
    agg["cost_traces"]["vqsd_source"] = run.vqsd_source.cost_trace;
    agg["cost_traces"]["vqsd_target"] = run.vqsd_target.cost_trace;
    agg["weight_fidelity"] = run.weight_fidelity;
    agg["all_converged"] = run.all_converged;
    section["aggregates"] = agg;
    results["vqdac"] = section;
    outcome.vqdac = run;
  }

  report["results"] = results;

  outcome.report_json = report.dump(2) + "\n";
  validate_report(outcome.report_json);

  if (!config.output_path.empty()) {
    std::ofstream f(config.output_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + config.output_path);
    f << outcome.report_json;
    if (!f) throw std::runtime_error("write failed for " + config.output_path);
  }
  return outcome;
}

}  // namespace qda
