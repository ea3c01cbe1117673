#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "qda/dataset.hpp"
#include "qda/qblas.hpp"
#include "qda/variational.hpp"

namespace qda {

// Invalid configuration (maps to CLI exit code 2); runtime failures keep
// throwing std::runtime_error (exit code 3).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class PipelineChoice { classical, qblas, vqdac, all };

PipelineChoice parse_pipeline(const std::string& name);
ReadoutMode parse_readout(const std::string& name);
OptimizerMethod parse_optimizer(const std::string& name);

struct ExperimentConfig {
  PipelineChoice pipeline = PipelineChoice::classical;

  // Dataset: explicit CSVs, or the synthetic generator when use_generator.
  std::string source_path;
  std::string target_path;
  std::string truth_path;  // optional hidden-label sidecar
  bool use_generator = false;
  SyntheticSpec generator;

  // Phase estimation (qblas).
  int clock_bits = 8;
  double eigen_cutoff = kDefaultEigenCutoff;
  double gamma_fraction = 0.9;
  double phase_headroom = 0.45;
  double postselect_tolerance = 1e-10;

  // Ansatz / optimizer (vqdac).
  int ansatz_layers = 4;
  OptimizerMethod optimizer_method = OptimizerMethod::gradient_descent;
  double learning_rate = 0.1;
  int max_iters = 2000;
  int restarts = 5;
  double convergence_tol = 1e-8;
  bool vqls_shared = false;

  ReadoutMode readout = ReadoutMode::hadamard;
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 42;
  std::string output_path;  // empty: do not write a file

  void validate() const;  // throws UsageError
};

// The pinned 2-D shifted-Gaussian benchmark (gap 4, angle pi/6, 40+40
// samples, seed 42); scale is part of the pinned definition.
SyntheticSpec benchmark_spec();

struct ExperimentOutcome {
  std::string report_json;
  std::optional<QblasRun> qblas;
  std::optional<VqdacRun> vqdac;
  std::optional<double> oracle_accuracy;       // vs hidden truth, when known
  std::optional<double> non_adapted_accuracy;  // same weight, source whitener
};

// Runs the selected pipeline(s), assembles the JSON report (validated against
// the published schema), writes it to output_path when set.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

}  // namespace qda
