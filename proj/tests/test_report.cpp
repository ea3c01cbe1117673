#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qda/experiment.hpp"
#include "qda/report.hpp"

using namespace qda;

namespace {
std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(bool(f));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.pipeline = PipelineChoice::all;
  cfg.use_generator = true;
  cfg.generator.dim = 2;
  cfg.generator.n_source = 8;
  cfg.generator.n_target = 4;
  cfg.generator.class_gap = 4.0;
  cfg.generator.shift_angle = 0.3;
  cfg.generator.seed = 9;
  cfg.clock_bits = 4;
  cfg.seed = 9;
  return cfg;
}
}  // namespace

TEST_CASE("embedded schema matches the published schema file") {
  const char* path = std::getenv("QDA_SCHEMA");
  REQUIRE(path != nullptr);
  const auto file_schema = nlohmann::ordered_json::parse(slurp(path));
  const auto embedded = nlohmann::ordered_json::parse(report_schema_json());
  CHECK(file_schema == embedded);
}

TEST_CASE("reports validate against the schema and canonicalize stably") {
  const ExperimentOutcome outcome = run_experiment(small_config());
  CHECK_NOTHROW(validate_report(outcome.report_json));

  // Canonical form drops only the timestamp.
  const std::string canon = canonical_report_json(outcome.report_json);
  CHECK(canon.find("timestamp") == std::string::npos);
  CHECK(canon.find("agreement_rate") != std::string::npos);
}

TEST_CASE("identical config and seed produce canonically identical reports") {
  const ExperimentOutcome a = run_experiment(small_config());
  const ExperimentOutcome b = run_experiment(small_config());
  CHECK(canonical_report_json(a.report_json) == canonical_report_json(b.report_json));
}

TEST_CASE("classical pipeline reports oracle columns only") {
  ExperimentConfig cfg = small_config();
  cfg.pipeline = PipelineChoice::classical;
  const ExperimentOutcome outcome = run_experiment(cfg);

  const auto report = nlohmann::ordered_json::parse(outcome.report_json);
  REQUIRE(report["results"].contains("classical"));
  CHECK(!report["results"].contains("qblas"));
  const auto& sample = report["results"]["classical"]["per_sample"][0];
  CHECK(sample["quantum_score"].is_null());
  CHECK(sample["quantum_label"].is_null());
  CHECK(!sample["oracle_score"].is_null());
  CHECK(report["results"]["classical"]["aggregates"]["agreement_rate"].is_null());
}

TEST_CASE("pipeline=all reports agreement for both quantum pipelines") {
  const ExperimentOutcome outcome = run_experiment(small_config());
  const auto report = nlohmann::ordered_json::parse(outcome.report_json);
  CHECK(report["results"]["qblas"]["aggregates"]["agreement_rate"].is_number());
  CHECK(report["results"]["vqdac"]["aggregates"]["agreement_rate"].is_number());
  CHECK(report["oracle"]["target_accuracy"].is_number());
  CHECK(report["provenance"]["config"]["clock_bits"] == 4);
}

TEST_CASE("config echo reproduces every effective parameter") {
  const ExperimentOutcome outcome = run_experiment(small_config());
  const auto cfg = nlohmann::ordered_json::parse(outcome.report_json)["provenance"]["config"];
  for (const char* key :
       {"pipeline", "use_generator", "clock_bits", "eigen_cutoff", "gamma_fraction",
        "phase_headroom", "postselect_tolerance", "ansatz_layers", "optimizer", "learning_rate",
        "max_iters", "restarts", "convergence_tol", "vqls_shared", "readout", "shots", "seed",
        "output"})
    CHECK(cfg.contains(key));
}

TEST_CASE("schema validation rejects malformed reports") {
  CHECK_THROWS_AS(validate_report("{\"schema\": 2}"), std::runtime_error);
  CHECK_THROWS_AS(validate_report("not json"), std::runtime_error);
  CHECK_THROWS_AS(validate_report("{\"schema\": 1, \"provenance\": {}}"), std::runtime_error);
}

TEST_CASE("finite-shot scores stay within the binomial band of exact scores") {
  ExperimentConfig exact = small_config();
  exact.pipeline = PipelineChoice::qblas;
  ExperimentConfig shot = exact;
  shot.shots = 1000;

  const ExperimentOutcome a = run_experiment(exact);
  const ExperimentOutcome b = run_experiment(shot);
  const auto ja = nlohmann::ordered_json::parse(a.report_json);
  const auto jb = nlohmann::ordered_json::parse(b.report_json);
  const auto& sa = ja["results"]["qblas"]["per_sample"];
  const auto& sb = jb["results"]["qblas"]["per_sample"];
  REQUIRE(sa.size() == sb.size());
  const double bound = 5.0 * std::sqrt(0.25 / 1000.0);
  for (std::size_t j = 0; j < sa.size(); ++j) {
    // Hadamard score s = 2 P(0) - 1, so P-space distance is half the score gap.
    const double pa = (sa[j]["quantum_score"].get<double>() + 1.0) / 2.0;
    const double pb = (sb[j]["quantum_score"].get<double>() + 1.0) / 2.0;
    CHECK(std::abs(pa - pb) <= bound);
  }
}
