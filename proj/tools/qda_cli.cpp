// Command-line front end: dataset generation, experiment runs, report diffs.
//
// Exit codes: 0 success, 1 regression past threshold (report-diff),
// 2 usage error, 3 runtime error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qda/csv.hpp"
#include "qda/experiment.hpp"
#include "qda/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRegression = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Flat key=value config file; keys are the long option names without dashes.
std::vector<std::pair<std::string, std::string>> load_flat_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw qda::UsageError("cannot read config file " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  while (std::getline(f, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw qda::UsageError("config line is not key=value: " + stripped);
    entries.emplace_back(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
  return entries;
}

// Turns config entries into extra command-line tokens for options the user
// did not pass explicitly, so flags always override the file.
std::vector<std::string> config_tokens(CLI::App* cmd,
                                       const std::vector<std::pair<std::string, std::string>>& kv) {
  std::vector<std::string> tokens;
  for (const auto& [key, value] : kv) {
    if (key == "config") continue;
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr) throw qda::UsageError("unknown config key: " + key);
    if (opt->count() > 0) continue;  // command line wins
    if (opt->get_expected_min() == 0) {
      // Flag.
      if (value == "true" || value == "1" || value == "yes") tokens.push_back("--" + key);
      else if (value != "false" && value != "0" && value != "no")
        throw qda::UsageError("config flag " + key + " must be true or false");
      continue;
    }
    tokens.push_back("--" + key);
    std::istringstream vs(value);
    std::string piece;
    while (vs >> piece) tokens.push_back(piece);
  }
  return tokens;
}

struct GenDataArgs {
  int dim = 2;
  int n_source = 40;
  int n_target = 40;
  double gap = 4.0;
  double angle = 0.0;
  std::vector<double> scale;
  std::uint64_t seed = 42;
  bool benchmark = false;
  std::string out_dir = ".";
};

int run_gen_data(const GenDataArgs& args) {
  qda::SyntheticSpec spec;
  if (args.benchmark) {
    spec = qda::benchmark_spec();
  } else {
    if (args.n_source < 2 || args.n_target < 2)
      throw qda::UsageError("sample counts must be at least 2");
    if (args.dim < 2) throw qda::UsageError("dim must be at least 2");
    if (args.gap <= 0.0) throw qda::UsageError("gap must be positive");
    spec.dim = args.dim;
    spec.n_source = args.n_source;
    spec.n_target = args.n_target;
    spec.class_gap = args.gap;
    spec.shift_angle = args.angle;
    if (!args.scale.empty()) {
      if (int(args.scale.size()) != args.dim)
        throw qda::UsageError("--scale needs one entry per dimension");
      spec.shift_scale =
          Eigen::Map<const Eigen::VectorXd>(args.scale.data(), Eigen::Index(args.scale.size()));
    }
    spec.seed = args.seed;
  }

  const qda::SyntheticDomains domains = qda::generate_synthetic_domains(spec);
  qda::write_dataset_csv(args.out_dir + "/source.csv", domains.source);
  qda::write_dataset_csv(args.out_dir + "/target.csv", domains.target);
  qda::write_truth_csv(args.out_dir + "/target_truth.csv", domains.target_truth);
  std::cout << "wrote " << args.out_dir << "/source.csv, target.csv, target_truth.csv\n";
  return kExitOk;
}

int run_report_diff(const std::string& path_a, const std::string& path_b, double threshold) {
  const std::string raw_a = read_file(path_a);
  const std::string raw_b = read_file(path_b);
  qda::validate_report(raw_a);
  qda::validate_report(raw_b);

  const std::string can_a = qda::canonical_report_json(raw_a);
  const std::string can_b = qda::canonical_report_json(raw_b);
  if (can_a == can_b) return kExitOk;  // empty diff

  using nlohmann::ordered_json;
  const ordered_json a = ordered_json::parse(raw_a);
  const ordered_json b = ordered_json::parse(raw_b);
  if (a["schema"] != b["schema"]) throw std::runtime_error("schema mismatch between reports");

  bool regression = false;
  auto diff_number = [&](const std::string& label, const ordered_json& va,
                         const ordered_json& vb, bool check_regression) {
    if (va.is_null() && vb.is_null()) return;
    if (va.is_null() || vb.is_null()) {
      std::cout << label << ": " << va.dump() << " -> " << vb.dump() << "\n";
      return;
    }
    const double da = va.get<double>(), db = vb.get<double>();
    if (da != db)
      std::cout << label << ": " << da << " -> " << db << " (delta " << db - da << ")\n";
    if (check_regression && da - db > threshold) regression = true;
  };

  for (const char* key : {"target_accuracy", "non_adapted_accuracy", "adaptation_gain"})
    diff_number(std::string("oracle.") + key, a["oracle"][key], b["oracle"][key], false);

  for (const auto& [pipeline, section_a] : a["results"].items()) {
    if (!b["results"].contains(pipeline)) {
      std::cout << "results." << pipeline << ": present -> absent\n";
      continue;
    }
    const auto& agg_a = section_a["aggregates"];
    const auto& agg_b = b["results"][pipeline]["aggregates"];
    diff_number("results." + pipeline + ".agreement_rate", agg_a["agreement_rate"],
                agg_b["agreement_rate"], true);
    diff_number("results." + pipeline + ".mean_fidelity", agg_a["mean_fidelity"],
                agg_b["mean_fidelity"], false);
  }
  for (const auto& [pipeline, section_b] : b["results"].items()) {
    (void)section_b;
    if (!a["results"].contains(pipeline))
      std::cout << "results." << pipeline << ": absent -> present\n";
  }

  if (regression) {
    std::cout << "agreement regression exceeds threshold " << threshold << "\n";
    return kExitRegression;
  }
  return kExitOk;
}

void print_run_summary(const qda::ExperimentOutcome& outcome) {
  if (outcome.oracle_accuracy) {
    std::cout << "oracle target accuracy:      " << *outcome.oracle_accuracy << "\n";
    std::cout << "non-adapted accuracy:        " << *outcome.non_adapted_accuracy << "\n";
  }
  if (outcome.qblas) {
    std::cout << "qblas agreement vs oracle:   " << outcome.qblas->agreement_rate << "\n";
    std::cout << "qblas mean fidelity:         " << outcome.qblas->mean_fidelity << "\n";
  }
  if (outcome.vqdac) {
    std::cout << "vqdac agreement vs oracle:   " << outcome.vqdac->agreement_rate << "\n";
    std::cout << "vqdac mean fidelity:         " << outcome.vqdac->mean_fidelity << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum domain-adaptation classifiers (classical oracle, QBLAS, VQDAC)"};
  app.require_subcommand(1);

  // gen-data
  GenDataArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen-data", "generate synthetic source/target CSVs");
  gen_cmd->add_option("--dim", gen.dim, "feature dimension");
  gen_cmd->add_option("--n-source", gen.n_source, "source sample count");
  gen_cmd->add_option("--n-target", gen.n_target, "target sample count");
  gen_cmd->add_option("--gap", gen.gap, "class mean separation");
  gen_cmd->add_option("--angle", gen.angle, "domain shift rotation (radians)");
  gen_cmd->add_option("--scale", gen.scale, "per-axis domain shift scaling");
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_flag("--benchmark", gen.benchmark, "use the pinned 2-D benchmark parameters");
  gen_cmd->add_option("--out-dir", gen.out_dir, "output directory");

  // run
  qda::ExperimentConfig cfg;
  std::string pipeline = "classical", readout = "hadamard", optimizer = "gradient_descent";
  std::int64_t shots = 0;
  bool use_benchmark = false;
  GenDataArgs run_gen;
  bool generate = false;
  std::string config_path;
  CLI::App* run_cmd = app.add_subcommand("run", "run pipelines and write a JSON report");
  run_cmd->add_option("--config", config_path,
                      "flat key=value file; command-line flags override it");
  run_cmd->add_option("--pipeline", pipeline, "classical|qblas|vqdac|all");
  run_cmd->add_option("--source", cfg.source_path, "source CSV path");
  run_cmd->add_option("--target", cfg.target_path, "target CSV path");
  run_cmd->add_option("--truth", cfg.truth_path, "hidden-labels sidecar CSV path");
  run_cmd->add_flag("--generate", generate, "generate data instead of reading CSVs");
  run_cmd->add_flag("--benchmark", use_benchmark, "run on the pinned 2-D benchmark");
  run_cmd->add_option("--dim", run_gen.dim, "generator: feature dimension");
  run_cmd->add_option("--n-source", run_gen.n_source, "generator: source count");
  run_cmd->add_option("--n-target", run_gen.n_target, "generator: target count");
  run_cmd->add_option("--gap", run_gen.gap, "generator: class gap");
  run_cmd->add_option("--angle", run_gen.angle, "generator: shift angle (radians)");
  run_cmd->add_option("--scale", run_gen.scale, "generator: per-axis shift scaling");
  run_cmd->add_option("--clock-bits", cfg.clock_bits, "QPE clock register width");
  run_cmd->add_option("--eigen-cutoff", cfg.eigen_cutoff, "relative eigenvalue cutoff");
  run_cmd->add_option("--gamma-fraction", cfg.gamma_fraction, "gamma as fraction of sigma_min");
  run_cmd->add_option("--phase-headroom", cfg.phase_headroom, "sigma_max t / 2pi target");
  run_cmd->add_option("--postselect-tolerance", cfg.postselect_tolerance,
                      "minimum acceptable postselection probability");
  run_cmd->add_option("--ansatz-layers", cfg.ansatz_layers, "hardware-efficient ansatz depth");
  run_cmd->add_option("--optimizer", optimizer, "gradient_descent|spsa");
  run_cmd->add_option("--learning-rate", cfg.learning_rate, "optimizer learning rate");
  run_cmd->add_option("--max-iters", cfg.max_iters, "optimizer iteration cap");
  run_cmd->add_option("--restarts", cfg.restarts, "optimizer random restarts");
  run_cmd->add_option("--convergence-tol", cfg.convergence_tol,
                      "cost-improvement convergence tolerance");
  run_cmd->add_flag("--vqls-shared", cfg.vqls_shared,
                    "train one shared VQLS state for all target columns");
  run_cmd->add_option("--readout", readout, "hadamard|two_swap");
  run_cmd->add_option("--shots", shots, "finite-shot readout (0 = exact probabilities)");
  run_cmd->add_option("--seed", cfg.seed, "experiment seed");
  run_cmd->add_option("--output,-o", cfg.output_path, "report JSON path");

  // report-diff
  std::string diff_a, diff_b;
  double diff_threshold = 0.05;
  CLI::App* diff_cmd = app.add_subcommand("report-diff", "compare two run reports");
  diff_cmd->add_option("a", diff_a, "baseline report")->required();
  diff_cmd->add_option("b", diff_b, "new report")->required();
  diff_cmd->add_option("--threshold", diff_threshold, "agreement regression threshold");

  try {
    app.parse(argc, argv);
    if (run_cmd->parsed() && !config_path.empty()) {
      // Merge the config file under the command line and parse again.
      const auto tokens = config_tokens(run_cmd, load_flat_config(config_path));
      std::vector<std::string> args;
      for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
      args.insert(args.end(), tokens.begin(), tokens.end());
      std::vector<const char*> argv2 = {argv[0]};
      for (const auto& a : args) argv2.push_back(a.c_str());
      app.clear();
      app.parse(int(argv2.size()), argv2.data());
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const qda::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return run_gen_data(gen);

    if (run_cmd->parsed()) {
      cfg.pipeline = qda::parse_pipeline(pipeline);
      cfg.readout = qda::parse_readout(readout);
      cfg.optimizer_method = qda::parse_optimizer(optimizer);
      if (shots < 0) throw qda::UsageError("shots must be non-negative");
      if (shots > 0) cfg.shots = std::uint64_t(shots);
      if (use_benchmark) {
        cfg.use_generator = true;
        cfg.generator = qda::benchmark_spec();
      } else if (generate) {
        cfg.use_generator = true;
        cfg.generator.dim = run_gen.dim;
        cfg.generator.n_source = run_gen.n_source;
        cfg.generator.n_target = run_gen.n_target;
        cfg.generator.class_gap = run_gen.gap;
        cfg.generator.shift_angle = run_gen.angle;
        if (!run_gen.scale.empty()) {
          if (int(run_gen.scale.size()) != run_gen.dim)
            throw qda::UsageError("--scale needs one entry per dimension");
          cfg.generator.shift_scale = Eigen::Map<const Eigen::VectorXd>(
              run_gen.scale.data(), Eigen::Index(run_gen.scale.size()));
        }
        cfg.generator.seed = cfg.seed;
      }
      const qda::ExperimentOutcome outcome = qda::run_experiment(cfg);
      print_run_summary(outcome);
      if (cfg.output_path.empty())
        std::cout << outcome.report_json;
      else
        std::cout << "report written to " << cfg.output_path << "\n";
      return kExitOk;
    }

    if (diff_cmd->parsed()) return run_report_diff(diff_a, diff_b, diff_threshold);
  } catch (const qda::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
