#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

namespace qda {

enum class DomainTag { source, target };

// Feature matrix with one sample per column. Labels are present exactly for
// source-domain data.
struct Dataset {
  Eigen::MatrixXd features;                 // D x n
  std::optional<Eigen::VectorXi> labels;    // entries in {0, 1}
  DomainTag tag = DomainTag::source;

  Eigen::Index dim() const { return features.rows(); }
  Eigen::Index count() const { return features.cols(); }

  // Enforces D >= 1, n >= 2, finite entries, labels iff source.
  void validate() const;
};

// Per-domain second-moment statistics. The "covariance" used throughout this
// project is the uncentered normalized second moment X X^T / |X|_F^2, the same
// object both quantum pipelines estimate; class means use raw columns.
struct DomainStats {
  std::optional<Eigen::VectorXd> mean0;
  std::optional<Eigen::VectorXd> mean1;
  Eigen::MatrixXd second_moment;  // D x D, symmetric PSD, trace 1
  double frobenius_norm = 0.0;    // |X|_F of the raw features

  Eigen::VectorXd mean_difference() const;  // mean1 - mean0
};

DomainStats compute_domain_stats(const Dataset& data);

struct SyntheticSpec {
  int dim = 2;
  int n_source = 40;
  int n_target = 40;
  double class_gap = 4.0;
  double shift_angle = 0.0;            // radians, rotation in the (0,1) plane
  Eigen::VectorXd shift_scale;         // per-axis; empty means all ones
  std::uint64_t seed = 0;
};

struct SyntheticDomains {
  Dataset source;
  Dataset target;
  Eigen::VectorXi target_truth;  // hidden labels, for evaluation only
};

// Two Gaussian classes with means +-(gap/2)e1 and a fixed correlated class
// covariance; the target domain draws from the same generative classes and
// applies rotation(shift_angle) followed by per-axis scaling. Deterministic
// given the seed.
SyntheticDomains generate_synthetic_domains(const SyntheticSpec& spec);

// The class-conditional covariance the generator uses (AR(1) correlation;
// exposed so oracles and docs can refer to one definition).
Eigen::MatrixXd generator_class_covariance(int dim);

}  // namespace qda
