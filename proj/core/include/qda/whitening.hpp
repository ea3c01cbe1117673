#pragma once

#include <Eigen/Dense>

#include "qda/dataset.hpp"

namespace qda {

// Relative eigenvalue cutoff used throughout to bound the condition numbers
// handed to the quantum pipelines.
inline constexpr double kDefaultEigenCutoff = 1e-6;

// Inverse square root of a second-moment matrix with small eigenvalues
// filtered to zero (pseudo-inverse style).
struct Whitener {
  Eigen::MatrixXd inverse_sqrt;   // symmetric, PSD
  Eigen::VectorXd eigenvalues;    // of the input, sorted descending
  double cutoff = 0.0;            // relative to the largest eigenvalue
  int effective_rank = 0;
};

// Eigendecomposes sigma = Q L Q^T and inverts sqrt(L) on eigenvalues above
// cutoff * lambda_max (others contribute zero). Throws "rank zero" if nothing
// survives.
Whitener build_whitener(const DomainStats& stats, double cutoff = kDefaultEigenCutoff);
Whitener build_whitener(const Eigen::MatrixXd& second_moment,
                        double cutoff = kDefaultEigenCutoff);

// w = W_s (mu1 - mu0) applied to target-whitened samples.
struct DaClassifier {
  Eigen::VectorXd weight;
  Whitener whitener_source;
  Whitener whitener_target;
};

DaClassifier make_da_classifier(const DomainStats& source_stats, const DomainStats& target_stats,
                                double cutoff = kDefaultEigenCutoff);

// Adapted score w^T (W_t x); the classifier's label rule is score > 0 -> 1,
// ties -> 0.
double classical_score(const DaClassifier& clf, const Eigen::VectorXd& x);

// Same weight vector applied with the *source* whitener on both sides; the
// no-adaptation baseline the adapted classifier is compared against.
double non_adapted_score(const DaClassifier& clf, const Eigen::VectorXd& x);

inline int label_for(double score) { return score > 0.0 ? 1 : 0; }

// Oracle whitened vector W_t x (unnormalized).
Eigen::VectorXd whiten(const Whitener& w, const Eigen::VectorXd& x);

}  // namespace qda
