#include "qda/whitening.hpp"

#include <cmath>
#include <stdexcept>

namespace qda {

Whitener build_whitener(const Eigen::MatrixXd& second_moment, double cutoff) {
  if (second_moment.rows() != second_moment.cols())
    throw std::invalid_argument("second moment not square");
  if ((second_moment - second_moment.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("second moment not symmetric");
  if (cutoff < 0.0) throw std::invalid_argument("cutoff must be non-negative");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(second_moment);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");

  const Eigen::Index d = second_moment.rows();
  // Eigen returns ascending order; record descending.
  Eigen::VectorXd evals_desc = es.eigenvalues().reverse();
  const double lambda_max = evals_desc[0];
  if (lambda_max <= 0.0) throw std::invalid_argument("rank zero");

  const double threshold = cutoff * lambda_max;
  Eigen::VectorXd inv_sqrt = Eigen::VectorXd::Zero(d);
  int rank = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double lambda = es.eigenvalues()[i];
    if (lambda > threshold && lambda > 0.0) {
      inv_sqrt[i] = 1.0 / std::sqrt(lambda);
      ++rank;
    }
  }
  if (rank == 0) throw std::invalid_argument("rank zero");

  Whitener w;
  w.inverse_sqrt = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
  // Symmetrize away round-off so the symmetry invariant holds exactly-ish.
  w.inverse_sqrt = ((w.inverse_sqrt + w.inverse_sqrt.transpose()) / 2.0).eval();
  w.eigenvalues = evals_desc;
  w.cutoff = cutoff;
  w.effective_rank = rank;
  return w;
}

Whitener build_whitener(const DomainStats& stats, double cutoff) {
  return build_whitener(stats.second_moment, cutoff);
}

DaClassifier make_da_classifier(const DomainStats& source_stats, const DomainStats& target_stats,
                                double cutoff) {
  DaClassifier clf;
  clf.whitener_source = build_whitener(source_stats, cutoff);
  clf.whitener_target = build_whitener(target_stats, cutoff);
  clf.weight = clf.whitener_source.inverse_sqrt * source_stats.mean_difference();
  return clf;
}

double classical_score(const DaClassifier& clf, const Eigen::VectorXd& x) {
  if (x.size() != clf.weight.size()) throw std::invalid_argument("dimension mismatch");
  return clf.weight.dot(clf.whitener_target.inverse_sqrt * x);
}

double non_adapted_score(const DaClassifier& clf, const Eigen::VectorXd& x) {
  if (x.size() != clf.weight.size()) throw std::invalid_argument("dimension mismatch");
  return clf.weight.dot(clf.whitener_source.inverse_sqrt * x);
}

Eigen::VectorXd whiten(const Whitener& w, const Eigen::VectorXd& x) {
  if (x.size() != w.inverse_sqrt.rows()) throw std::invalid_argument("dimension mismatch");
  return w.inverse_sqrt * x;
}

}  // namespace qda
