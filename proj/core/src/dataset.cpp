#include "qda/dataset.hpp"

#include <cmath>
#include <stdexcept>

#include "qda/rng.hpp"

namespace qda {

namespace {
// Class-noise shape, calibrated once for the pinned 2-D benchmark: unit
// variances with AR(1) correlation rho, scaled by kNoiseScale.
constexpr double kNoiseCorr = 0.7;
constexpr double kNoiseScale = 0.25;
}  // namespace

void Dataset::validate() const {
  if (dim() < 1) throw std::invalid_argument("dataset needs at least one feature");
  if (count() < 2) throw std::invalid_argument("dataset needs at least two samples");
  if (!features.allFinite()) throw std::invalid_argument("dataset has non-finite entries");
  const bool is_source = tag == DomainTag::source;
  if (is_source != labels.has_value())
    throw std::invalid_argument("labels must be present exactly for source data");
  if (labels) {
    if (labels->size() != count()) throw std::invalid_argument("label count mismatch");
    for (Eigen::Index i = 0; i < labels->size(); ++i)
      if ((*labels)[i] != 0 && (*labels)[i] != 1)
        throw std::invalid_argument("labels must be 0 or 1");
  }
}

Eigen::VectorXd DomainStats::mean_difference() const {
  if (!mean0 || !mean1) throw std::logic_error("class means unavailable (target stats)");
  return *mean1 - *mean0;
}

DomainStats compute_domain_stats(const Dataset& data) {
  data.validate();
  const double fro = data.features.norm();
  if (fro <= 0.0) throw std::invalid_argument("zero norm");

  DomainStats stats;
  stats.frobenius_norm = fro;
  stats.second_moment = (data.features * data.features.transpose()) / (fro * fro);

  if (data.tag == DomainTag::source) {
    const auto& y = *data.labels;
    Eigen::VectorXd m0 = Eigen::VectorXd::Zero(data.dim());
    Eigen::VectorXd m1 = Eigen::VectorXd::Zero(data.dim());
    Eigen::Index n0 = 0, n1 = 0;
    for (Eigen::Index j = 0; j < data.count(); ++j) {
      if (y[j] == 0) {
        m0 += data.features.col(j);
        ++n0;
      } else {
        m1 += data.features.col(j);
        ++n1;
      }
    }
    if (n0 == 0 || n1 == 0) throw std::invalid_argument("degenerate labels");
    stats.mean0 = m0 / double(n0);
    stats.mean1 = m1 / double(n1);
  }
  return stats;
}

Eigen::MatrixXd generator_class_covariance(int dim) {
  Eigen::MatrixXd c(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      c(i, j) = kNoiseScale * std::pow(kNoiseCorr, std::abs(i - j));
  return c;
}

SyntheticDomains generate_synthetic_domains(const SyntheticSpec& spec) {
  if (spec.dim < 2) throw std::invalid_argument("dim must be at least 2");
  if (spec.n_source < 2 || spec.n_target < 2)
    throw std::invalid_argument("sample counts must be at least 2");
  if (spec.class_gap <= 0.0) throw std::invalid_argument("class_gap must be positive");

  Eigen::VectorXd scale = spec.shift_scale;
  if (scale.size() == 0) scale = Eigen::VectorXd::Ones(spec.dim);
  if (scale.size() != spec.dim) throw std::invalid_argument("shift_scale dimension mismatch");
  for (Eigen::Index i = 0; i < scale.size(); ++i)
    if (scale[i] <= 0.0) throw std::invalid_argument("shift_scale entries must be positive");

  const Eigen::MatrixXd noise = generator_class_covariance(spec.dim);
  const Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(noise).matrixL();

  Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(spec.dim, spec.dim);
  rot(0, 0) = std::cos(spec.shift_angle);
  rot(0, 1) = -std::sin(spec.shift_angle);
  rot(1, 0) = std::sin(spec.shift_angle);
  rot(1, 1) = std::cos(spec.shift_angle);

  Eigen::VectorXd mean1 = Eigen::VectorXd::Zero(spec.dim);
  mean1[0] = spec.class_gap / 2.0;

  auto draw = [&](Rng& rng, int label) {
    Eigen::VectorXd z(spec.dim);
    for (int i = 0; i < spec.dim; ++i) z[i] = rng.normal();
    Eigen::VectorXd x = chol * z;
    return label == 1 ? Eigen::VectorXd(x + mean1) : Eigen::VectorXd(x - mean1);
  };

  SyntheticDomains out;

  {
    Rng rng(derive_seed(spec.seed, 1));
    out.source.features.resize(spec.dim, spec.n_source);
    Eigen::VectorXi y(spec.n_source);
    for (int j = 0; j < spec.n_source; ++j) {
      y[j] = (j < spec.n_source / 2) ? 0 : 1;  // exact 50/50 balance
      out.source.features.col(j) = draw(rng, y[j]);
    }
    out.source.labels = y;
    out.source.tag = DomainTag::source;
  }

  {
    Rng rng(derive_seed(spec.seed, 2));
    out.target.features.resize(spec.dim, spec.n_target);
    out.target_truth.resize(spec.n_target);
    for (int j = 0; j < spec.n_target; ++j) {
      const int label = (j < spec.n_target / 2) ? 0 : 1;
      out.target_truth[j] = label;
      const Eigen::VectorXd x = draw(rng, label);
      out.target.features.col(j) = scale.asDiagonal() * (rot * x);
    }
    out.target.labels.reset();
    out.target.tag = DomainTag::target;
  }

  out.source.validate();
  out.target.validate();
  return out;
}

}  // namespace qda
