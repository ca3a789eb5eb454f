#pragma once

#include "hsw/common.hpp"
#include "hsw/rng.hpp"

#include <Eigen/Eigenvalues>

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hsw {

/// Weighted point cloud in R^d. Row i of `supports` is the i-th atom and
/// `weights[i]` its mass.
///
/// Construction only checks that the shapes agree; the probability-measure
/// invariants are reported by `validate` and enforced by `require_valid`,
/// which every estimator calls on entry.
template <typename Scalar = double>
class DiscreteMeasure {
 public:
  DiscreteMeasure(Matrix<Scalar> supports, Vector<Scalar> weights)
      : supports_(std::move(supports)), weights_(std::move(weights)) {
    if (supports_.rows() != weights_.size()) {
      throw InvalidArgument("measure has " + std::to_string(supports_.rows()) +
                            " supports but " + std::to_string(weights_.size()) +
                            " weights");
    }
  }

  static DiscreteMeasure uniform(Matrix<Scalar> supports) {
    const Index n = supports.rows();
    Vector<Scalar> w = Vector<Scalar>::Constant(n, n > 0 ? Scalar(1) / Scalar(n) : Scalar(0));
    return DiscreteMeasure(std::move(supports), std::move(w));
  }

  const Matrix<Scalar> &supports() const { return supports_; }
  const Vector<Scalar> &weights() const { return weights_; }
  Index size() const { return supports_.rows(); }
  Index dim() const { return supports_.cols(); }

  bool is_uniform() const {
    if (size() == 0) return false;
    const Scalar u = Scalar(1) / Scalar(size());
    return ((weights_.array() - u).abs() <= Scalar(1e-15)).all();
  }

 private:
  Matrix<Scalar> supports_;
  Vector<Scalar> weights_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const {
    std::string s;
    for (const auto &v : violations) {
      if (!s.empty()) s += "; ";
      s += v;
    }
    return s;
  }
};

/// Lists every violated invariant. Never modifies or renormalizes.
template <typename Scalar>
ValidationReport validate(const DiscreteMeasure<Scalar> &measure) {
  ValidationReport report;
  if (measure.size() < 1) report.violations.emplace_back("empty measure (n = 0)");
  if (measure.dim() < 1) report.violations.emplace_back("zero dimension (d = 0)");
  if (!measure.supports().allFinite() || !measure.weights().allFinite()) {
    report.violations.emplace_back("non-finite entry");
  }
  if ((measure.weights().array() < Scalar(0)).any()) {
    report.violations.emplace_back("negative weight");
  }
  if (measure.size() >= 1 && measure.weights().allFinite()) {
    const Scalar total = measure.weights().sum();
    if (std::abs(total - Scalar(1)) > Scalar(kWeightTolerance)) {
      std::ostringstream os;
      os << "weights sum " << total << " ≠ 1";
      report.violations.push_back(os.str());
    }
  }
  return report;
}

template <typename Scalar>
void require_valid(const DiscreteMeasure<Scalar> &measure, const char *name = "measure") {
  const auto report = validate(measure);
  if (!report.ok()) throw InvalidArgument(std::string(name) + ": " + report.str());
}

template <typename Scalar = double>
class GaussianMeasure {
 public:
  GaussianMeasure(Vector<Scalar> mean, Matrix<Scalar> covariance)
      : mean_(std::move(mean)), covariance_(std::move(covariance)) {
    if (covariance_.rows() != mean_.size() || covariance_.cols() != mean_.size()) {
      throw DimensionMismatch("covariance must be d x d with d = mean size");
    }
  }

  const Vector<Scalar> &mean() const { return mean_; }
  const Matrix<Scalar> &covariance() const { return covariance_; }
  Index dim() const { return mean_.size(); }

  /// Throws DomainError unless the covariance is symmetric PSD (1e-9 slack).
  void require_psd() const {
    if (!mean_.allFinite() || !covariance_.allFinite()) {
      throw DomainError("gaussian has non-finite parameters");
    }
    if ((covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-9)) {
      throw DomainError("covariance is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eig(covariance_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < Scalar(-1e-9)) {
      throw DomainError("covariance is not positive semidefinite");
    }
  }

  /// Square-root factor F with F F^T = covariance. Uses the symmetric
  /// eigendecomposition so singular (semidefinite) covariances work.
  Matrix<Scalar> factor() const {
    require_psd();
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eig(covariance_);
    const Vector<Scalar> root = eig.eigenvalues().cwiseMax(Scalar(0)).cwiseSqrt();
    return eig.eigenvectors() * root.asDiagonal();
  }

 private:
  Vector<Scalar> mean_;
  Matrix<Scalar> covariance_;
};

template <typename Scalar = double>
class MixtureGaussian {
 public:
  struct Component {
    Scalar weight;
    GaussianMeasure<Scalar> gaussian;
  };

  explicit MixtureGaussian(std::vector<Component> components)
      : components_(std::move(components)) {
    if (components_.empty()) throw InvalidArgument("mixture needs at least one component");
    Scalar total(0);
    for (const auto &c : components_) {
      if (c.weight < Scalar(0)) throw InvalidArgument("mixture weight is negative");
      if (c.gaussian.dim() != components_.front().gaussian.dim()) {
        throw DimensionMismatch("mixture components differ in dimension");
      }
      total += c.weight;
    }
    if (std::abs(total - Scalar(1)) > Scalar(kWeightTolerance)) {
      throw InvalidArgument("mixture weights do not sum to 1");
    }
  }

  const std::vector<Component> &components() const { return components_; }
  Index dim() const { return components_.front().gaussian.dim(); }

 private:
  std::vector<Component> components_;
};

/// Rows are unit vectors in R^d.
template <typename Scalar = double>
class DirectionSet {
 public:
  explicit DirectionSet(Matrix<Scalar> directions) : directions_(std::move(directions)) {
    for (Index r = 0; r < directions_.rows(); ++r) {
      if (std::abs(directions_.row(r).norm() - Scalar(1)) > Scalar(kUnitNormTolerance)) {
        throw InvalidArgument("direction " + std::to_string(r) + " is not unit norm");
      }
    }
  }

  const Matrix<Scalar> &directions() const { return directions_; }
  Index count() const { return directions_.rows(); }
  Index dim() const { return directions_.cols(); }

 private:
  Matrix<Scalar> directions_;
};

/// Fills a d x count matrix whose columns are i.i.d. uniform on S^{d-1}.
/// Columns are drawn one after another, d normals each; a zero-norm draw is
/// redrawn.
template <typename Scalar = double>
Matrix<Scalar> sample_unit_columns(Index d, Index count, Rng &rng) {
  if (d < 1 || count < 1) throw InvalidArgument("sphere sampling needs d >= 1 and count >= 1");
  Matrix<Scalar> out(d, count);
  for (Index c = 0; c < count; ++c) {
    Scalar norm(0);
    do {
      for (Index i = 0; i < d; ++i) out(i, c) = static_cast<Scalar>(rng.normal());
      norm = out.col(c).norm();
    } while (!(norm > Scalar(0)) || !std::isfinite(norm));
    out.col(c) /= norm;
  }
  return out;
}

template <typename Scalar = double>
DirectionSet<Scalar> sample_unit_sphere(Index d, Index count, Rng &rng) {
  return DirectionSet<Scalar>(sample_unit_columns<Scalar>(d, count, rng).transpose());
}

/// n i.i.d. draws from `g` with uniform weights 1/n.
template <typename Scalar>
DiscreteMeasure<Scalar> empirical_from_gaussian(const GaussianMeasure<Scalar> &g, Index n, Rng &rng) {
  if (n < 1) throw InvalidArgument("empirical_from_gaussian needs n >= 1");
  const Matrix<Scalar> f = g.factor();
  Matrix<Scalar> z(n, g.dim());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < g.dim(); ++j) z(i, j) = static_cast<Scalar>(rng.normal());
  Matrix<Scalar> x = z * f.transpose();
  x.rowwise() += g.mean().transpose();
  return DiscreteMeasure<Scalar>::uniform(std::move(x));
}

template <typename Scalar>
DiscreteMeasure<Scalar> empirical_from_mixture(const MixtureGaussian<Scalar> &m, Index n, Rng &rng) {
  if (n < 1) throw InvalidArgument("empirical_from_mixture needs n >= 1");
  std::vector<Matrix<Scalar>> factors;
  for (const auto &c : m.components()) factors.push_back(c.gaussian.factor());
  Matrix<Scalar> x(n, m.dim());
  Vector<Scalar> z(m.dim());
  for (Index i = 0; i < n; ++i) {
    const double u = rng.uniform();
    std::size_t pick = 0;
    double acc = 0;
    for (; pick + 1 < m.components().size(); ++pick) {
      acc += static_cast<double>(m.components()[pick].weight);
      if (u < acc) break;
    }
    for (Index j = 0; j < m.dim(); ++j) z[j] = static_cast<Scalar>(rng.normal());
    x.row(i) = (m.components()[pick].gaussian.mean() + factors[pick] * z).transpose();
  }
  return DiscreteMeasure<Scalar>::uniform(std::move(x));
}

}  // namespace hsw
