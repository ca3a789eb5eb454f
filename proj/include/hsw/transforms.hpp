#pragma once

#include "hsw/measures.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hsw {

/// One-dimensional projected measure: atom locations and their masses.
template <typename Scalar = double>
struct Projected1D {
  Vector<Scalar> values;
  Vector<Scalar> weights;
};

/// Sampled hierarchical projection: H heads of k bottleneck directions
/// (each head a d x k matrix with unit columns) and one k x L mixing matrix
/// with unit columns.
template <typename Scalar = double>
class ProjectionBundle {
 public:
  ProjectionBundle(std::vector<Matrix<Scalar>> heads, Matrix<Scalar> mixing)
      : heads_(std::move(heads)), mixing_(std::move(mixing)) {
    if (heads_.empty()) throw InvalidArgument("bundle needs at least one head");
    const Index d = heads_.front().rows();
    const Index k = heads_.front().cols();
    if (d < 1 || k < 1 || mixing_.cols() < 1) throw InvalidArgument("bundle needs d, k, L >= 1");
    if (mixing_.rows() != k) throw DimensionMismatch("mixing rows must equal k");
    for (const auto &head : heads_) {
      if (head.rows() != d || head.cols() != k) throw DimensionMismatch("heads differ in shape");
      require_unit_columns(head, "head");
    }
    require_unit_columns(mixing_, "mixing");
  }

  const std::vector<Matrix<Scalar>> &heads() const { return heads_; }
  const Matrix<Scalar> &mixing() const { return mixing_; }
  Index dim() const { return heads_.front().rows(); }
  Index k() const { return mixing_.rows(); }
  Index L() const { return mixing_.cols(); }
  Index H() const { return static_cast<Index>(heads_.size()); }

 private:
  static void require_unit_columns(const Matrix<Scalar> &m, const char *what) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (std::abs(m.col(c).norm() - Scalar(1)) > Scalar(kUnitNormTolerance)) {
        throw InvalidArgument(std::string(what) + " column " + std::to_string(c) + " is not unit norm");
      }
    }
  }

  std::vector<Matrix<Scalar>> heads_;
  Matrix<Scalar> mixing_;
};

/// Heads are drawn from the directions stream (head h owns directions
/// h*k .. h*k+k-1), mixing from its own stream. With k = 1 the heads are
/// exactly the first H directions an SW estimate with the same seed uses.
template <typename Scalar = double>
ProjectionBundle<Scalar> sample_bundle(Index d, Index k, Index L, Index H, const Rng &root) {
  if (H < 1) throw InvalidArgument("H must be >= 1");
  Rng heads_rng = root.split(Stream::kDirections);
  Rng mixing_rng = root.split(Stream::kMixing);
  Matrix<Scalar> all = sample_unit_columns<Scalar>(d, H * k, heads_rng);
  std::vector<Matrix<Scalar>> heads;
  heads.reserve(static_cast<std::size_t>(H));
  if (H == 1) {
    heads.push_back(std::move(all));
  } else {
    for (Index h = 0; h < H; ++h) heads.emplace_back(all.middleCols(h * k, k));
  }
  return ProjectionBundle<Scalar>(std::move(heads), sample_unit_columns<Scalar>(k, L, mixing_rng));
}

/// Projects along each direction: output j holds X * theta_j with the
/// measure's weights.
template <typename Scalar>
std::vector<Projected1D<Scalar>> radon_project(const DiscreteMeasure<Scalar> &measure,
                                               const DirectionSet<Scalar> &dirs) {
  if (dirs.dim() != measure.dim()) {
    throw DimensionMismatch("direction dimension " + std::to_string(dirs.dim()) +
                            " does not match measure dimension " + std::to_string(measure.dim()));
  }
  const Matrix<Scalar> projected = measure.supports() * dirs.directions().transpose();
  std::vector<Projected1D<Scalar>> out;
  out.reserve(static_cast<std::size_t>(dirs.count()));
  for (Index j = 0; j < dirs.count(); ++j) out.push_back({projected.col(j), measure.weights()});
  return out;
}

/// Raw projection onto arbitrary (not necessarily unit) columns of `dirs`.
template <typename Scalar>
Matrix<Scalar> project_raw(const DiscreteMeasure<Scalar> &measure, const Matrix<Scalar> &dirs) {
  if (dirs.rows() != measure.dim()) throw DimensionMismatch("direction dimension mismatch");
  return measure.supports() * dirs;
}

/// n x L matrix of final projections for one head, evaluated bottleneck
/// first: (X Theta) then (X Theta) Psi.
template <typename Scalar>
Matrix<Scalar> hrt_project_head(const Matrix<Scalar> &supports, const Matrix<Scalar> &head,
                                const Matrix<Scalar> &mixing) {
  const Matrix<Scalar> bottleneck = supports * head;
  return bottleneck * mixing;
}

/// H x L grid; entry [h][l] holds X Theta_h psi_l.
template <typename Scalar>
std::vector<std::vector<Projected1D<Scalar>>> hrt_project(const DiscreteMeasure<Scalar> &measure,
                                                          const ProjectionBundle<Scalar> &bundle) {
  if (bundle.dim() != measure.dim()) throw DimensionMismatch("bundle dimension does not match measure");
  std::vector<std::vector<Projected1D<Scalar>>> grid(static_cast<std::size_t>(bundle.H()));
  for (Index h = 0; h < bundle.H(); ++h) {
    const Matrix<Scalar> projected =
        hrt_project_head(measure.supports(), bundle.heads()[static_cast<std::size_t>(h)], bundle.mixing());
    auto &row = grid[static_cast<std::size_t>(h)];
    row.reserve(static_cast<std::size_t>(bundle.L()));
    for (Index l = 0; l < bundle.L(); ++l) row.push_back({projected.col(l), measure.weights()});
  }
  return grid;
}

/// Theta_h psi_l for every (h, l), as one d x L matrix per head. Not
/// renormalized: norms lie in (0, sqrt(k)].
template <typename Scalar>
std::vector<Matrix<Scalar>> final_directions(const ProjectionBundle<Scalar> &bundle) {
  std::vector<Matrix<Scalar>> out;
  out.reserve(bundle.heads().size());
  for (const auto &head : bundle.heads()) out.push_back(head * bundle.mixing());
  return out;
}

template <typename Scalar = double>
struct Gaussian1D {
  Scalar mean;
  Scalar variance;
};

template <typename Scalar = double>
struct WeightedGaussian1D {
  Scalar weight;
  Scalar mean;
  Scalar variance;
};

/// Pushforward of N(mu, Sigma) under v = psi^T Theta^T x:
/// N(psi^T Theta^T mu, psi^T Theta^T Sigma Theta psi).
template <typename Scalar>
Gaussian1D<Scalar> gaussian_hrt_pushforward(const GaussianMeasure<Scalar> &g, const Matrix<Scalar> &theta,
                                            const Vector<Scalar> &psi) {
  if (theta.rows() != g.dim()) throw DimensionMismatch("theta rows must equal gaussian dimension");
  if (theta.cols() != psi.size()) throw DimensionMismatch("theta columns must equal psi size");
  g.require_psd();
  const Vector<Scalar> omega = theta * psi;
  const Scalar mean = omega.dot(g.mean());
  Scalar variance = omega.dot(g.covariance() * omega);
  if (variance < Scalar(0)) {
    if (variance < Scalar(-1e-12)) throw DomainError("pushforward variance is negative");
    variance = Scalar(0);
  }
  return {mean, variance};
}

template <typename Scalar>
std::vector<WeightedGaussian1D<Scalar>> mixture_hrt_pushforward(const MixtureGaussian<Scalar> &m,
                                                                const Matrix<Scalar> &theta,
                                                                const Vector<Scalar> &psi) {
  std::vector<WeightedGaussian1D<Scalar>> out;
  out.reserve(m.components().size());
  for (const auto &c : m.components()) {
    const auto g = gaussian_hrt_pushforward(c.gaussian, theta, psi);
    out.push_back({c.weight, g.mean, g.variance});
  }
  return out;
}

}  // namespace hsw
