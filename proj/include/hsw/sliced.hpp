#pragma once

#include "hsw/sorting_network.hpp"
#include "hsw/wasserstein1d.hpp"

#include <chrono>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace hsw {

/// Monte Carlo estimator settings. `k` and `H` only apply to HSW.
struct EstimatorConfig {
  double p = 2.0;
  Index L = 100;
  Index k = 1;
  Index H = 1;
  std::uint64_t seed = 0;

  void validate(bool hierarchical) const {
    if (!(p >= 1.0)) throw InvalidArgument("p must be >= 1");
    if (L < 1) throw InvalidArgument("L must be >= 1");
    if (hierarchical && k < 1) throw InvalidArgument("k must be >= 1");
    if (hierarchical && H < 1) throw InvalidArgument("H must be >= 1");
  }
};

/// Projected gradient ascent settings for Max-SW and Max-HSW. The loop stops
/// after T iterations or once the parameters move less than `tolerance`.
struct MaxConfig {
  double eta = 0.1;
  Index T = 100;
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
  Index restarts = 1;

  void validate() const {
    if (!(eta > 0.0)) throw InvalidArgument("eta must be > 0");
    if (T < 1) throw InvalidArgument("T must be >= 1");
    if (!(tolerance >= 0.0)) throw InvalidArgument("tolerance must be >= 0");
    if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
  }
};

template <typename Scalar = double>
struct DistanceEstimate {
  Scalar value = 0;
  std::vector<Scalar> per_projection;  // W_p along each projection
  EstimatorConfig config;
  double elapsed_seconds = 0;
};

template <typename Scalar = double>
struct SlicedGrad {
  Scalar value;         // the estimator's p-th power
  Matrix<Scalar> grad;  // d value / d (first measure's supports), n x d
};

template <typename Scalar = double>
struct MaxSwResult {
  Scalar value = 0;
  Vector<Scalar> theta;
  std::vector<Scalar> trajectory;  // value at each iterate, last entry is the final iterate
};

template <typename Scalar = double>
struct MaxHswResult {
  Scalar value = 0;
  Matrix<Scalar> theta;  // d x k
  Vector<Scalar> psi;    // k
  std::vector<Scalar> trajectory;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename Scalar>
void require_pair(const DiscreteMeasure<Scalar> &mu, const DiscreteMeasure<Scalar> &nu) {
  require_valid(mu, "first measure");
  require_valid(nu, "second measure");
  if (mu.dim() != nu.dim()) {
    throw DimensionMismatch("measures differ in dimension (" + std::to_string(mu.dim()) + " vs " +
                            std::to_string(nu.dim()) + ")");
  }
}

template <typename Scalar>
bool uniform_equal(const DiscreteMeasure<Scalar> &mu, const DiscreteMeasure<Scalar> &nu) {
  return mu.size() == nu.size() && mu.is_uniform() && nu.is_uniform();
}

template <typename Scalar>
void require_uniform_equal(const DiscreteMeasure<Scalar> &mu, const DiscreteMeasure<Scalar> &nu) {
  if (!uniform_equal(mu, nu)) {
    throw UnsupportedConfiguration("support gradients require uniform weights and equal support counts");
  }
}

// W_p^p for every column pair. Columns of pmu/pnu are clobbered (sorted in
// place on the uniform path). Each column writes only its own slot, so the
// result does not depend on the worker count.
template <typename Scalar>
void column_pows(Matrix<Scalar> &pmu, const Vector<Scalar> &wmu, Matrix<Scalar> &pnu, const Vector<Scalar> &wnu,
                 Scalar p, bool uniform, Scalar *out) {
  const Index cols = pmu.cols();
  const auto n = static_cast<std::size_t>(pmu.rows());
  const auto m = static_cast<std::size_t>(pnu.rows());
#pragma omp parallel for schedule(static)
  for (Index c = 0; c < cols; ++c) {
    if (uniform) {
      out[c] = w1d_pow_sorted<Scalar>({pmu.col(c).data(), n}, {pnu.col(c).data(), m}, p);
    } else {
      const Projected1D<Scalar> a{pmu.col(c), wmu};
      const Projected1D<Scalar> b{pnu.col(c), wnu};
      out[c] = w1d_pow_merged(sort_projection(a), sort_projection(b), p);
    }
  }
}

template <typename Scalar>
DistanceEstimate<Scalar> finish(const std::vector<Scalar> &pows, Scalar p) {
  DistanceEstimate<Scalar> est;
  est.per_projection.resize(pows.size());
  for (std::size_t i = 0; i < pows.size(); ++i) est.per_projection[i] = std::pow(pows[i], Scalar(1) / p);
  const Scalar mean = pairwise_sum<Scalar>(pows) / Scalar(pows.size());
  est.value = std::pow(mean, Scalar(1) / p);
  return est;
}

template <typename Scalar>
Vector<Scalar> normalized(const Vector<Scalar> &v, const Vector<Scalar> &fallback) {
  const Scalar norm = v.norm();
  if (!(norm > Scalar(0)) || !std::isfinite(norm)) return fallback;
  return v / norm;
}

}  // namespace detail

namespace detail {

template <typename Scalar>
DistanceEstimate<Scalar> sliced_unchecked(const DiscreteMeasure<Scalar> &mu, const DiscreteMeasure<Scalar> &nu,
                                          const Matrix<Scalar> &dirs, Scalar p) {
  std::vector<Scalar> pows(static_cast<std::size_t>(dirs.cols()));
  const bool uniform = uniform_equal(mu, nu);
  if (uniform && mu.size() <= kNetworkMaxSize) {
    const Matrix<Scalar> pmu = mu.supports() * dirs;
    const Matrix<Scalar> pnu = nu.supports() * dirs;
    network_column_pows(pmu, pnu, p, pows.data());
  } else {
    Matrix<Scalar> pmu = mu.supports() * dirs;
    Matrix<Scalar> pnu = nu.supports() * dirs;
    column_pows(pmu, mu.weights(), pnu, nu.weights(), p, uniform, pows.data());
  }
  auto est = finish(pows, p);
  est.config.p = static_cast<double>(p);
  est.config.L = dirs.cols();
  return est;
}

template <typename Scalar>
DistanceEstimate<Scalar> hsw_unchecked(const DiscreteMeasure<Scalar> &mu, const DiscreteMeasure<Scalar> &nu,
                                       const ProjectionBundle<Scalar> &bundle, Scalar p) {
  const bool uniform = uniform_equal(mu, nu);
  const Index L = bundle.L();
  std::vector<Scalar> pows(static_cast<std::size_t>(bundle.H() * L));
  for (Index h = 0; h < bundle.H(); ++h) {
    const auto &head = bundle.heads()[static_cast<std::size_t>(h)];
    Matrix<Scalar> pmu = hrt_project_head(mu.supports(), head, bundle.mixing());
    Matrix<Scalar> pnu = hrt_project_head(nu.supports(), head, bundle.mixing());
    if (uniform && mu.size() <= kNetworkMaxSize) {
      network_column_pows(pmu, pnu, p, pows.data() + h * L);
    } else {
      column_pows(pmu, mu.weights(), pnu, nu.weights(), p, uniform, pows.data() + h * L);
    }
  }
  auto est = finish(pows, p);
  est.config.p = static_cast<double>(p);
  est.config.k = bundle.k();
  est.config.L = L;
  est.config.H = bundle.H();
  return est;
}

}  // namespace detail

/// Sliced estimate over caller-supplied directions (columns of `dirs`,
/// d x c). Columns need not be unit norm.
template <typename Scalar>
DistanceEstimate<Scalar> sliced_with_directions(const DiscreteMeasure<Scalar> &mu, const DiscreteMeasure<Scalar> &nu,
                                                const Matrix<Scalar> &dirs, Scalar p) {
  const auto start = detail::Clock::now();
  detail::require_pair(mu, nu);
  detail::require_order(p);
  if (dirs.rows() != mu.dim()) throw DimensionMismatch("direction dimension does not match measures");
  if (dirs.cols() < 1) throw InvalidArgument("need at least one direction");
  auto est = detail::sliced_unchecked(mu, nu, dirs, p);
  est.elapsed_seconds = detail::seconds_since(start);
  return est;
}

/// HSW estimate over a fixed bundle, evaluated head by head as
/// (X Theta_h) Psi. Terms are ordered head-major.
template <typename Scalar>
DistanceEstimate<Scalar> hsw_with_bundle(const DiscreteMeasure<Scalar> &mu, const DiscreteMeasure<Scalar> &nu,
                                         const ProjectionBundle<Scalar> &bundle, Scalar p) {
  const auto start = detail::Clock::now();
  detail::require_pair(mu, nu);
  detail::require_order(p);
  if (bundle.dim() != mu.dim()) throw DimensionMismatch("bundle dimension does not match measures");
  auto est = detail::hsw_unchecked(mu, nu, bundle, p);
  est.elapsed_seconds = detail::seconds_since(start);
  return est;
}

/// Directions used by `sw` for a given seed: d x L, unit columns.
template <typename Scalar = double>
Matrix<Scalar> sw_directions(Index d, Index L, std::uint64_t seed) {
  Rng rng = Rng(seed).split(Stream::kDirections);
  return sample_unit_columns<Scalar>(d, L, rng);
}

template <typename Scalar = double>
ProjectionBundle<Scalar> hsw_bundle(Index d, const EstimatorConfig &cfg) {
  return sample_bundle<Scalar>(d, cfg.k, cfg.L, cfg.H, Rng(cfg.seed));
}

/// Monte Carlo sliced Wasserstein with L directions uniform on S^{d-1}.
template <typename Scalar>
DistanceEstimate<Scalar> sw(const DiscreteMeasure<Scalar> &mu, const DiscreteMeasure<Scalar> &nu,
                            const EstimatorConfig &cfg) {
  const auto start = detail::Clock::now();
  cfg.validate(false);
  detail::require_pair(mu, nu);
  auto est = detail::sliced_unchecked(mu, nu, sw_directions<Scalar>(mu.dim(), cfg.L, cfg.seed), Scalar(cfg.p));
  est.config = cfg;
  est.elapsed_seconds = detail::seconds_since(start);
  return est;
}

/// Monte Carlo hierarchical sliced Wasserstein: H heads of k bottleneck
/// directions, L mixing directions, (1/(HL)) sum of W_p^p over the grid.
template <typename Scalar>
DistanceEstimate<Scalar> hsw(const DiscreteMeasure<Scalar> &mu, const DiscreteMeasure<Scalar> &nu,
                             const EstimatorConfig &cfg) {
  const auto start = detail::Clock::now();
  cfg.validate(true);
  detail::require_pair(mu, nu);
  auto est = detail::hsw_unchecked(mu, nu, hsw_bundle<Scalar>(mu.dim(), cfg), Scalar(cfg.p));
  est.config = cfg;
  est.elapsed_seconds = detail::seconds_since(start);
  return est;
}

// Support gradients of the estimators' p-th powers. Each projection's 1D
// gradient is pulled back through its direction; for HSW the pull-back runs
// through Psi then Theta, mirroring the forward pass.

template <typename Scalar>
SlicedGrad<Scalar> sliced_pow_grad_with_directions(const DiscreteMeasure<Scalar> &mu,
                                                   const DiscreteMeasure<Scalar> &nu, const Matrix<Scalar> &dirs,
                                                   Scalar p) {
  detail::require_pair(mu, nu);
  detail::require_order(p);
  detail::require_uniform_equal(mu, nu);
  if (dirs.rows() != mu.dim()) throw DimensionMismatch("direction dimension does not match measures");
  const Matrix<Scalar> pmu = mu.supports() * dirs;
  const Matrix<Scalar> pnu = nu.supports() * dirs;
  Matrix<Scalar> g1(pmu.rows(), pmu.cols());
  std::vector<Scalar> pows(static_cast<std::size_t>(dirs.cols()));
#pragma omp parallel for schedule(static)
  for (Index c = 0; c < dirs.cols(); ++c) pows[c] = pow_grad_uniform<Scalar>(pmu.col(c), pnu.col(c), p, g1.col(c));
  const Scalar inv = Scalar(1) / Scalar(dirs.cols());
  return {pairwise_sum<Scalar>(pows) * inv, (g1 * dirs.transpose()) * inv};
}

template <typename Scalar>
SlicedGrad<Scalar> hsw_pow_grad_with_bundle(const DiscreteMeasure<Scalar> &mu, const DiscreteMeasure<Scalar> &nu,
                                            const ProjectionBundle<Scalar> &bundle, Scalar p) {
  detail::require_pair(mu, nu);
  detail::require_order(p);
  detail::require_uniform_equal(mu, nu);
  if (bundle.dim() != mu.dim()) throw DimensionMismatch("bundle dimension does not match measures");
  const Index L = bundle.L();
  std::vector<Scalar> pows(static_cast<std::size_t>(bundle.H() * L));
  Matrix<Scalar> grad = Matrix<Scalar>::Zero(mu.size(), mu.dim());
  for (Index h = 0; h < bundle.H(); ++h) {
    const auto &head = bundle.heads()[static_cast<std::size_t>(h)];
    const Matrix<Scalar> pmu = hrt_project_head(mu.supports(), head, bundle.mixing());
    const Matrix<Scalar> pnu = hrt_project_head(nu.supports(), head, bundle.mixing());
    Matrix<Scalar> g1(pmu.rows(), L);
    Scalar *slot = pows.data() + h * L;
#pragma omp parallel for schedule(static)
    for (Index c = 0; c < L; ++c) slot[c] = pow_grad_uniform<Scalar>(pmu.col(c), pnu.col(c), p, g1.col(c));
    const Matrix<Scalar> through_mixing = g1 * bundle.mixing().transpose();
    grad.noalias() += through_mixing * head.transpose();
  }
  const Scalar inv = Scalar(1) / Scalar(bundle.H() * L);
  return {pairwise_sum<Scalar>(pows) * inv, grad * inv};
}

template <typename Scalar>
SlicedGrad<Scalar> grad_sw_pow(const DiscreteMeasure<Scalar> &mu, const DiscreteMeasure<Scalar> &nu,
                               const EstimatorConfig &cfg) {
  cfg.validate(false);
  detail::require_pair(mu, nu);
  return sliced_pow_grad_with_directions(mu, nu, sw_directions<Scalar>(mu.dim(), cfg.L, cfg.seed), Scalar(cfg.p));
}

template <typename Scalar>
SlicedGrad<Scalar> grad_hsw_pow(const DiscreteMeasure<Scalar> &mu, const DiscreteMeasure<Scalar> &nu,
                                const EstimatorConfig &cfg) {
  cfg.validate(true);
  detail::require_pair(mu, nu);
  return hsw_pow_grad_with_bundle(mu, nu, hsw_bundle<Scalar>(mu.dim(), cfg), Scalar(cfg.p));
}

template <typename Scalar = double>
struct DirectionalValue {
  Scalar value;         // W_p along omega
  Vector<Scalar> grad;  // gradient of W_p with respect to omega
};

/// W_p between the projections of mu and nu on omega, and its gradient in
/// omega. The optimal 1D coupling is held fixed while differentiating.
template <typename Scalar>
DirectionalValue<Scalar> directional_wp(const DiscreteMeasure<Scalar> &mu, const DiscreteMeasure<Scalar> &nu,
                                        const Vector<Scalar> &omega, Scalar p) {
  const Vector<Scalar> a = mu.supports() * omega;
  const Vector<Scalar> b = nu.supports() * omega;
  Scalar pow_value(0);
  Vector<Scalar> grad_pow;
  if (detail::uniform_equal(mu, nu)) {
    const Index n = a.size();
    const std::vector<Index> sa = stable_argsort<Scalar>(a);
    const std::vector<Index> sb = stable_argsort<Scalar>(b);
    Vector<Scalar> ca = Vector<Scalar>::Zero(n), cb = Vector<Scalar>::Zero(n);
    const Scalar inv_n = Scalar(1) / Scalar(n);
    for (Index r = 0; r < n; ++r) {
      const Index i = sa[static_cast<std::size_t>(r)], j = sb[static_cast<std::size_t>(r)];
      const Scalar diff = a[i] - b[j];
      pow_value += abs_pow(diff, p);
      const Scalar c = inv_n * p * abs_pow(diff, p - Scalar(1)) * sign(diff);
      ca[i] = c;
      cb[j] = c;
    }
    pow_value *= inv_n;
    grad_pow = mu.supports().transpose() * ca - nu.supports().transpose() * cb;
  } else {
    const auto coupling =
        monotone_coupling(sort_projection(Projected1D<Scalar>{a, mu.weights()}),
                          sort_projection(Projected1D<Scalar>{b, nu.weights()}));
    Vector<Scalar> ca = Vector<Scalar>::Zero(a.size()), cb = Vector<Scalar>::Zero(b.size());
    for (const auto &e : coupling) {
      const Scalar diff = a[e.a] - b[e.b];
      pow_value += e.mass * abs_pow(diff, p);
      const Scalar c = e.mass * p * abs_pow(diff, p - Scalar(1)) * sign(diff);
      ca[e.a] += c;
      cb[e.b] += c;
    }
    grad_pow = mu.supports().transpose() * ca - nu.supports().transpose() * cb;
  }
  const Scalar value = std::pow(pow_value, Scalar(1) / p);
  if (!(value > Scalar(0))) return {Scalar(0), Vector<Scalar>::Zero(omega.size())};
  return {value, grad_pow / (p * std::pow(value, p - Scalar(1)))};
}

/// Max-SW by projected gradient ascent on the sphere. Returns the best value
/// seen over all iterates (and restarts) together with its direction.
template <typename Scalar>
MaxSwResult<Scalar> max_sw(const DiscreteMeasure<Scalar> &mu, const DiscreteMeasure<Scalar> &nu, Scalar p,
                           const MaxConfig &cfg) {
  cfg.validate();
  detail::require_order(p);
  detail::require_pair(mu, nu);
  const Scalar eta = static_cast<Scalar>(cfg.eta);
  MaxSwResult<Scalar> best;
  best.value = -std::numeric_limits<Scalar>::infinity();
  for (Index r = 0; r < cfg.restarts; ++r) {
    Rng rng = Rng(cfg.seed).split(Stream::kOptimizer).split(static_cast<std::uint64_t>(r));
    Vector<Scalar> theta = sample_unit_columns<Scalar>(mu.dim(), 1, rng).col(0);
    MaxSwResult<Scalar> run;
    run.value = -std::numeric_limits<Scalar>::infinity();
    auto record = [&](Scalar v) {
      run.trajectory.push_back(v);
      if (v > run.value) {
        run.value = v;
        run.theta = theta;
      }
    };
    for (Index t = 0; t < cfg.T; ++t) {
      const auto eval = directional_wp(mu, nu, theta, p);
      record(eval.value);
      const Vector<Scalar> next = detail::normalized<Scalar>(theta + eta * eval.grad, theta);
      const Scalar movement = (next - theta).norm();
      theta = next;
      if (movement < Scalar(cfg.tolerance)) break;
    }
    record(directional_wp(mu, nu, theta, p).value);
    if (run.value > best.value) best = std::move(run);
  }
  return best;
}

/// Max-HSW by alternating projected ascent: psi first, then each theta_i in
/// turn, each step followed by its normalization and using the gradient at
/// the current parameters.
template <typename Scalar>
MaxHswResult<Scalar> max_hsw(const DiscreteMeasure<Scalar> &mu, const DiscreteMeasure<Scalar> &nu, Scalar p, Index k,
                             const MaxConfig &cfg) {
  cfg.validate();
  detail::require_order(p);
  detail::require_pair(mu, nu);
  if (k < 1) throw InvalidArgument("k must be >= 1");
  const Scalar eta = static_cast<Scalar>(cfg.eta);
  MaxHswResult<Scalar> best;
  best.value = -std::numeric_limits<Scalar>::infinity();
  for (Index r = 0; r < cfg.restarts; ++r) {
    Rng rng = Rng(cfg.seed).split(Stream::kOptimizer).split(static_cast<std::uint64_t>(r));
    Matrix<Scalar> theta = sample_unit_columns<Scalar>(mu.dim(), k, rng);
    // S^0 is pinned to {1} so that k = 1 coincides with Max-SW.
    Vector<Scalar> psi =
        k == 1 ? Vector<Scalar>::Ones(1) : Vector<Scalar>(sample_unit_columns<Scalar>(k, 1, rng).col(0));
    MaxHswResult<Scalar> run;
    run.value = -std::numeric_limits<Scalar>::infinity();
    auto record = [&](Scalar v) {
      run.trajectory.push_back(v);
      if (v > run.value) {
        run.value = v;
        run.theta = theta;
        run.psi = psi;
      }
    };
    for (Index t = 0; t < cfg.T; ++t) {
      const Matrix<Scalar> theta_before = theta;
      const Vector<Scalar> psi_before = psi;

      auto eval = directional_wp<Scalar>(mu, nu, theta * psi, p);
      record(eval.value);
      psi = detail::normalized<Scalar>(psi + eta * (theta.transpose() * eval.grad), psi);
      for (Index i = 0; i < k; ++i) {
        eval = directional_wp<Scalar>(mu, nu, theta * psi, p);
        const Vector<Scalar> col = theta.col(i);
        theta.col(i) = detail::normalized<Scalar>(col + eta * psi[i] * eval.grad, col);
      }

      const Scalar movement =
          std::sqrt((theta - theta_before).squaredNorm() + (psi - psi_before).squaredNorm());
      if (movement < Scalar(cfg.tolerance)) break;
    }
    record(directional_wp<Scalar>(mu, nu, theta * psi, p).value);
    if (run.value > best.value) best = std::move(run);
  }
  return best;
}

struct KAdvice {
  std::int64_t k = 0;
  std::string warning;  // set when no k >= 1 satisfies the bound
};

/// Largest k for which HSW with L final projections costs no more than SW
/// with L projections: k <= L d / (L + d).
KAdvice recommend_k(std::int64_t d, std::int64_t L);

/// Largest k for which HSW with L2 final projections costs no more than SW
/// with L1 projections at n supports:
/// k <= (L1 d - (L2 - L1) log2 n) / (d + L2).
KAdvice recommend_k_vs(std::int64_t d, std::int64_t L1, std::int64_t L2, std::int64_t n);

}  // namespace hsw
