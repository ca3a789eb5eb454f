#pragma once

#include "hsw/transforms.hpp"

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

namespace hsw {

/// Atoms sorted by (value, original index) with the running CDF. Zero-mass
/// atoms are dropped so the CDF increments are strictly positive.
template <typename Scalar = double>
struct SortedProjection {
  Vector<Scalar> values;
  Vector<Scalar> cumulative_weights;
  std::vector<Index> order;  // original index of each sorted atom
};

/// Indices 0..n-1 ordered by (values[i], i).
template <typename Scalar>
std::vector<Index> stable_argsort(const Eigen::Ref<const Vector<Scalar>> &values) {
  std::vector<Index> idx(static_cast<std::size_t>(values.size()));
  std::iota(idx.begin(), idx.end(), Index(0));
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) { return values[a] < values[b]; });
  return idx;
}

template <typename Scalar>
SortedProjection<Scalar> sort_projection(const Projected1D<Scalar> &a) {
  const std::vector<Index> idx = stable_argsort<Scalar>(a.values);
  SortedProjection<Scalar> out;
  out.order.reserve(idx.size());
  for (Index i : idx)
    if (a.weights[i] > Scalar(0)) out.order.push_back(i);
  const Index m = static_cast<Index>(out.order.size());
  out.values.resize(m);
  out.cumulative_weights.resize(m);
  Scalar acc(0);
  for (Index r = 0; r < m; ++r) {
    const Index i = out.order[static_cast<std::size_t>(r)];
    out.values[r] = a.values[i];
    acc += a.weights[i];
    out.cumulative_weights[r] = acc;
  }
  return out;
}

namespace detail {

template <typename Scalar>
void require_order(Scalar p) {
  if (!(p >= Scalar(1))) throw InvalidArgument("order p must be >= 1");
}

template <typename Scalar>
void require_probability(const Projected1D<Scalar> &a, const char *name) {
  if (a.values.size() != a.weights.size()) throw InvalidArgument(std::string(name) + ": values/weights size mismatch");
  if (a.values.size() == 0) throw InvalidArgument(std::string(name) + ": empty projection");
  if ((a.weights.array() < Scalar(0)).any()) throw InvalidArgument(std::string(name) + ": negative weight");
  if (std::abs(a.weights.sum() - Scalar(1)) > Scalar(kWeightTolerance)) {
    throw InvalidArgument(std::string(name) + ": weights do not sum to 1");
  }
}

template <typename Scalar>
bool is_uniform(const Vector<Scalar> &w) {
  const Scalar u = Scalar(1) / Scalar(w.size());
  return ((w.array() - u).abs() <= Scalar(1e-15)).all();
}

}  // namespace detail

/// mean_i |x_(i) - y_(i)|^p for equal-size uniform atoms. Sorts both spans
/// in place.
template <typename Scalar>
Scalar w1d_pow_sorted(std::span<Scalar> x, std::span<Scalar> y, Scalar p) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  Scalar total(0);
  for (std::size_t i = 0; i < x.size(); ++i) total += abs_pow(x[i] - y[i], p);
  return total / Scalar(x.size());
}

/// Integral of |F_a^-1(z) - F_b^-1(z)|^p over (0, 1) by merging the two
/// breakpoint sequences; the quantile difference is constant between
/// consecutive breakpoints. The loop is symmetric in (a, b).
template <typename Scalar>
Scalar w1d_pow_merged(const SortedProjection<Scalar> &a, const SortedProjection<Scalar> &b, Scalar p) {
  const Index na = a.values.size();
  const Index nb = b.values.size();
  Index i = 0, j = 0;
  Scalar prev(0), total(0);
  while (i < na && j < nb) {
    const Scalar fa = i + 1 == na ? Scalar(1) : a.cumulative_weights[i];
    const Scalar fb = j + 1 == nb ? Scalar(1) : b.cumulative_weights[j];
    const Scalar next = std::min(fa, fb);
    const Scalar mass = next - prev;
    if (mass > Scalar(0)) total += mass * abs_pow(a.values[i] - b.values[j], p);
    if (next > prev) prev = next;
    if (fa <= next) ++i;
    if (fb <= next) ++j;
  }
  return total;
}

template <typename Scalar = double>
struct CouplingEntry {
  Index a;  // original atom index in the first measure
  Index b;  // original atom index in the second
  Scalar mass;
};

/// The monotone (quantile) coupling, which is optimal in 1D for every p >= 1.
template <typename Scalar>
std::vector<CouplingEntry<Scalar>> monotone_coupling(const SortedProjection<Scalar> &a,
                                                     const SortedProjection<Scalar> &b) {
  std::vector<CouplingEntry<Scalar>> out;
  const Index na = a.values.size();
  const Index nb = b.values.size();
  Index i = 0, j = 0;
  Scalar prev(0);
  while (i < na && j < nb) {
    const Scalar fa = i + 1 == na ? Scalar(1) : a.cumulative_weights[i];
    const Scalar fb = j + 1 == nb ? Scalar(1) : b.cumulative_weights[j];
    const Scalar next = std::min(fa, fb);
    if (next > prev) {
      out.push_back({a.order[static_cast<std::size_t>(i)], b.order[static_cast<std::size_t>(j)], next - prev});
      prev = next;
    }
    if (fa <= next) ++i;
    if (fb <= next) ++j;
  }
  return out;
}

/// W_p^p between two projected measures: the sorting path when both are
/// uniform with equal counts, breakpoint merging otherwise.
template <typename Scalar>
Scalar w1d_pow(const Projected1D<Scalar> &a, const Projected1D<Scalar> &b, Scalar p) {
  detail::require_order(p);
  detail::require_probability(a, "first projection");
  detail::require_probability(b, "second projection");
  if (a.values.size() == b.values.size() && detail::is_uniform(a.weights) && detail::is_uniform(b.weights)) {
    Vector<Scalar> x = a.values, y = b.values;
    return w1d_pow_sorted<Scalar>({x.data(), static_cast<std::size_t>(x.size())},
                                  {y.data(), static_cast<std::size_t>(y.size())}, p);
  }
  return w1d_pow_merged(sort_projection(a), sort_projection(b), p);
}

template <typename Scalar>
Scalar w1d(const Projected1D<Scalar> &a, const Projected1D<Scalar> &b, Scalar p) {
  const Scalar v = w1d_pow(a, b, p);
  return p == Scalar(1) ? v : std::pow(v, Scalar(1) / p);
}

/// Always takes the breakpoint-merging path.
template <typename Scalar>
Scalar w1d_merged(const Projected1D<Scalar> &a, const Projected1D<Scalar> &b, Scalar p) {
  detail::require_order(p);
  detail::require_probability(a, "first projection");
  detail::require_probability(b, "second projection");
  return std::pow(w1d_pow_merged(sort_projection(a), sort_projection(b), p), Scalar(1) / p);
}

/// W_2 between N(m1, s1^2) and N(m2, s2^2); s1, s2 are standard deviations.
template <typename Scalar>
Scalar w1d_gaussian(Scalar m1, Scalar s1, Scalar m2, Scalar s2) {
  if (s1 < Scalar(0) || s2 < Scalar(0)) throw InvalidArgument("standard deviation must be >= 0");
  return std::hypot(m1 - m2, s1 - s2);
}

template <typename Scalar = double>
struct PowGrad {
  Scalar value;           // W_p^p
  Vector<Scalar> grad_a;  // d value / d a.values
};

/// Sorted matching for equal-size uniform inputs. Ties are ordered by
/// original index; an exactly tied pair contributes zero gradient.
template <typename Scalar>
Scalar pow_grad_uniform(const Eigen::Ref<const Vector<Scalar>> &x, const Eigen::Ref<const Vector<Scalar>> &y, Scalar p,
                        Eigen::Ref<Vector<Scalar>> grad) {
  const Index n = x.size();
  const std::vector<Index> sx = stable_argsort<Scalar>(x);
  const std::vector<Index> sy = stable_argsort<Scalar>(y);
  const Scalar inv_n = Scalar(1) / Scalar(n);
  Scalar total(0);
  for (Index r = 0; r < n; ++r) {
    const Index i = sx[static_cast<std::size_t>(r)];
    const Scalar diff = x[i] - y[sy[static_cast<std::size_t>(r)]];
    total += abs_pow(diff, p);
    grad[i] = inv_n * p * abs_pow(diff, p - Scalar(1)) * sign(diff);
  }
  return total * inv_n;
}

template <typename Scalar>
PowGrad<Scalar> w1d_pow_grad(const Projected1D<Scalar> &a, const Projected1D<Scalar> &b, Scalar p) {
  detail::require_order(p);
  detail::require_probability(a, "first projection");
  detail::require_probability(b, "second projection");
  if (a.values.size() != b.values.size() || !detail::is_uniform(a.weights) || !detail::is_uniform(b.weights)) {
    throw UnsupportedConfiguration("gradient requires uniform weights and equal support counts");
  }
  PowGrad<Scalar> out{Scalar(0), Vector<Scalar>::Zero(a.values.size())};
  out.value = pow_grad_uniform<Scalar>(a.values, b.values, p, out.grad_a);
  return out;
}

}  // namespace hsw
