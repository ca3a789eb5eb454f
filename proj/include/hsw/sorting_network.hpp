#pragma once

#include "hsw/common.hpp"

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

namespace hsw {

using SortingNetwork = std::vector<std::pair<Index, Index>>;

/// Batcher odd-even merge sort comparators for n keys. Built for the next
/// power of two with comparators touching indices >= n dropped, which is
/// valid because padding keys behave as +inf and never move.
inline SortingNetwork batcher_network(Index n) {
  SortingNetwork net;
  Index size = 1;
  while (size < n) size <<= 1;
  for (Index p = 1; p < size; p <<= 1)
    for (Index k = p; k >= 1; k >>= 1)
      for (Index j = k % p; j + k < size; j += 2 * k)
        for (Index i = 0; i < std::min(k, size - j - k); ++i)
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p) && i + j + k < n) net.emplace_back(i + j, i + j + k);
  return net;
}

/// Largest support count routed through the network path; beyond it the
/// O(n log^2 n) comparator count loses to std::sort.
inline constexpr Index kNetworkMaxSize = 256;

namespace detail {

inline constexpr Index kNetworkBlock = 32;

template <typename Scalar>
void apply_network(Scalar *block, const SortingNetwork &net) {
  for (const auto &[a, b] : net) {
    Scalar *__restrict ra = block + a * kNetworkBlock;
    Scalar *__restrict rb = block + b * kNetworkBlock;
    for (Index j = 0; j < kNetworkBlock; ++j) {
      const Scalar x = ra[j], y = rb[j];
      ra[j] = std::min(x, y);
      rb[j] = std::max(x, y);
    }
  }
}

}  // namespace detail

/// W_p^p for every column pair of two n x c projection matrices (uniform
/// weights, equal n). Columns are copied 32 at a time into a row-interleaved
/// block and sorted together by running the same network across the block,
/// so each comparator is a vector min/max. Produces the same values, summed
/// in the same order, as sorting each column and calling w1d_pow_sorted.
template <typename Scalar>
void network_column_pows(const Matrix<Scalar> &pmu, const Matrix<Scalar> &pnu, Scalar p, Scalar *out) {
  constexpr Index B = detail::kNetworkBlock;
  const Index n = pmu.rows();
  const Index cols = pmu.cols();
  const SortingNetwork net = batcher_network(n);
  const Index blocks = (cols + B - 1) / B;
#pragma omp parallel
  {
    std::vector<Scalar> a(static_cast<std::size_t>(n * B)), b(static_cast<std::size_t>(n * B));
    std::array<Scalar, B> acc;
#pragma omp for schedule(static)
    for (Index blk = 0; blk < blocks; ++blk) {
      const Index c0 = blk * B;
      const Index w = std::min(B, cols - c0);
      if (w < B) {
        std::fill(a.begin(), a.end(), Scalar(0));
        std::fill(b.begin(), b.end(), Scalar(0));
      }
      for (Index j = 0; j < w; ++j) {
        const Scalar *ca = pmu.col(c0 + j).data();
        const Scalar *cb = pnu.col(c0 + j).data();
        for (Index i = 0; i < n; ++i) {
          a[static_cast<std::size_t>(i * B + j)] = ca[i];
          b[static_cast<std::size_t>(i * B + j)] = cb[i];
        }
      }
      detail::apply_network(a.data(), net);
      detail::apply_network(b.data(), net);
      acc.fill(Scalar(0));
      const Scalar *pa = a.data();
      const Scalar *pb = b.data();
      if (p == Scalar(2)) {
        for (Index i = 0; i < n; ++i)
          for (Index j = 0; j < B; ++j) {
            const Scalar diff = pa[i * B + j] - pb[i * B + j];
            acc[static_cast<std::size_t>(j)] += diff * diff;
          }
      } else {
        for (Index i = 0; i < n; ++i)
          for (Index j = 0; j < B; ++j) acc[static_cast<std::size_t>(j)] += abs_pow(pa[i * B + j] - pb[i * B + j], p);
      }
      for (Index j = 0; j < w; ++j) out[c0 + j] = acc[static_cast<std::size_t>(j)] / Scalar(n);
    }
  }
}

}  // namespace hsw
