#include "hsw/verification.hpp"

#include <algorithm>
#include <limits>

namespace hsw {

// Successive shortest paths on the dense bipartite residual graph. Forward
// arcs source -> sink are uncapacitated with cost C(i, j); a backward arc
// sink -> source exists while flow(i, j) > 0. Node potentials keep reduced
// costs nonnegative so each phase is a plain O(V^2) Dijkstra.
double solve_transport(const Matrix<double> &cost, const Vector<double> &a, const Vector<double> &b) {
  const Index n = cost.rows();
  const Index m = cost.cols();
  if (a.size() != n || b.size() != m) throw DimensionMismatch("transport marginals do not match cost matrix");
  if ((cost.array() < 0.0).any()) throw InvalidArgument("transport costs must be nonnegative");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double eps = 1e-15 * std::max(a.sum(), b.sum());

  Vector<double> supply = a, demand = b;
  Matrix<double> flow = Matrix<double>::Zero(n, m);
  const Index nodes = n + m;
  std::vector<double> pot(static_cast<std::size_t>(nodes), 0.0), dist(static_cast<std::size_t>(nodes));
  std::vector<Index> parent(static_cast<std::size_t>(nodes));
  std::vector<char> done(static_cast<std::size_t>(nodes));

  for (;;) {
    bool any_supply = false, any_demand = false;
    for (Index i = 0; i < n; ++i) any_supply |= supply[i] > eps;
    for (Index j = 0; j < m; ++j) any_demand |= demand[j] > eps;
    if (!any_supply || !any_demand) break;

    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), 0);
    std::fill(parent.begin(), parent.end(), Index(-1));
    for (Index i = 0; i < n; ++i)
      if (supply[i] > eps) dist[static_cast<std::size_t>(i)] = 0.0;

    for (Index iter = 0; iter < nodes; ++iter) {
      Index u = -1;
      for (Index v = 0; v < nodes; ++v) {
        const auto sv = static_cast<std::size_t>(v);
        if (!done[sv] && dist[sv] < kInf && (u < 0 || dist[sv] < dist[static_cast<std::size_t>(u)])) u = v;
      }
      if (u < 0) break;
      const auto su = static_cast<std::size_t>(u);
      done[su] = 1;
      if (u < n) {
        for (Index j = 0; j < m; ++j) {
          const auto sj = static_cast<std::size_t>(n + j);
          if (done[sj]) continue;
          const double nd = dist[su] + cost(u, j) + pot[su] - pot[sj];
          if (nd < dist[sj]) {
            dist[sj] = nd;
            parent[sj] = u;
          }
        }
      } else {
        const Index j = u - n;
        for (Index i = 0; i < n; ++i) {
          const auto si = static_cast<std::size_t>(i);
          if (done[si] || flow(i, j) <= eps) continue;
          const double nd = dist[su] - cost(i, j) + pot[su] - pot[si];
          if (nd < dist[si]) {
            dist[si] = nd;
            parent[si] = u;
          }
        }
      }
    }

    Index target = -1;
    for (Index j = 0; j < m; ++j) {
      const auto sj = static_cast<std::size_t>(n + j);
      if (demand[j] > eps && dist[sj] < kInf &&
          (target < 0 || dist[sj] < dist[static_cast<std::size_t>(target)]))
        target = n + j;
    }
    if (target < 0) break;
    const double reach = dist[static_cast<std::size_t>(target)];
    for (Index v = 0; v < nodes; ++v) {
      const auto sv = static_cast<std::size_t>(v);
      pot[sv] += std::min(dist[sv], reach);
    }

    // Bottleneck along the path target <- ... <- source.
    double push = demand[target - n];
    Index v = target;
    while (parent[static_cast<std::size_t>(v)] >= 0) {
      const Index u = parent[static_cast<std::size_t>(v)];
      if (u >= n) push = std::min(push, flow(v, u - n));  // backward arc sink u -> source v
      v = u;
    }
    push = std::min(push, supply[v]);

    supply[v] -= push;
    demand[target - n] -= push;
    v = target;
    while (parent[static_cast<std::size_t>(v)] >= 0) {
      const Index u = parent[static_cast<std::size_t>(v)];
      if (u < n) {
        flow(u, v - n) += push;
      } else {
        flow(v, u - n) -= push;
      }
      v = u;
    }
  }
  return (flow.array() * cost.array()).sum();
}

}  // namespace hsw
