#include "hsw/verification.hpp"

#include <limits>

namespace hsw {

// Shortest augmenting path form of the Hungarian method (row potentials u,
// column potentials v). Rows are added one at a time; each insertion runs a
// Dijkstra-like sweep over reduced costs.
AssignmentResult solve_assignment(const Matrix<double> &cost) {
  const Index n = cost.rows();
  if (cost.cols() != n) throw InvalidArgument("assignment cost matrix must be square");
  if (n == 0) return {};
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // 1-based internally; column 0 is the virtual start.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<Index> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (Index i = 1; i <= n; ++i) {
    match[0] = i;
    Index j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const Index i0 = match[j0];
      double delta = kInf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const Index j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  AssignmentResult out;
  out.assignment.assign(static_cast<std::size_t>(n), 0);
  for (Index j = 1; j <= n; ++j) out.assignment[static_cast<std::size_t>(match[j] - 1)] = j - 1;
  for (Index i = 0; i < n; ++i) out.cost += cost(i, out.assignment[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace hsw
