#include "hsw/verification.hpp"

#include <numbers>

namespace hsw {

double exact_wasserstein(const DiscreteMeasure<double> &mu, const DiscreteMeasure<double> &nu, double p) {
  detail::require_order(p);
  detail::require_pair(mu, nu);
  const Index n = mu.size(), m = nu.size();
  if (static_cast<double>(n) * static_cast<double>(m) > 1e6) {
    throw ResourceLimit("exact_wasserstein refuses n*m > 10^6");
  }
  Matrix<double> cost(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j) cost(i, j) = abs_pow((mu.supports().row(i) - nu.supports().row(j)).norm(), p);

  double total = 0;
  if (detail::uniform_equal(mu, nu)) {
    total = solve_assignment(cost).cost / static_cast<double>(n);
  } else {
    total = solve_transport(cost, mu.weights() / mu.weights().sum(), nu.weights() / nu.weights().sum());
  }
  return std::pow(std::max(total, 0.0), 1.0 / p);
}

GridMax maxsw_grid_2d(const DiscreteMeasure<double> &mu, const DiscreteMeasure<double> &nu, double p,
                      Index grid_points) {
  detail::require_order(p);
  detail::require_pair(mu, nu);
  if (mu.dim() != 2) throw UnsupportedConfiguration("maxsw_grid_2d requires d = 2");
  if (grid_points < 16) throw InvalidArgument("maxsw_grid_2d requires grid_points >= 16");
  GridMax best{-1.0, 0.0};
  for (Index g = 0; g < grid_points; ++g) {
    const double phi = std::numbers::pi * static_cast<double>(g) / static_cast<double>(grid_points);
    Vector<double> theta(2);
    theta << std::cos(phi), std::sin(phi);
    const Projected1D<double> a{mu.supports() * theta, mu.weights()};
    const Projected1D<double> b{nu.supports() * theta, nu.weights()};
    const double v = w1d(a, b, p);
    if (v > best.value) best = {v, phi};
  }
  return best;
}

}  // namespace hsw
