#pragma once

#include "hsw/sliced.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hsw {

// Independent oracles. These run single-threaded in double precision and
// share no code path with the sliced estimators beyond the 1D solver used by
// the grid search.

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method
/// with potentials, O(n^3)). `assignment[i]` is the column matched to row i.
struct AssignmentResult {
  double cost = 0;
  std::vector<Index> assignment;
};
AssignmentResult solve_assignment(const Matrix<double> &cost);

/// Minimum-cost transport plan between supplies `a` and demands `b` (equal
/// totals) by successive shortest paths. Returns the optimal cost.
double solve_transport(const Matrix<double> &cost, const Vector<double> &a, const Vector<double> &b);

/// Exact W_p. Uniform equal-size inputs go through the assignment solver,
/// general weights through the transport solver. Refuses n*m > 10^6.
double exact_wasserstein(const DiscreteMeasure<double> &mu, const DiscreteMeasure<double> &nu, double p);

struct GridMax {
  double value = 0;
  double angle = 0;  // radians in [0, pi)
};

/// Brute-force Max-SW in 2D over phi_j = pi j / grid_points.
GridMax maxsw_grid_2d(const DiscreteMeasure<double> &mu, const DiscreteMeasure<double> &nu, double p,
                      Index grid_points);

enum class Method { kSW, kHSW };

std::string to_string(Method method);
Method parse_method(const std::string &name);

/// FLOP-proportional compute and stored projection entries.
///   SW:  compute = L d n + L n log2 n,                 projection = L d
///   HSW: compute = H k d n + H L k n + H L n log2 n,   projection = H d k + k L
struct CostReport {
  Method method = Method::kSW;
  std::int64_t d = 0, n = 0, L = 0, k = 0, H = 0;
  std::uint64_t compute_units = 0;
  std::uint64_t projection_units = 0;
};

/// log2 n is exact for powers of two; otherwise the real value is used and
/// the compute count is rounded to the nearest integer.
CostReport cost_model(Method method, std::int64_t d, std::int64_t n, std::int64_t L, std::int64_t k = 1,
                      std::int64_t H = 1);

struct BenchConfig {
  Method method = Method::kSW;
  std::int64_t L = 100;
  std::int64_t k = 1;
  std::int64_t H = 1;
};

/// "sw:L=100" or "hsw:k=70:L=2000[:H=1]".
BenchConfig parse_bench_config(const std::string &spec);

struct BenchRow {
  CostReport cost;
  double median_seconds = 0;
  std::vector<double> samples;
};

/// Times each estimator on synthetic Gaussian measures (n points in R^d,
/// N(0, I) against N(1, I)). One untimed warmup run per config; the median
/// is over `repeats` timed runs.
std::vector<BenchRow> bench(const std::vector<BenchConfig> &configs, std::int64_t d, std::int64_t n,
                            std::int64_t repeats, std::uint64_t seed = 0);

/// Header: method,d,n,L,k,H,compute_units,projection_units,median_seconds
void write_bench_csv(std::ostream &out, const std::vector<BenchRow> &rows);

}  // namespace hsw
