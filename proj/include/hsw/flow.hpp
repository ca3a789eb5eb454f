#pragma once

#include "hsw/verification.hpp"

#include <functional>
#include <vector>

namespace hsw {

/// Particle descent x <- x - step_size * grad of the estimator's p-th power,
/// with fresh projections drawn every step.
struct FlowConfig {
  Method method = Method::kHSW;
  double p = 2.0;
  Index L = 128;
  Index k = 8;
  Index H = 1;
  Index steps = 2000;
  double step_size = 50.0;
  Index snapshot_every = 0;  // 0 disables snapshots
  std::uint64_t seed = 0;
};

struct FlowResult {
  Matrix<double> particles;
  std::vector<double> loss;  // estimator value before each step, then once after the last
};

/// Called with (step, particles) at every snapshot step and after the last.
using SnapshotSink = std::function<void(Index, const Matrix<double> &)>;

/// Standard Gaussian particles drawn from the seed's data stream.
Matrix<double> initial_particles(Index n, Index d, std::uint64_t seed);

/// Projection seed used at a given step of the flow.
std::uint64_t flow_step_seed(std::uint64_t seed, Index step);

FlowResult run_flow(const DiscreteMeasure<double> &target, Matrix<double> particles, const FlowConfig &cfg,
                    const SnapshotSink &sink = {});

}  // namespace hsw
