#include "hsw/flow.hpp"

namespace hsw {

Matrix<double> initial_particles(Index n, Index d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw InvalidArgument("flow needs at least one particle and d >= 1");
  Rng rng = Rng(seed).split(Stream::kData);
  Matrix<double> x(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) x(i, j) = rng.normal();
  return x;
}

std::uint64_t flow_step_seed(std::uint64_t seed, Index step) {
  return splitmix64(splitmix64(seed ^ static_cast<std::uint64_t>(Stream::kFlow)) + static_cast<std::uint64_t>(step));
}

FlowResult run_flow(const DiscreteMeasure<double> &target, Matrix<double> particles, const FlowConfig &cfg,
                    const SnapshotSink &sink) {
  if (cfg.steps < 0) throw InvalidArgument("steps must be >= 0");
  if (!(cfg.step_size > 0.0)) throw InvalidArgument("step_size must be > 0");
  if (cfg.snapshot_every < 0) throw InvalidArgument("snapshot_every must be >= 0");
  if (particles.cols() != target.dim()) throw DimensionMismatch("particles and target differ in dimension");
  EstimatorConfig est;
  est.p = cfg.p;
  est.L = cfg.L;
  est.k = cfg.k;
  est.H = cfg.H;
  est.validate(cfg.method == Method::kHSW);

  FlowResult out;
  out.loss.reserve(static_cast<std::size_t>(cfg.steps + 1));
  auto evaluate = [&](Index step, const Matrix<double> &x) {
    est.seed = flow_step_seed(cfg.seed, step);
    const auto current = DiscreteMeasure<double>::uniform(x);
    return cfg.method == Method::kSW ? grad_sw_pow(current, target, est) : grad_hsw_pow(current, target, est);
  };

  for (Index step = 0; step < cfg.steps; ++step) {
    if (sink && cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0) sink(step, particles);
    const auto g = evaluate(step, particles);
    out.loss.push_back(std::pow(g.value, 1.0 / cfg.p));
    particles -= cfg.step_size * g.grad;
  }
  out.loss.push_back(std::pow(evaluate(cfg.steps, particles).value, 1.0 / cfg.p));
  if (sink) sink(cfg.steps, particles);
  out.particles = std::move(particles);
  return out;
}

}  // namespace hsw
