#pragma once

#include <boost/random/normal_distribution.hpp>

#include <cstdint>
#include <random>

namespace hsw {

// Named substreams derived from one user seed. Each consumer draws from its
// own stream so adding draws to one never shifts another.
enum class Stream : std::uint64_t {
  kDirections = 1,  // SW directions and HSW bottleneck heads
  kMixing = 2,      // HSW mixing directions
  kOptimizer = 3,   // Max-SW / Max-HSW initialization
  kData = 4,        // synthetic samples
  kFlow = 5,        // per-step projection seeds in the flow demo
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Splittable generator: a child is keyed by (parent key, stream id) through
// splitmix64, so workers can derive independent reproducible streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(splitmix64(seed)), engine_(key_) {}

  Rng split(std::uint64_t stream) const {
    Rng child(0);
    child.key_ = splitmix64(key_ ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
    child.engine_.seed(child.key_);
    return child;
  }
  Rng split(Stream stream) const {
    return split(static_cast<std::uint64_t>(stream));
  }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }

  std::mt19937_64 &engine() { return engine_; }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
  boost::random::normal_distribution<double> normal_{0.0, 1.0};  // ziggurat
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace hsw
