#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsw {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

// Error hierarchy. The CLI maps these onto exit codes.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct UnsupportedConfiguration : std::logic_error {
  using std::logic_error::logic_error;
};

struct ResourceLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

constexpr double kWeightTolerance = 1e-9;
constexpr double kUnitNormTolerance = 1e-9;

// |x|^p with the common exponents special-cased.
template <typename Scalar>
inline Scalar abs_pow(Scalar x, Scalar p) {
  const Scalar a = std::abs(x);
  if (p == Scalar(1)) return a;
  if (p == Scalar(2)) return a * a;
  return std::pow(a, p);
}

template <typename Scalar>
inline Scalar sign(Scalar x) {
  return Scalar((x > Scalar(0)) - (x < Scalar(0)));
}

// Fixed-order pairwise summation. The result depends only on the input
// order, never on how the terms were produced.
template <typename Scalar>
Scalar pairwise_sum(std::span<const Scalar> terms) {
  if (terms.size() <= 8) {
    Scalar s(0);
    for (Scalar t : terms) s += t;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

// Sets the worker count used by the estimators and by Eigen's products.
// Zero means "available parallelism".
void set_threads(int threads);
int threads();

}  // namespace hsw
