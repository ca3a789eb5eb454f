#include "hsw/verification.hpp"

#include <bit>
#include <cmath>

namespace hsw {
namespace {

void require_positive(std::int64_t value, const char *name) {
  if (value < 1) throw InvalidArgument(std::string(name) + " must be a positive integer");
}

// n * log2(n) times `scale`, exact when n is a power of two.
std::uint64_t sort_units(std::uint64_t scale, std::uint64_t n) {
  if (std::has_single_bit(n)) return scale * n * static_cast<std::uint64_t>(std::countr_zero(n));
  const long double v = static_cast<long double>(scale) * static_cast<long double>(n) * std::log2l(static_cast<long double>(n));
  return static_cast<std::uint64_t>(std::llround(v));
}

}  // namespace

std::string to_string(Method method) { return method == Method::kSW ? "sw" : "hsw"; }

Method parse_method(const std::string &name) {
  if (name == "sw" || name == "SW") return Method::kSW;
  if (name == "hsw" || name == "HSW") return Method::kHSW;
  throw InvalidArgument("unknown method '" + name + "'");
}

CostReport cost_model(Method method, std::int64_t d, std::int64_t n, std::int64_t L, std::int64_t k,
                      std::int64_t H) {
  require_positive(d, "d");
  require_positive(n, "n");
  require_positive(L, "L");
  CostReport r;
  r.method = method;
  r.d = d;
  r.n = n;
  r.L = L;
  const auto ud = static_cast<std::uint64_t>(d), un = static_cast<std::uint64_t>(n),
             uL = static_cast<std::uint64_t>(L);
  if (method == Method::kSW) {
    r.k = 0;
    r.H = 0;
    r.compute_units = uL * ud * un + sort_units(uL, un);
    r.projection_units = uL * ud;
    return r;
  }
  require_positive(k, "k");
  require_positive(H, "H");
  r.k = k;
  r.H = H;
  const auto uk = static_cast<std::uint64_t>(k), uH = static_cast<std::uint64_t>(H);
  r.compute_units = uH * uk * ud * un + uH * uL * uk * un + sort_units(uH * uL, un);
  r.projection_units = uH * ud * uk + uk * uL;
  return r;
}

KAdvice recommend_k(std::int64_t d, std::int64_t L) {
  require_positive(d, "d");
  require_positive(L, "L");
  KAdvice out;
  out.k = (L * d) / (L + d);
  if (out.k < 1) {
    out.k = 0;
    out.warning = "no admissible k: bound L*d/(L+d) is below 1";
  }
  return out;
}

KAdvice recommend_k_vs(std::int64_t d, std::int64_t L1, std::int64_t L2, std::int64_t n) {
  require_positive(d, "d");
  require_positive(L1, "L1");
  require_positive(L2, "L2");
  require_positive(n, "n");
  if (L2 < L1) throw InvalidArgument("L2 must be >= L1");
  const long double bound =
      (static_cast<long double>(L1) * d - static_cast<long double>(L2 - L1) * std::log2l(static_cast<long double>(n))) /
      static_cast<long double>(d + L2);
  KAdvice out;
  if (bound < 1.0L) {
    out.warning = "no admissible k: bound (L1*d - (L2-L1)*log2 n)/(d+L2) is below 1";
    return out;
  }
  out.k = static_cast<std::int64_t>(std::floor(bound));
  return out;
}

}  // namespace hsw
