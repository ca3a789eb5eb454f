#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hsw::cli {

inline constexpr const char *kVersion = "0.1.0";

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kParseError = 2;
inline constexpr int kDimensionMismatch = 3;
inline constexpr int kInvalidConfig = 4;

/// One run's structured output, printed as key=value lines in insertion order.
class RunResult {
 public:
  void add(const std::string &key, const std::string &value) { fields_.emplace_back(key, value); }
  void add(const std::string &key, double value);
  void add(const std::string &key, long long value);
  void write(std::ostream &out) const;
  const std::vector<std::pair<std::string, std::string>> &fields() const { return fields_; }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace hsw::cli
