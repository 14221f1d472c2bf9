#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace p33::acceptance {

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool upper = true;  // value <= bound, else value >= bound
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  std::vector<std::string> failures;  // exceptions and structural misses

  bool pass() const;
};

struct Options {
  std::uint64_t seed = 20240917;
  // Replaces every upper-bound tolerance when set.
  std::optional<double> tolerance;
  // Instance counts are multiplied by this (>= 1 instance each).
  double scale = 1.0;
};

inline constexpr int kNumCriteria = 10;

CriterionResult run_criterion(int id, const Options& opts);
std::vector<CriterionResult> run_all(const Options& opts);

// One line: "[PASS] 3 edge operators | name value<=bound, ...".
std::string format(const CriterionResult& r);

}  // namespace p33::acceptance
