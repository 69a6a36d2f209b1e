#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zeroset/exactprob.hpp"

namespace zeroset::acceptance {

/// quick shrinks Monte Carlo replicate counts and seed sweeps; full runs the stated sizes.
enum class Level { quick, full };

std::optional<Level> parse_level(std::string_view name) noexcept;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;  // 0: no runtime bound
  std::vector<std::string> details;
};

struct Options {
  Level level = Level::full;
  std::vector<int> only;  // empty runs all 13
  /// Table checked by the return-probability criteria; nullptr uses the shared default.
  const exactprob::ReturnProbTable* table = nullptr;
  unsigned workers = 1;
};

inline constexpr int kCriterionCount = 13;

std::vector<CriterionResult> run(const Options& options);

/// One "[PASS]/[FAIL]" line per criterion, details indented below it.
std::string format_report(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results) noexcept;

}  // namespace zeroset::acceptance
