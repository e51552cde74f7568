#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pdp::verify {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

enum class Suite { quick, full };

/// Criteria run by each suite. quick = {1, 3, 4, 5, 6, 10, 14}; full = 1..14.
std::vector<int> suite_criteria(Suite suite);

/// Runs one numbered criterion (1..14). Monte Carlo criteria draw from
/// Rng(seed, id), so results depend only on (id, seed).
CriterionResult run_criterion(int id, std::uint64_t seed);

/// Runs a suite in order, calling `progress` after each criterion.
std::vector<CriterionResult> run_suite(Suite suite, std::uint64_t seed,
                                       const std::function<void(const CriterionResult&)>& progress = {});

inline constexpr double kQuickBudgetSeconds = 60.0;
inline constexpr double kFullBudgetSeconds = 900.0;

/// One-line "PASS|FAIL <id> <name>: <detail> (<seconds>s)".
std::string format_result(const CriterionResult& result);

}  // namespace pdp::verify
