#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace equivar {

/// Desk-scale guardrails. Set once (e.g. from CLI flags) before computing.
struct Budgets {
  int max_group_order = 200;
  std::int64_t max_coinduction = 10'000'000;
  int max_bar_degree = 3;
  int max_witt_index = 27;  // largest p^k
  int jobs = 1;
};

Budgets& budgets();

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error("budget exceeded: " + what) {}
};

}  // namespace equivar
