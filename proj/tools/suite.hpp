#pragma once

#include "equivar/boxnorm.hpp"
#include "equivar/hr.hpp"
#include "equivar/mackey.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace equivar::suite {

struct Options {
  std::uint64_t seed = 1;
};
Options& options();

/// A named check; `run` returns pass/fail and leaves a short summary or counterexample in detail.
struct Check {
  std::string name;
  std::function<bool(std::string& detail)> run;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Runs checks on up to `jobs` threads; results keep the input order. Exceptions count as failures.
std::vector<CheckResult> run_checks(const std::vector<Check>& checks, int jobs);

/// The nine acceptance criteria, in order.
std::vector<Check> acceptance_criteria();
/// Regressions for every published value the library reproduces.
std::vector<Check> paper_suite();

// Shared fixtures.
DiscreteEsigmaRing constant_z_ring();
/// A^{D_2m} modulo the Green ideal generated by 2 - [D_2m/mu_m].
Mackey burnside_quotient(const GroupPtr& g);
/// The same quotient over the subgroup D_2k (k | m) of the ambient dihedral group.
Mackey burnside_quotient_at(const GroupPtr& g, int k);
int reflection_d2(const GroupPtr& g);
int num_divisors(int m);

}  // namespace equivar::suite
