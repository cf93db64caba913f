// Acceptance run: one line per criterion, nonzero exit if any fails.

#include "suite.hpp"

#include <iostream>

int main() {
  auto criteria = equivar::suite::acceptance_criteria();
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto r = equivar::suite::run_checks({criteria[i]}, 1).front();
    failed += !r.pass;
    std::cout << "criterion " << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.detail << ")" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
