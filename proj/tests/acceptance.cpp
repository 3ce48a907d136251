// Runs the acceptance criteria (or, with --invariants, the structural
// invariants) and prints one PASS/FAIL line per check.

#include <cstring>
#include <iostream>

#include "vdw/validation.hpp"

int main(int argc, char **argv) {
  namespace v = vdw::validation;
  const bool invariants = argc > 1 && std::strcmp(argv[1], "--invariants") == 0;
  const auto wanted = invariants ? v::Category::invariant : v::Category::acceptance;
  std::vector<v::Result> results;
  for (const auto &c : v::registry()) {
    if (c.category != wanted) continue;
    const auto r = v::run({c.id}).front();
    std::cout << v::format(r) << std::endl;
    results.push_back(r);
  }
  std::size_t passed = 0;
  for (const auto &r : results) passed += r.passed;
  std::cout << passed << "/" << results.size() << (invariants ? " invariants" : " acceptance criteria") << " passed\n";
  return v::all_passed(results) ? 0 : 1;
}
