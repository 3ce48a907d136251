#pragma once

// Registry of self-checks: the acceptance criteria plus a handful of
// structural invariants. Shared by the acceptance test binary and the
// `validate` subcommand of the CLI.

#include <functional>
#include <string>
#include <vector>

namespace vdw::validation {

struct Settings {
  // Tolerance handed to the full-quadrature potentials; closed-form and
  // special-function checks use their own fixed targets.
  double rel_tol = 1e-6;
};

struct Outcome {
  bool passed = false;
  std::string detail;
};

enum class Category { acceptance, invariant };

struct Check {
  std::string id; // "AC1".."AC12", "INV-..."
  std::string title;
  Category category;
  std::function<Outcome(const Settings &)> run;
};

struct Result {
  std::string id;
  std::string title;
  Category category;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

const std::vector<Check> &registry();

// Run the checks whose id is listed (all when `ids` is empty). Exceptions
// thrown by a check are reported as failures, never propagated.
std::vector<Result> run(const std::vector<std::string> &ids = {}, const Settings &settings = {});

// "[PASS] AC4  perfect plate, retarded ... (1.2 s) detail"
std::string format(const Result &r);

bool all_passed(const std::vector<Result> &results);

} // namespace vdw::validation
