#pragma once

// The acceptance suite: thirteen criteria ordered from closed forms to
// sampled experiments.

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace bergsuita {

struct AcceptanceOptions {
  bool quick = false;  // skip sampled criteria
  std::uint64_t seed = 0;
  std::size_t samples = 1'000'000;
};

struct CriterionResult {
  std::string id;
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs every criterion; `on_result` sees each result as soon as it is known.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

/// One line per criterion: `PASS|FAIL|SKIP  id  name  detail`.
void print_result(std::ostream& out, const CriterionResult& r);

/// True when no criterion failed (skips count as neither).
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace bergsuita
