#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace metalie {

struct CriterionResult {
  int index;
  std::string name;
  bool passed;
  std::string detail;
};

/// Runs the exact verification suite (algebra laws, the derivative/lifting
/// equivalences, basis round trips, the chain rule, inversion, and every
/// decomposition family) at desk scale.  Deterministic for a fixed seed.
std::vector<CriterionResult> run_acceptance_criteria(std::uint64_t seed);

/// True when every criterion passed.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace metalie
