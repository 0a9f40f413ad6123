#include "conelab/acceptance.hpp"

namespace conelab::acceptance {

std::vector<CriterionResult> run_all(bool, std::uint64_t) { return {}; }

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (r.asserted && !r.passed) return false;
  return true;
}

}  // namespace conelab::acceptance
