#pragma once

#include <string>
#include <vector>

namespace conelab::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool asserted = true;  // exploratory criteria run and record but never fail
  double seconds = 0.0;
  std::string detail;
};

// Runs the full battery. `quick` trims the sample counts where the criterion
// text allows it (exploratory sweeps only); asserted tolerances never change.
std::vector<CriterionResult> run_all(bool quick = false, std::uint64_t seed = 20240001);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace conelab::acceptance
