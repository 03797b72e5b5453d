#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gini/types.hpp"

namespace gini::testing {

struct PropertyResult {
  std::string name;
  int checked = 0;
  int failures = 0;
  std::string first_failure;
};

/// Structural properties of the Gamma_2 and Gamma_inf closed forms, each
/// checked on `count` random instances. A failure is a definitive verdict
/// contradicting the property; Inconclusive verdicts are skipped.
std::vector<PropertyResult> run_set_algebra(int count, std::uint64_t seed);

}  // namespace gini::testing
