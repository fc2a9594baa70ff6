#pragma once

// Pipelines re-deriving the worked examples and diffing them against the
// reference data in golden.hpp.

#include <optional>
#include <string>
#include <vector>

#include "galefan/exact_linalg.hpp"

namespace galefan {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Reproduction {
  std::string target;
  std::vector<Check> checks;
  std::vector<std::string> summary;
  bool passed() const;
};

Reproduction reproduce_ex1();
Reproduction reproduce_ex2();
/// `q` replaces the reference weight matrix as pipeline input when given.
Reproduction reproduce_cex4(const std::optional<IntMatrix>& q = std::nullopt);
Reproduction reproduce_qs(long s);

}  // namespace galefan
