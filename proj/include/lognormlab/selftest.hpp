#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lognormlab {

struct CriterionResult {
  int index = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// The ten acceptance checks behind `lognormlab selftest`: oracle agreement,
// LP correctness, pairing identities at scale, the regularity suites,
// witness exactness, curve derivatives, contraction, almost-uniqueness.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 0);

// Prints one pass/fail line per criterion; returns true iff all pass.
bool print_acceptance(std::ostream& os, std::uint64_t seed = 0);

}  // namespace lognormlab
