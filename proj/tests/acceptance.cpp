// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line each. The same checks back `lognormlab selftest`.

#include <cstdlib>
#include <iostream>

#include "lognormlab/selftest.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  bool ok = lognormlab::print_acceptance(std::cout, seed);
  return ok ? 0 : 1;
}
