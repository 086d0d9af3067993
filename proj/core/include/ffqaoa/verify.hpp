#ifndef FFQAOA_VERIFY_HPP
#define FFQAOA_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ffqaoa {

struct CheckResult {
  std::string name;
  int n_cases = 0;
  double worst = 0.0;  // worst deviation across cases
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

// Cross-implementation equivalence suite: Nambu pipeline vs dense 2^N
// oracle, analytic gradient vs finite differences, gauge invariance,
// reflection-symmetry algebra, Thouless structure, rank certificates,
// momentum-block equivalence. Seeded and deterministic; runs in about a
// minute. The acceptance gate reuses these protocols with its own pinned
// tolerances.
std::vector<CheckResult> run_verification(std::uint64_t seed);

}

#endif
