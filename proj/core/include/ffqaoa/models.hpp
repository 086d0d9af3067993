#ifndef FFQAOA_MODELS_HPP
#define FFQAOA_MODELS_HPP

#include <cstdint>
#include <optional>

#include "ffqaoa/coupling.hpp"

namespace ffqaoa {

// Disorder attachment for the frustrated ring: the bond pairs (J_j, J_{N-j})
// for j = 1..floor((N-1)/4) are redrawn uniformly from [interval_lo,
// interval_hi]; with `symmetric` set the mirror bond copies its partner.
// n_rand is redundant (0 means "use the formula") and is validated if given.
struct DisorderSpec {
  int n_rand = 0;
  double interval_lo = 0.8;
  double interval_hi = 1.0;
  std::uint64_t seed = 0;
  bool symmetric = false;
};

// Frustrated Ising ring (odd N): one antiferromagnetic bond -jf at the
// boundary, weak bonds jw at (N+1)/2 and jw_prime at (N-1)/2, all other
// bonds 1. jf is the positive magnitude; the stored coupling is -jf.
CouplingConfig frustrated_ring(int n, double jw, double jw_prime, double jf,
                               double h = 1.0);

// Frustrated ring with seeded disorder on the bulk bonds.
CouplingConfig disordered_ring(int n, double jw, double jw_prime, double jf,
                               const DisorderSpec& disorder, double h = 1.0);

// Uniform periodic chain, all couplings 1.
CouplingConfig uniform_chain(int n, double h = 1.0);

// True iff J_j = J_{N-j} for j = 1..N-1 within 1e-14 (J_N is the reflection
// axis bond and compares with itself).
bool is_reflection_symmetric(const CouplingConfig& config);

// True iff all couplings are equal within 1e-14.
bool is_translation_invariant(const CouplingConfig& config);

}

#endif
