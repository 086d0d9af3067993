#ifndef FFQAOA_RNG_HPP
#define FFQAOA_RNG_HPP

#include <cstdint>
#include <random>

namespace ffqaoa {

// splitmix64 finalizer. Used both as a bit mixer for seed derivation and as
// the seeding function for the mt19937_64 streams below.
std::uint64_t splitmix64(std::uint64_t x);

// Child-seed derivation: stream k of a master seed is
//   splitmix64(master + GOLDEN * (k + 1)),  GOLDEN = 0x9E3779B97F4A7C15.
// k counts from 0 (restart index, disorder-realization index, ...). The
// scheme is documented in the README; changing it invalidates recorded runs.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// Deterministic uniform generator. std::mt19937_64 has a portable,
// standard-pinned sequence; the [0,1) mapping is done manually because
// std::uniform_real_distribution is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // 53-bit mantissa uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}

#endif
