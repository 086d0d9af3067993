#include "ffqaoa/models.hpp"

#include <cmath>
#include <fmt/format.h>

#include "ffqaoa/errors.hpp"
#include "ffqaoa/rng.hpp"

namespace ffqaoa {

namespace {

void require_odd_ring(int n, const char* who) {
  if (n < 5 || n % 2 == 0) {
    throw config_error(fmt::format("{}: need odd N >= 5, got {}", who, n));
  }
}

}

CouplingConfig frustrated_ring(int n, double jw, double jw_prime, double jf, double h) {
  require_odd_ring(n, "frustrated_ring");
  CouplingConfig config;
  config.n_sites = n;
  config.field_h = h;
  config.couplings.assign(n, 1.0);
  config.couplings[(n + 1) / 2 - 1] = jw;
  config.couplings[(n - 1) / 2 - 1] = jw_prime;
  config.couplings[n - 1] = -jf;
  config.label = fmt::format("frustrated_ring(N={},jw={},jw'={},jf={})", n, jw, jw_prime, jf);
  return config;
}

CouplingConfig disordered_ring(int n, double jw, double jw_prime, double jf,
                               const DisorderSpec& disorder, double h) {
  require_odd_ring(n, "disordered_ring");
  CouplingConfig config = frustrated_ring(n, jw, jw_prime, jf, h);
  const int n_rand = (n - 1) / 4;
  if (disorder.n_rand != 0 && disorder.n_rand != n_rand) {
    throw config_error(fmt::format("disordered_ring: n_rand must be floor((N-1)/4) = {}, got {}",
                                   n_rand, disorder.n_rand));
  }
  // Draw order (reproducibility contract): for j = 1..n_rand ascending, draw
  // J_j, then J_{N-j} (skipped when symmetric).
  Rng rng(disorder.seed);
  for (int j = 1; j <= n_rand; ++j) {
    config.couplings[j - 1] = rng.uniform(disorder.interval_lo, disorder.interval_hi);
    config.couplings[n - j - 1] = disorder.symmetric
                                      ? config.couplings[j - 1]
                                      : rng.uniform(disorder.interval_lo, disorder.interval_hi);
  }
  config.label += fmt::format(" disorder(seed={},{})", disorder.seed,
                              disorder.symmetric ? "symmetric" : "independent");
  return config;
}

CouplingConfig uniform_chain(int n, double h) {
  if (n < 2) {
    throw config_error(fmt::format("uniform_chain: need N >= 2, got {}", n));
  }
  CouplingConfig config;
  config.n_sites = n;
  config.field_h = h;
  config.couplings.assign(n, 1.0);
  config.label = fmt::format("uniform_chain(N={})", n);
  return config;
}

bool is_reflection_symmetric(const CouplingConfig& config) {
  config.validate();
  const int n = config.n_sites;
  for (int j = 1; j < n; ++j) {
    if (std::abs(config.couplings[j - 1] - config.couplings[n - j - 1]) > 1e-14) return false;
  }
  return true;
}

bool is_translation_invariant(const CouplingConfig& config) {
  config.validate();
  for (double j : config.couplings) {
    if (std::abs(j - config.couplings[0]) > 1e-14) return false;
  }
  return true;
}

}
