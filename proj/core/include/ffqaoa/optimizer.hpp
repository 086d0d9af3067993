#ifndef FFQAOA_OPTIMIZER_HPP
#define FFQAOA_OPTIMIZER_HPP

#include <cstdint>
#include <vector>

#include "ffqaoa/evolution.hpp"
#include "ffqaoa/lbfgs.hpp"

namespace ffqaoa {

struct OptimizerSettings {
  int n_samples = 100;                // multistart restarts per depth
  int max_iterations = 10000;         // L-BFGS cap per restart
  double gradient_tolerance = 1e-10;  // infinity norm
  double numerical_zero = 1e-12;      // success threshold on residual/site
  int history = 10;
  double angle_lo = 0.0;  // init window for every angle
  double angle_hi = 6.283185307179586;
  // Least-squares endgame: after the quasi-Newton phase, polish with
  // Levenberg-Marquardt on the quasiparticle residual matrix. Near a
  // reachable target the squared-residual landscape degenerates and L-BFGS
  // crawls polynomially; the Gauss-Newton model restores quadratic
  // convergence. The polished point is kept only when it improves the true
  // energy, so the record is monotone either way.
  bool polish = true;
  int polish_max_iterations = 200;
};

// One completed restart.
struct RunRecord {
  std::uint64_t seed = 0;  // the derived restart seed
  int depth = 0;
  double s_target = 1.0;
  RVec initial_angles;  // flat (z_1, x_1, ...)
  RVec final_angles;
  double final_energy = 0.0;
  double residual_energy_per_site = 0.0;  // (E - E_gs^sector) / N
  int iterations = 0;
  bool converged = false;
};

struct ResidualDistribution {
  std::vector<RunRecord> records;  // index k ran with derive_seed(master, k)
  double target_ground_energy = 0.0;
  int n_success = 0;  // residual/site <= numerical_zero
  double min_residual_per_site = 0.0;
  int best_index = -1;
};

struct DepthSummary {
  int depth = 0;
  int n_success = 0;
  double min_residual_per_site = 0.0;
};

struct CriticalDepthResult {
  int critical_depth = -1;  // first depth with a success; -1 if none in window
  double target_ground_energy = 0.0;
  double theta0_energy = 0.0;  // E at theta = 0, i.e. -(1-s_target) h N
  std::vector<DepthSummary> scanned;
};

// One L-BFGS run from a seeded uniform start in [angle_lo, angle_hi)^{2P}.
RunRecord optimize_once(const EvolutionCache& cache, int depth, std::uint64_t seed,
                        const OptimizerSettings& settings = {});
RunRecord optimize_once(const CouplingConfig& config, int depth, double s_target,
                        std::uint64_t seed, const OptimizerSettings& settings = {});

// n_samples restarts with seeds derive_seed(master_seed, k); results land in
// slot k no matter how the work is spread over threads.
ResidualDistribution residual_distribution(const EvolutionCache& cache, int depth,
                                           std::uint64_t master_seed,
                                           const OptimizerSettings& settings = {},
                                           int n_threads = 1);

// Ascending scan over depths [p_lo, p_hi]; stops at the first depth where a
// restart hits the numerical-zero residual. Each depth reuses master_seed
// (restart seeds are depth-independent by design: the angle dimension
// differs anyway). Within a depth the restart loop exits at the first
// success, so for the hit depth n_success is a lower bound and
// min_residual covers only the restarts that ran; failing depths always
// run the full sample.
CriticalDepthResult critical_depth_search(const CouplingConfig& config, double s_target,
                                          int p_lo, int p_hi, std::uint64_t master_seed,
                                          const OptimizerSettings& settings = {},
                                          int n_threads = 1);

}

#endif
