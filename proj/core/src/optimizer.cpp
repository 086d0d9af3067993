#include "ffqaoa/optimizer.hpp"

#include <atomic>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <thread>

#include "ffqaoa/errors.hpp"
#include "ffqaoa/least_squares.hpp"
#include "ffqaoa/rng.hpp"

namespace ffqaoa {

RunRecord optimize_once(const EvolutionCache& cache, int depth, std::uint64_t seed,
                        const OptimizerSettings& settings) {
  if (depth < 0) throw config_error("depth must be >= 0");
  const int n = cache.config.n_sites;

  Rng rng(seed);
  RVec x0(2 * depth);
  for (int i = 0; i < x0.size(); ++i) {
    x0(i) = rng.uniform(settings.angle_lo, settings.angle_hi);
  }

  LbfgsOptions opt;
  opt.history = settings.history;
  opt.max_iterations = settings.max_iterations;
  opt.gradient_tolerance = settings.gradient_tolerance;

  const auto objective = [&cache](const RVec& x, RVec& grad) {
    return qaoa_energy_gradient(cache, QaoaParams::from_flat(x), grad);
  };
  const LbfgsResult lr = lbfgs_minimize(objective, x0, opt);

  RunRecord rec;
  rec.seed = seed;
  rec.depth = depth;
  rec.s_target = cache.s_target;
  rec.initial_angles = x0;
  rec.final_angles = lr.x;
  rec.final_energy = lr.value;
  rec.iterations = lr.iterations;
  rec.converged = lr.converged;

  if (settings.polish && depth > 0) {
    const ResidualMap map = make_residual_map(cache);
    const auto residual = [&cache, &map](const RVec& x, RVec& r, RMat* jac) {
      const QaoaParams p = QaoaParams::from_flat(x);
      CMat rm;
      if (jac != nullptr) {
        residual_jacobian(cache, map, p, rm, *jac);
      } else {
        residual_matrix(cache, map, p, rm);
      }
      const int sz = static_cast<int>(rm.size());
      r.resize(2 * sz);
      Eigen::Map<const RVec> flat(reinterpret_cast<const double*>(rm.data()), 2 * sz);
      for (int i = 0; i < sz; ++i) {
        r(i) = flat(2 * i);
        r(sz + i) = flat(2 * i + 1);
      }
    };
    LmOptions lopt;
    lopt.max_iterations = settings.polish_max_iterations;
    lopt.f_stop = 0.01 * settings.numerical_zero * n;
    const LmResult pr = lm_minimize(residual, lr.x, lopt);
    const double polished = qaoa_energy(cache, QaoaParams::from_flat(pr.x));
    rec.iterations += pr.iterations;
    if (polished < rec.final_energy) {
      rec.final_angles = pr.x;
      rec.final_energy = polished;
      rec.converged = lr.converged || pr.converged;
    }
  }

  rec.residual_energy_per_site = (rec.final_energy - cache.target_ground_energy) / n;
  return rec;
}

RunRecord optimize_once(const CouplingConfig& config, int depth, double s_target,
                        std::uint64_t seed, const OptimizerSettings& settings) {
  return optimize_once(make_cache(config, s_target), depth, seed, settings);
}

ResidualDistribution residual_distribution(const EvolutionCache& cache, int depth,
                                           std::uint64_t master_seed,
                                           const OptimizerSettings& settings,
                                           int n_threads) {
  if (settings.n_samples < 1) throw config_error("n_samples must be >= 1");
  if (n_threads < 1) n_threads = 1;

  ResidualDistribution dist;
  dist.records.resize(settings.n_samples);
  dist.target_ground_energy = cache.target_ground_energy;

  std::atomic<int> next{0};
  const auto worker = [&]() {
    for (;;) {
      const int k = next.fetch_add(1);
      if (k >= settings.n_samples) return;
      dist.records[k] = optimize_once(cache, depth, derive_seed(master_seed, k), settings);
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  dist.min_residual_per_site = std::numeric_limits<double>::infinity();
  for (int k = 0; k < settings.n_samples; ++k) {
    const double r = dist.records[k].residual_energy_per_site;
    if (r <= settings.numerical_zero) ++dist.n_success;
    if (r < dist.min_residual_per_site) {
      dist.min_residual_per_site = r;
      dist.best_index = k;
    }
  }
  return dist;
}

CriticalDepthResult critical_depth_search(const CouplingConfig& config, double s_target,
                                          int p_lo, int p_hi, std::uint64_t master_seed,
                                          const OptimizerSettings& settings,
                                          int n_threads) {
  if (p_lo < 0 || p_hi < p_lo) {
    throw config_error(fmt::format("bad depth window [{}, {}]", p_lo, p_hi));
  }
  const EvolutionCache cache = make_cache(config, s_target);

  CriticalDepthResult result;
  result.target_ground_energy = cache.target_ground_energy;
  result.theta0_energy = -(1.0 - s_target) * config.field_h * config.n_sites;

  for (int p = p_lo; p <= p_hi; ++p) {
    // Existence is all the scan needs, so a depth stops at its first
    // success; failing depths still exhaust every restart. Under threads
    // the post-success counts depend on timing, the verdict does not.
    std::atomic<int> next{0};
    std::atomic<bool> found{false};
    std::atomic<int> n_success{0};
    std::vector<double> residuals(settings.n_samples,
                                  std::numeric_limits<double>::infinity());
    const auto worker = [&]() {
      for (;;) {
        if (found.load()) return;
        const int k = next.fetch_add(1);
        if (k >= settings.n_samples) return;
        const RunRecord rec = optimize_once(cache, p, derive_seed(master_seed, k), settings);
        residuals[k] = rec.residual_energy_per_site;
        if (rec.residual_energy_per_site <= settings.numerical_zero) {
          n_success.fetch_add(1);
          found.store(true);
        }
      }
    };
    if (n_threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(n_threads);
      for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    double best = std::numeric_limits<double>::infinity();
    for (const double r : residuals) best = std::min(best, r);
    result.scanned.push_back(DepthSummary{p, n_success.load(), best});
    if (n_success.load() > 0) {
      result.critical_depth = p;
      break;
    }
  }
  return result;
}

}
