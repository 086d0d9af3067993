#ifndef FFQAOA_LEAST_SQUARES_HPP
#define FFQAOA_LEAST_SQUARES_HPP

#include <functional>

#include "ffqaoa/nambu.hpp"

namespace ffqaoa {

// Residual callback: fill r(x); when jac is non-null, also fill the m x n
// Jacobian dr/dx. r keeps whatever size the callback gives it.
using LmObjective = std::function<void(const RVec& x, RVec& r, RMat* jac)>;

struct LmOptions {
  int max_iterations = 200;
  double f_stop = 0.0;                // stop once ||r||^2 <= f_stop
  double gradient_tolerance = 1e-12;  // infinity norm of J^T r
  double step_tolerance = 1e-14;      // ||d|| relative to ||x||
  double tau = 1e-3;                  // initial damping, scaled by max diag
  int max_rejections = 25;            // consecutive rejected steps before bailing
};

struct LmResult {
  RVec x;
  double f = 0.0;  // ||r||^2 at x
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;  // stopped by a tolerance, not a cap
};

// Levenberg-Marquardt with the Nielsen damping update. Accepted steps are
// strictly decreasing in ||r||^2, so the method is a descent on the
// squared-residual objective from any start. Quadratic near zero-residual
// solutions, which is the point: quasi-Newton methods crawl there.
LmResult lm_minimize(const LmObjective& objective, const RVec& x0,
                     const LmOptions& options = {});

}

#endif
