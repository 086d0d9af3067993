#ifndef FFQAOA_LBFGS_HPP
#define FFQAOA_LBFGS_HPP

#include <functional>

#include "ffqaoa/nambu.hpp"

namespace ffqaoa {

// Objective callback: value at x, gradient written into the second argument.
// Value and gradient always come from one fused evaluation.
using Objective = std::function<double(const RVec&, RVec&)>;

struct LbfgsOptions {
  int history = 10;
  int max_iterations = 10000;
  double gradient_tolerance = 1e-10;  // infinity norm
  double c1 = 1e-4;                   // sufficient decrease
  double c2 = 0.9;                    // strong Wolfe curvature
  int max_line_search = 40;
};

struct LbfgsResult {
  RVec x;
  double value = 0.0;
  double gradient_norm = 0.0;  // infinity norm at the final point
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;  // gradient tolerance reached
};

// Limited-memory BFGS with a strong-Wolfe cubic-interpolation line search.
// A stalled line search (no further decrease representable) terminates with
// converged = false and the best point reached.
LbfgsResult lbfgs_minimize(const Objective& objective, const RVec& x0,
                           const LbfgsOptions& options = {});

}

#endif
