#include "ffqaoa/least_squares.hpp"

#include <algorithm>
#include <cmath>

#include "ffqaoa/errors.hpp"

namespace ffqaoa {

LmResult lm_minimize(const LmObjective& objective, const RVec& x0,
                     const LmOptions& options) {
  LmResult result;
  result.x = x0;
  const int dim = static_cast<int>(x0.size());
  if (dim == 0) {
    RVec r;
    objective(result.x, r, nullptr);
    result.f = r.squaredNorm();
    result.evaluations = 1;
    result.converged = true;
    return result;
  }

  RVec r;
  RMat jac;
  objective(result.x, r, &jac);
  ++result.evaluations;
  result.f = r.squaredNorm();

  RMat a = jac.transpose() * jac;
  RVec g = jac.transpose() * r;
  double mu = options.tau * a.diagonal().maxCoeff();
  double nu = 2.0;
  int rejections = 0;

  RVec r_trial;
  for (int it = 0; it < options.max_iterations; ++it) {
    result.iterations = it + 1;
    if (result.f <= options.f_stop || g.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance) {
      result.converged = true;
      result.iterations = it;
      return result;
    }

    RMat damped = a;
    damped.diagonal().array() += mu;
    const RVec d = Eigen::LDLT<RMat>(damped).solve(-g);
    if (!d.allFinite()) {
      mu *= nu;
      nu *= 2.0;
      if (++rejections > options.max_rejections) break;
      continue;
    }
    if (d.norm() <= options.step_tolerance * (result.x.norm() + options.step_tolerance)) {
      result.converged = true;
      return result;
    }

    const RVec x_trial = result.x + d;
    objective(x_trial, r_trial, nullptr);
    ++result.evaluations;
    const double f_trial = r_trial.squaredNorm();

    // Model reduction 0.5 d^T (mu d - g) is positive by construction.
    const double predicted = 0.5 * d.dot(mu * d - g);
    const double rho = (0.5 * (result.f - f_trial)) / std::max(predicted, 1e-300);
    if (rho > 0.0 && f_trial < result.f) {
      result.x = x_trial;
      result.f = f_trial;
      objective(result.x, r, &jac);
      ++result.evaluations;
      a.noalias() = jac.transpose() * jac;
      g.noalias() = jac.transpose() * r;
      mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3.0));
      nu = 2.0;
      rejections = 0;
    } else {
      mu *= nu;
      nu *= 2.0;
      if (++rejections > options.max_rejections) break;
    }
  }
  return result;
}

}
