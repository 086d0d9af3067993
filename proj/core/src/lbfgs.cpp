#include "ffqaoa/lbfgs.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "ffqaoa/errors.hpp"

namespace ffqaoa {

namespace {

double inf_norm(const RVec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Minimizer of the cubic through (a, fa, ga) and (b, fb, gb); NaN on
// breakdown, caller safeguards.
double cubic_min(double a, double fa, double ga, double b, double fb, double gb) {
  const double d1 = ga + gb - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - ga * gb;
  if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double d2 = std::copysign(std::sqrt(disc), b - a);
  return b - (b - a) * (gb + d2 - d1) / (gb - ga + 2.0 * d2);
}

struct LinePoint {
  double alpha = 0.0;
  double f = 0.0;
  double dg = 0.0;  // directional derivative
};

}

LbfgsResult lbfgs_minimize(const Objective& objective, const RVec& x0,
                           const LbfgsOptions& opt) {
  const int n = static_cast<int>(x0.size());
  LbfgsResult res;
  res.x = x0;

  RVec g(n);
  int evals = 0;
  auto eval = [&](const RVec& point, RVec& grad) {
    ++evals;
    const double v = objective(point, grad);
    if (!std::isfinite(v)) throw numerical_error("objective returned a non-finite value");
    return v;
  };

  double f = eval(res.x, g);
  if (n == 0) {
    res.value = f;
    res.converged = true;
    res.evaluations = evals;
    return res;
  }

  std::vector<RVec> s_hist, y_hist;
  std::vector<double> rho_hist;
  RVec d(n), xnew(n), gnew(n), q(n);
  std::vector<double> alpha_tmp;

  for (int iter = 1; iter <= opt.max_iterations; ++iter) {
    res.iterations = iter - 1;
    if (inf_norm(g) <= opt.gradient_tolerance) {
      res.converged = true;
      break;
    }

    // Two-loop recursion.
    q = g;
    const int m = static_cast<int>(s_hist.size());
    alpha_tmp.assign(m, 0.0);
    for (int i = m - 1; i >= 0; --i) {
      alpha_tmp[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alpha_tmp[i] * y_hist[i];
    }
    if (m > 0) {
      const double gamma = s_hist[m - 1].dot(y_hist[m - 1]) / y_hist[m - 1].squaredNorm();
      q *= gamma;
    }
    for (int i = 0; i < m; ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(q);
      q += (alpha_tmp[i] - beta) * s_hist[i];
    }
    d = -q;

    double dphi0 = g.dot(d);
    if (!(dphi0 < 0.0)) {  // curvature memory went bad; restart from steepest descent
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      d = -g;
      dphi0 = g.dot(d);
    }

    // Strong Wolfe line search (bracket + zoom, cubic interpolation).
    const double phi0 = f;
    LinePoint lo{0.0, phi0, dphi0};
    LinePoint cur;
    cur.alpha = (iter == 1) ? std::min(1.0, 1.0 / std::max(inf_norm(g), 1e-12)) : 1.0;

    bool accepted = false;
    bool bracketed = false;
    LinePoint hi;
    LinePoint prev{0.0, phi0, dphi0};
    for (int ls = 0; ls < opt.max_line_search; ++ls) {
      xnew = res.x + cur.alpha * d;
      cur.f = eval(xnew, gnew);
      cur.dg = gnew.dot(d);
      if (cur.f > phi0 + opt.c1 * cur.alpha * dphi0 || (ls > 0 && cur.f >= prev.f)) {
        lo = prev;
        hi = cur;
        bracketed = true;
        break;
      }
      if (std::abs(cur.dg) <= -opt.c2 * dphi0) {
        accepted = true;
        break;
      }
      if (cur.dg >= 0.0) {
        lo = cur;
        hi = prev;
        bracketed = true;
        break;
      }
      prev = cur;
      cur.alpha *= 2.0;
    }

    if (bracketed) {
      for (int z = 0; z < opt.max_line_search; ++z) {
        double a = cubic_min(lo.alpha, lo.f, lo.dg, hi.alpha, hi.f, hi.dg);
        const double left = std::min(lo.alpha, hi.alpha);
        const double right = std::max(lo.alpha, hi.alpha);
        const double margin = 0.1 * (right - left);
        if (!std::isfinite(a) || a < left + margin || a > right - margin) {
          a = 0.5 * (left + right);
        }
        cur.alpha = a;
        xnew = res.x + cur.alpha * d;
        cur.f = eval(xnew, gnew);
        cur.dg = gnew.dot(d);
        if (cur.f > phi0 + opt.c1 * cur.alpha * dphi0 || cur.f >= lo.f) {
          hi = cur;
        } else {
          if (std::abs(cur.dg) <= -opt.c2 * dphi0) {
            accepted = true;
            break;
          }
          if (cur.dg * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
          lo = cur;
        }
        if (right - left < 1e-18 * std::max(1.0, right)) break;
      }
      if (!accepted && lo.alpha > 0.0 && lo.f < phi0) {
        // Wolfe unattainable at working precision; take the decrease.
        cur = lo;
        xnew = res.x + cur.alpha * d;
        cur.f = eval(xnew, gnew);
        accepted = true;
      }
    }

    if (!accepted) {
      break;  // no representable decrease along d: stall
    }

    RVec s = xnew - res.x;
    RVec y = gnew - g;
    const double sy = s.dot(y);
    if (sy > 1e-10 * s.norm() * y.norm()) {
      if (static_cast<int>(s_hist.size()) == opt.history) {
        s_hist.erase(s_hist.begin());
        y_hist.erase(y_hist.begin());
        rho_hist.erase(rho_hist.begin());
      }
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
    }
    res.x = xnew;
    f = cur.f;
    g = gnew;
    res.iterations = iter;
  }

  res.value = f;
  res.gradient_norm = inf_norm(g);
  res.evaluations = evals;
  return res;
}

}
