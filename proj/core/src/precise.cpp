#include "ffqaoa/precise.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ffqaoa/errors.hpp"

namespace ffqaoa {

namespace {

namespace bmp = boost::multiprecision;
using f30 = bmp::number<bmp::cpp_bin_float<30>, bmp::et_off>;
using f60 = bmp::number<bmp::cpp_bin_float<60>, bmp::et_off>;

template <typename Real>
Real rel_tol();
template <>
f30 rel_tol<f30>() { return f30("1e-25"); }
template <>
f60 rel_tol<f60>() { return f60("1e-55"); }

// 30 digits resolve splittings down to ~1e-26 of the eigenvalue scale; the
// measured closing rates stay below 0.45 decades/site, so the low tier is
// safe to N ~ 60. Switching at 45 leaves margin for disordered slopes.
bool needs_high_tier(int n) { return n > 45; }

// M(s) = A - B: diag d_j = (1-s)h, subdiag e_j = -s J_j, corner (1,N).
template <typename Real>
struct Factor {
  std::vector<Real> d, e;
  Real corner = 0;
};

template <typename Real>
Factor<Real> build_factor(const CouplingConfig& config, const Real& s, FermionParity parity) {
  const int n = config.n_sites;
  Factor<Real> m;
  m.d.assign(n, (Real(1) - s) * Real(config.field_h));
  m.e.resize(n - 1);
  for (int j = 0; j + 1 < n; ++j) m.e[j] = -s * Real(config.couplings[j]);
  m.corner = Real(parity_sign(parity)) * s * Real(config.couplings[n - 1]);
  return m;
}

// det M = prod d_j + (-1)^{1+N} corner prod e_j (expansion along row 1);
// the Bogoliubov vacuum is parity-even exactly when det M > 0.
template <typename Real>
FermionParity vacuum_parity_of(const Factor<Real>& m) {
  const int n = static_cast<int>(m.d.size());
  Real pd = 1, pe = m.corner;
  for (const Real& d : m.d) pd *= d;
  for (const Real& e : m.e) pe *= e;
  const Real det = (n % 2 == 0) ? pd - pe : pd + pe;
  return det >= 0 ? FermionParity::Even : FermionParity::Odd;
}

// T = M^T M: cyclic tridiagonal. For n == 2 the corner merges with the
// off-diagonal entry and w stays zero.
template <typename Real>
struct Tridiag {
  std::vector<Real> t, u;
  Real w = 0;
};

template <typename Real>
Tridiag<Real> gram(const Factor<Real>& m) {
  const int n = static_cast<int>(m.d.size());
  Tridiag<Real> T;
  T.t.resize(n);
  T.u.resize(n - 1);
  for (int j = 0; j + 1 < n; ++j) T.t[j] = m.d[j] * m.d[j] + m.e[j] * m.e[j];
  T.t[n - 1] = m.d[n - 1] * m.d[n - 1] + m.corner * m.corner;
  for (int j = 0; j + 1 < n; ++j) T.u[j] = m.e[j] * m.d[j + 1];
  if (n == 2) {
    T.u[0] += m.corner * m.d[0];
    T.w = 0;
  } else {
    T.w = m.corner * m.d[0];
  }
  return T;
}

// Eigenvalues of T below lambda, by the inertia of the LDL^T pivots. The
// corner couples rows 1 and N; its fill-in stays confined to the last column,
// so elimination is O(N) with one running fill value.
template <typename Real>
int sturm_count(const Tridiag<Real>& T, const Real& lambda) {
  static const Real kTiny("1e-200");
  const int n = static_cast<int>(T.t.size());
  int count = 0;
  Real p = T.t[0] - lambda;
  if (n == 2) {
    if (p == 0) p = -kTiny;
    if (p < 0) ++count;
    const Real g = T.t[1] - lambda - T.u[0] * T.u[0] / p;
    if (g < 0) ++count;
    return count;
  }
  Real phi = T.w;
  Real g = T.t[n - 1] - lambda;
  for (int j = 0; j <= n - 2; ++j) {
    if (p == 0) p = -kTiny;
    if (p < 0) ++count;
    g -= phi * phi / p;
    if (j <= n - 3) {
      const Real orig = (j + 1 == n - 2) ? T.u[n - 2] : Real(0);
      const Real next_phi = orig - T.u[j] * phi / p;
      p = T.t[j + 1] - lambda - T.u[j] * T.u[j] / p;
      phi = next_phi;
    }
  }
  if (g < 0) ++count;
  return count;
}

// Two smallest eigenvalues of the positive semidefinite T, each bisected to
// rel_tol of the Gershgorin scale. The first sweep records the tightest
// bracket it sees for the second eigenvalue.
template <typename Real>
std::pair<Real, Real> two_smallest(const Tridiag<Real>& T) {
  const int n = static_cast<int>(T.t.size());
  Real hi = 0;
  for (int j = 0; j < n; ++j) {
    Real row = T.t[j];
    if (j > 0) row += abs(T.u[j - 1]);
    if (j + 1 < n) row += abs(T.u[j]);
    if (j == 0 || j == n - 1) row += abs(T.w);
    hi = std::max(hi, row, [](const Real& a, const Real& b) { return a < b; });
  }
  hi += 1;
  const Real tol = rel_tol<Real>() * hi;

  Real a = -1, b = hi;
  Real lo2 = -1, hi2 = hi;
  while (b - a > tol) {
    const Real m = (a + b) / 2;
    const int c = sturm_count(T, m);
    if (c >= 1) {
      b = m;
      if (c >= 2 && m < hi2) hi2 = m;
    } else {
      a = m;
    }
    if (c < 2 && m > lo2) lo2 = m;
  }
  Real lambda1 = (a + b) / 2;
  if (lambda1 < 0) lambda1 = 0;

  if (lo2 < lambda1) lo2 = lambda1;
  while (hi2 - lo2 > tol) {
    const Real m = (lo2 + hi2) / 2;
    if (sturm_count(T, m) >= 2) {
      hi2 = m;
    } else {
      lo2 = m;
    }
  }
  Real lambda2 = (lo2 + hi2) / 2;
  if (lambda2 < lambda1) lambda2 = lambda1;
  return {lambda1, lambda2};
}

template <typename Real>
Real sector_gap_impl(const CouplingConfig& config, const Real& s, FermionParity parity,
                     Real* eps1_out = nullptr, Real* eps2_out = nullptr) {
  const Factor<Real> m = build_factor(config, s, parity);
  const auto [l1, l2] = two_smallest(gram(m));
  const Real eps1 = sqrt(l1), eps2 = sqrt(l2);
  if (eps1_out) *eps1_out = eps1;
  if (eps2_out) *eps2_out = eps2;
  const bool match = vacuum_parity_of(m) == parity;
  return 2 * (match ? eps1 + eps2 : eps2 - eps1);
}

// Brent minimization of f on [a, b]. f is the squared sector gap: smooth
// through the avoided crossing, locally parabolic, so the parabolic steps
// collapse the bracket superlinearly.
template <typename Real, typename F>
void brent_minimize(F f, Real a, Real b, Real& xmin, Real& fmin) {
  const Real tol_rel = rel_tol<Real>();
  const Real tol_abs = tol_rel * 1000;
  static const Real cgold = (3 - sqrt(Real(5))) / 2;
  Real x, w, v, fx, fw, fv;
  x = w = v = a + cgold * (b - a);
  fx = fw = fv = f(x);
  Real d = 0, e = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const Real xm = (a + b) / 2;
    const Real tol1 = tol_rel * abs(x) + tol_abs;
    const Real tol2 = 2 * tol1;
    if (abs(x - xm) <= tol2 - (b - a) / 2) break;
    bool golden = true;
    if (abs(e) > tol1) {
      const Real r = (x - w) * (fx - fv);
      Real q = (x - v) * (fx - fw);
      Real p = (x - v) * q - (x - w) * r;
      q = 2 * (q - r);
      if (q > 0) p = -p;
      q = abs(q);
      const Real e_old = e;
      e = d;
      if (abs(p) < abs(q * e_old / 2) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const Real u = x + d;
        if (u - a < tol2 || b - u < tol2) d = xm > x ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x >= xm ? a : b) - x;
      d = cgold * e;
    }
    const Real u = abs(d) >= tol1 ? x + d : x + (d > 0 ? tol1 : -tol1);
    const Real fu = f(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  xmin = x;
  fmin = fx;
}

template <typename Real>
BottleneckPoint locate_impl(const CouplingConfig& config, FermionParity parity, double s_lo,
                            double s_hi) {
  const Real a = Real(s_lo), b = Real(s_hi);
  auto objective = [&](const Real& s) {
    const Real gap = sector_gap_impl(config, s, parity);
    return gap * gap;
  };
  Real xmin, fmin;
  brent_minimize<Real>(objective, a, b, xmin, fmin);
  // the bracket edges are not Brent interior points; keep them in the running
  for (const Real& edge : {a, b}) {
    const Real fe = objective(edge);
    if (fe < fmin) {
      fmin = fe;
      xmin = edge;
    }
  }
  if (fmin < 0) fmin = 0;
  BottleneckPoint point;
  point.s = static_cast<double>(xmin);
  point.gap = static_cast<double>(Real(sqrt(fmin)));
  return point;
}

}

std::pair<double, double> precise_epsilon_pair(const CouplingConfig& config, double s,
                                               FermionParity parity) {
  config.validate();
  if (!(s >= 0.0 && s <= 1.0)) throw config_error("s outside [0, 1]");
  auto run = [&](auto tag) {
    using Real = decltype(tag);
    Real eps1, eps2;
    sector_gap_impl<Real>(config, Real(s), parity, &eps1, &eps2);
    return std::pair<double, double>{static_cast<double>(eps1), static_cast<double>(eps2)};
  };
  return needs_high_tier(config.n_sites) ? run(f60{}) : run(f30{});
}

double precise_sector_gap(const CouplingConfig& config, double s, FermionParity parity) {
  config.validate();
  if (!(s >= 0.0 && s <= 1.0)) throw config_error("s outside [0, 1]");
  if (needs_high_tier(config.n_sites)) {
    return static_cast<double>(sector_gap_impl<f60>(config, f60(s), parity));
  }
  return static_cast<double>(sector_gap_impl<f30>(config, f30(s), parity));
}

BottleneckPoint locate_bottleneck(const CouplingConfig& config, FermionParity parity, double s_lo,
                                  double s_hi) {
  config.validate();
  s_lo = std::clamp(s_lo, 0.0, 1.0);
  s_hi = std::clamp(s_hi, 0.0, 1.0);
  if (s_hi < s_lo) std::swap(s_lo, s_hi);
  if (s_hi == s_lo) {
    return {s_lo, precise_sector_gap(config, s_lo, parity)};
  }
  return needs_high_tier(config.n_sites) ? locate_impl<f60>(config, parity, s_lo, s_hi)
                                         : locate_impl<f30>(config, parity, s_lo, s_hi);
}

}
