#include "ffqaoa/evolution.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <vector>

#include "ffqaoa/errors.hpp"
#include "ffqaoa/models.hpp"

namespace ffqaoa {

QaoaParams QaoaParams::from_flat(const RVec& flat) {
  if (flat.size() % 2 != 0) {
    throw config_error("angle vector must interleave (z, x) pairs: even length required");
  }
  QaoaParams p;
  p.depth = static_cast<int>(flat.size() / 2);
  p.thetas_z.resize(p.depth);
  p.thetas_x.resize(p.depth);
  for (int i = 0; i < p.depth; ++i) {
    p.thetas_z(i) = flat(2 * i);
    p.thetas_x(i) = flat(2 * i + 1);
  }
  return p;
}

RVec QaoaParams::flat() const {
  validate();
  RVec f(2 * depth);
  for (int i = 0; i < depth; ++i) {
    f(2 * i) = thetas_z(i);
    f(2 * i + 1) = thetas_x(i);
  }
  return f;
}

void QaoaParams::validate() const {
  if (depth < 0 || thetas_z.size() != depth || thetas_x.size() != depth) {
    throw config_error(fmt::format("angle arrays ({}, {}) do not match depth {}",
                                   thetas_z.size(), thetas_x.size(), depth));
  }
}

FermionParity dynamics_sector(const CouplingConfig& config) { return dynamics_parity(config); }

NambuMatrix initial_transform(const CouplingConfig& config) {
  dynamics_sector(config);  // rejects h = 0
  const int n = config.n_sites;
  if (config.field_h > 0.0) {
    return NambuMatrix{CMat::Identity(2 * n, 2 * n), NambuMatrix::Kind::Unitary};
  }
  return NambuMatrix{block_swap(n), NambuMatrix::Kind::Unitary};
}

namespace {

void require_s(double s, const char* who) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw config_error(fmt::format("{}: s = {} outside [0, 1]", who, s));
  }
}

}

EvolutionCache make_cache(const CouplingConfig& config, double s_target) {
  require_s(s_target, "make_cache");
  EvolutionCache cache;
  cache.config = config;
  cache.s_target = s_target;
  cache.sector = dynamics_sector(config);

  const NambuMatrix hz = build_hz(config, cache.sector);
  Eigen::SelfAdjointEigenSolver<CMat> solver(hz.entries);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("make_cache: H_z eigensolve failed");
  }
  cache.lambda = solver.eigenvalues();
  const CMat& v = solver.eigenvectors();
  const int n = config.n_sites;
  cache.k.noalias() = v.topRows(n).adjoint() * v.topRows(n);
  if (config.field_h > 0.0) {
    cache.phi0 = v.bottomRows(n).adjoint();  // V^dag C
  } else {
    cache.phi0 = v.topRows(n).adjoint();  // V^dag (swap C)
  }
  cache.target_ground_energy = sector_ground_energy(config, s_target, cache.sector);
  return cache;
}

NambuMatrix evolve(const CouplingConfig& config, const QaoaParams& params,
                   FermionParity sector) {
  params.validate();
  const int n = config.n_sites;
  const NambuMatrix hz = build_hz(config, sector);
  Eigen::SelfAdjointEigenSolver<CMat> solver(hz.entries);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("evolve: H_z eigensolve failed");
  }
  const CMat& v = solver.eigenvectors();
  const RVec& lam = solver.eigenvalues();
  const double h = config.field_h;

  CMat u = initial_transform(config).entries;
  CVec zdiag(2 * n);
  for (int p = 0; p < params.depth; ++p) {
    for (int j = 0; j < 2 * n; ++j) {
      zdiag(j) = std::exp(complexd(0.0, -2.0 * params.thetas_z(p) * lam(j)));
    }
    u = v * (zdiag.asDiagonal() * (v.adjoint() * u));
    const complexd xph = std::exp(complexd(0.0, -2.0 * params.thetas_x(p) * h));
    u.topRows(n) *= xph;
    u.bottomRows(n) *= std::conj(xph);
  }
  return NambuMatrix{std::move(u), NambuMatrix::Kind::Unitary};
}

NambuMatrix evolve(const CouplingConfig& config, const QaoaParams& params) {
  return evolve(config, params, dynamics_sector(config));
}

double trace_energy(const NambuMatrix& h, const NambuMatrix& u) {
  const int n = h.n();
  const CMat uc = u.entries.rightCols(n);
  const complexd tr = (uc.adjoint() * h.entries * uc).trace();
  if (std::abs(tr.imag()) > 1e-10 * std::max(1.0, std::abs(tr.real()))) {
    throw numerical_error(fmt::format("trace energy not real: imag = {}", tr.imag()));
  }
  return tr.real();
}

namespace {

// Z step in the H_z eigenbasis: row j scaled by exp(-2i t lambda_j).
void apply_z(const RVec& lambda, double theta, CMat& block) {
  for (int j = 0; j < block.rows(); ++j) {
    block.row(j) *= std::exp(complexd(0.0, -2.0 * theta * lambda(j)));
  }
}

// X step: exp(2i t h) block - 2i sin(2 t h) kblock, with kblock = K block.
void apply_x(double theta, double h, const CMat& kblock, CMat& block) {
  const complexd a = std::exp(complexd(0.0, 2.0 * theta * h));
  const complexd b(0.0, -2.0 * std::sin(2.0 * theta * h));
  block = a * block + b * kblock;
}

double real_overlap(const CMat& a, const CMat& b) {
  return a.conjugate().cwiseProduct(b).sum().real();
}

}

double qaoa_energy(const EvolutionCache& cache, const QaoaParams& params) {
  params.validate();
  const double h = cache.config.field_h;
  const double s = cache.s_target;
  CMat phi = cache.phi0;
  CMat kphi;
  for (int p = 0; p < params.depth; ++p) {
    apply_z(cache.lambda, params.thetas_z(p), phi);
    kphi.noalias() = cache.k * phi;
    apply_x(params.thetas_x(p), h, kphi, phi);
  }
  kphi.noalias() = cache.k * phi;
  const double ez = cache.lambda.dot(phi.rowwise().squaredNorm());
  const double ex = h * (2.0 * real_overlap(phi, kphi) - phi.squaredNorm());
  return s * ez + (1.0 - s) * ex;
}

double qaoa_energy_gradient(const EvolutionCache& cache, const QaoaParams& params,
                            RVec& grad) {
  params.validate();
  const int depth = params.depth;
  const double h = cache.config.field_h;
  const double s = cache.s_target;
  const int two_n = static_cast<int>(cache.lambda.size());
  grad.resize(2 * depth);

  std::vector<CMat> phi(depth + 1);
  phi[0] = cache.phi0;
  CMat work;
  for (int p = 0; p < depth; ++p) {
    phi[p + 1] = phi[p];
    apply_z(cache.lambda, params.thetas_z(p), phi[p + 1]);
    work.noalias() = cache.k * phi[p + 1];
    apply_x(params.thetas_x(p), h, work, phi[p + 1]);
  }

  // psi_P = H(s_target) phi_P in the eigenbasis.
  work.noalias() = cache.k * phi[depth];
  CMat psi(two_n, phi[depth].cols());
  for (int jj = 0; jj < two_n; ++jj) {
    psi.row(jj) = (s * cache.lambda(jj)) * phi[depth].row(jj);
  }
  psi += ((1.0 - s) * h) * (2.0 * work - phi[depth]);
  const double energy =
      s * cache.lambda.dot(phi[depth].rowwise().squaredNorm()) +
      (1.0 - s) * h * (2.0 * real_overlap(phi[depth], work) - phi[depth].squaredNorm());

  CMat kpsi;
  for (int p = depth - 1; p >= 0; --p) {
    const double tz = params.thetas_z(p);
    const double tx = params.thetas_x(p);
    kpsi.noalias() = cache.k * psi;

    const complexd tkx = phi[p + 1].conjugate().cwiseProduct(kpsi).sum();
    const complexd tix = phi[p + 1].conjugate().cwiseProduct(psi).sum();
    grad(2 * p + 1) = -4.0 * h * (2.0 * tkx - tix).imag();

    // psi' = X_p^dag psi, reusing K psi.
    psi = std::exp(complexd(0.0, -2.0 * tx * h)) * psi +
          complexd(0.0, 2.0 * std::sin(2.0 * tx * h)) * kpsi;

    // dE/dtz = -4 Im Tr((Z_p phi_{p-1})^dag Lambda psi'); fold the Z_p phase
    // into the row sum, then reuse it to step psi down a layer.
    double gz = 0.0;
    for (int j = 0; j < two_n; ++j) {
      const complexd phase = std::exp(complexd(0.0, 2.0 * tz * cache.lambda(j)));
      const complexd row = phi[p].row(j).conjugate().cwiseProduct(psi.row(j)).sum();
      gz += (phase * row).imag() * cache.lambda(j);
      psi.row(j) *= phase;
    }
    grad(2 * p) = -4.0 * gz;
  }
  return energy;
}

ResidualMap make_residual_map(const EvolutionCache& cache) {
  const int two_n = static_cast<int>(cache.lambda.size());
  const int n = two_n / 2;
  const double s = cache.s_target;
  const double h = cache.config.field_h;

  CMat ht = ((1.0 - s) * h) * (2.0 * cache.k - CMat::Identity(two_n, two_n));
  ht += (s * cache.lambda).asDiagonal();
  Eigen::SelfAdjointEigenSolver<CMat> solver(ht);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("make_residual_map: target eigensolve failed");
  }
  const RVec& mu = solver.eigenvalues();
  const CMat& w = solver.eigenvectors();

  const double e_vac = mu.head(n).sum();
  const double eps0 = mu(n);
  ResidualMap map;
  map.flipped = (cache.target_ground_energy - e_vac) > eps0;

  map.t.resize(n, two_n);
  for (int j = 0; j < n; ++j) {
    const double weight = std::sqrt(std::max(2.0 * mu(n + j), 0.0));
    const int col = (map.flipped && j == 0) ? n - 1 : n + j;
    map.t.row(j) = weight * w.col(col).adjoint();
  }
  return map;
}

double residual_matrix(const EvolutionCache& cache, const ResidualMap& map,
                       const QaoaParams& params, CMat& r_out) {
  params.validate();
  const double h = cache.config.field_h;
  CMat phi = cache.phi0;
  CMat kphi;
  for (int p = 0; p < params.depth; ++p) {
    apply_z(cache.lambda, params.thetas_z(p), phi);
    kphi.noalias() = cache.k * phi;
    apply_x(params.thetas_x(p), h, kphi, phi);
  }
  r_out.noalias() = map.t * phi;
  return r_out.squaredNorm();
}

double residual_jacobian(const EvolutionCache& cache, const ResidualMap& map,
                         const QaoaParams& params, CMat& r_out, RMat& jac_out) {
  params.validate();
  const int depth = params.depth;
  const double h = cache.config.field_h;
  const int two_n = static_cast<int>(cache.lambda.size());
  const int n = two_n / 2;
  jac_out.resize(2 * n * n, 2 * depth);

  // Forward, keeping both the pre-layer block and the Z-step intermediate.
  std::vector<CMat> phi(depth + 1), psi(depth);
  phi[0] = cache.phi0;
  CMat work;
  for (int p = 0; p < depth; ++p) {
    psi[p] = phi[p];
    apply_z(cache.lambda, params.thetas_z(p), psi[p]);
    work.noalias() = cache.k * psi[p];
    phi[p + 1] = psi[p];
    apply_x(params.thetas_x(p), h, work, phi[p + 1]);
  }
  r_out.noalias() = map.t * phi[depth];

  const auto stack = [n](const CMat& d, RMat& jac, int col) {
    Eigen::Map<const RVec> re(reinterpret_cast<const double*>(d.data()), 2 * n * n);
    for (int i = 0; i < n * n; ++i) {
      jac(i, col) = re(2 * i);
      jac(n * n + i, col) = re(2 * i + 1);
    }
  };

  // Suffix sweep: s_suffix = t X_{P-1} Z_{P-1} ... X_{p+1} Z_{p+1} on entry.
  CMat s_suffix = map.t;
  CMat g, deriv;
  for (int p = depth - 1; p >= 0; --p) {
    const double tx = params.thetas_x(p);
    g.noalias() = s_suffix * cache.k;

    // d/dtx inserts -2i h (2K - 1) after X_p Z_p.
    deriv.noalias() = (2.0 * g - s_suffix) * phi[p + 1];
    deriv *= complexd(0.0, -2.0 * h);
    stack(deriv, jac_out, 2 * p + 1);

    // Right-multiply by X_p, reusing the K product.
    const complexd a = std::exp(complexd(0.0, 2.0 * tx * h));
    const complexd b(0.0, -2.0 * std::sin(2.0 * tx * h));
    s_suffix = a * s_suffix + b * g;

    // d/dtz inserts -2i Lambda after Z_p.
    deriv.noalias() = (s_suffix * cache.lambda.asDiagonal()) * psi[p];
    deriv *= complexd(0.0, -2.0);
    stack(deriv, jac_out, 2 * p);

    // Right-multiply by Z_p to step down a layer.
    for (int j = 0; j < two_n; ++j) {
      s_suffix.col(j) *= std::exp(complexd(0.0, -2.0 * params.thetas_z(p) * cache.lambda(j)));
    }
  }
  return r_out.squaredNorm();
}

CMat thouless_z(const NambuMatrix& u) {
  const CMat ub = u.block_uu();
  const CMat vb = u.block_vl();
  Eigen::FullPivLU<CMat> lu(ub.conjugate());
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) {
    throw singular_u_block_error("Thouless chart: U block is singular at this point");
  }
  return vb.conjugate() * lu.inverse();
}

namespace {

using Mat2 = Eigen::Matrix2cd;

// exp(-2i t (a sz + b sy)) for the 2x2 momentum blocks.
Mat2 exp_block(double a, double b, double t) {
  const double d = std::hypot(a, b);
  Mat2 m;
  m << complexd(a, 0.0), complexd(0.0, -b), complexd(0.0, b), complexd(-a, 0.0);
  if (d < 1e-300) return Mat2::Identity();
  return std::cos(2.0 * t * d) * Mat2::Identity() -
         complexd(0.0, std::sin(2.0 * t * d) / d) * m;
}

}

double momentum_energy(const CouplingConfig& config, double s_target,
                       const QaoaParams& params) {
  config.validate();
  params.validate();
  require_s(s_target, "momentum_energy");
  if (config.n_sites % 2 != 0 || !is_translation_invariant(config)) {
    throw config_error("momentum path needs a translation-invariant even-N ring");
  }
  if (config.field_h <= 0.0) {
    throw config_error("momentum path needs h > 0");
  }
  const int n = config.n_sites;
  const double j = config.couplings[0];
  const double h = config.field_h;

  double energy = 0.0;
  for (int m = 0; m < n; ++m) {
    const double k = (2.0 * m + 1.0) * std::numbers::pi / n;
    const double az = -j * std::cos(k);
    const double bz = j * std::sin(k);
    Eigen::Vector2cd col(0.0, 1.0);  // Gamma column of U_0 = 1
    for (int p = 0; p < params.depth; ++p) {
      col = exp_block(az, bz, params.thetas_z(p)) * col;
      col = exp_block(h, 0.0, params.thetas_x(p)) * col;
    }
    Mat2 ht;
    ht << complexd(s_target * az + (1.0 - s_target) * h, 0.0), complexd(0.0, -s_target * bz),
        complexd(0.0, s_target * bz), complexd(-s_target * az - (1.0 - s_target) * h, 0.0);
    energy += (col.adjoint() * ht * col)(0, 0).real();
  }
  return energy;
}

}
