#include "ffqaoa/ed.hpp"

#include <bit>
#include <cmath>
#include <fmt/format.h>

#include "ffqaoa/errors.hpp"
#include "ffqaoa/evolution.hpp"
#include "ffqaoa/rng.hpp"

namespace ffqaoa {

namespace {

constexpr int kDenseMaxSites = 10;
constexpr int kApplyMaxSites = 12;

void require_sites(const CouplingConfig& config, int max_sites, const char* who) {
  config.validate();
  if (config.n_sites > max_sites) {
    throw config_error(fmt::format("{}: N = {} exceeds the 2^N budget (max {})", who,
                                   config.n_sites, max_sites));
  }
}

double z_diag_entry(const CouplingConfig& config, std::size_t b) {
  const int n = config.n_sites;
  double e = 0.0;
  for (int j = 0; j < n; ++j) {
    const double zj = (b >> j) & 1 ? -1.0 : 1.0;
    const double zj1 = (b >> ((j + 1) % n)) & 1 ? -1.0 : 1.0;
    e -= config.couplings[j] * zj * zj1;
  }
  return e;
}

double x_diag_entry(double h, int n, std::size_t b) {
  const int down = std::popcount(b & ((std::size_t{1} << n) - 1));
  return -h * (n - 2 * down);
}

}

CMat dense_hamiltonian(const CouplingConfig& config, double s, SpinBasis basis) {
  require_sites(config, kDenseMaxSites, "dense_hamiltonian");
  const int n = config.n_sites;
  const std::size_t dim = std::size_t{1} << n;
  CMat h = CMat::Zero(dim, dim);
  if (basis == SpinBasis::Z) {
    for (std::size_t b = 0; b < dim; ++b) {
      h(b, b) = s * z_diag_entry(config, b);
      for (int j = 0; j < n; ++j) {
        h(b ^ (std::size_t{1} << j), b) += -(1.0 - s) * config.field_h;
      }
    }
  } else {
    for (std::size_t b = 0; b < dim; ++b) {
      h(b, b) = (1.0 - s) * x_diag_entry(config.field_h, n, b);
      for (int j = 0; j < n; ++j) {
        const std::size_t mask =
            (std::size_t{1} << j) | (std::size_t{1} << ((j + 1) % n));
        h(b ^ mask, b) += -s * config.couplings[j];
      }
    }
  }
  return h;
}

void dense_apply_h(const CouplingConfig& config, double s, SpinBasis basis, const CVec& x,
                   CVec& y) {
  require_sites(config, kApplyMaxSites, "dense_apply_h");
  const int n = config.n_sites;
  const std::size_t dim = std::size_t{1} << n;
  if (static_cast<std::size_t>(x.size()) != dim) {
    throw config_error("dense_apply_h: state dimension mismatch");
  }
  y.resize(dim);
  if (basis == SpinBasis::Z) {
    for (std::size_t b = 0; b < dim; ++b) y(b) = s * z_diag_entry(config, b) * x(b);
    for (int j = 0; j < n; ++j) {
      const std::size_t bit = std::size_t{1} << j;
      for (std::size_t b = 0; b < dim; ++b) {
        y(b) += -(1.0 - s) * config.field_h * x(b ^ bit);
      }
    }
  } else {
    for (std::size_t b = 0; b < dim; ++b) {
      y(b) = (1.0 - s) * x_diag_entry(config.field_h, n, b) * x(b);
    }
    for (int j = 0; j < n; ++j) {
      const std::size_t mask = (std::size_t{1} << j) | (std::size_t{1} << ((j + 1) % n));
      for (std::size_t b = 0; b < dim; ++b) {
        y(b) += -s * config.couplings[j] * x(b ^ mask);
      }
    }
  }
}

double dense_energy(const CouplingConfig& config, double s, SpinBasis basis, const CVec& state) {
  CVec hx;
  dense_apply_h(config, s, basis, state, hx);
  const complexd e = state.dot(hx);
  if (std::abs(e.imag()) > 1e-10) {
    throw numerical_error(fmt::format("dense_energy: imaginary expectation {}", e.imag()));
  }
  return e.real();
}

CVec dense_qaoa_state(const CouplingConfig& config, const QaoaParams& params, SpinBasis basis) {
  require_sites(config, kDenseMaxSites, "dense_qaoa_state");
  const int n = config.n_sites;
  const std::size_t dim = std::size_t{1} << n;
  const double h = config.field_h;

  CVec psi(dim);
  if (basis == SpinBasis::X) {
    psi.setZero();
    psi(0) = 1.0;  // |+>^N
  } else {
    psi.setConstant(std::pow(2.0, -0.5 * n));
  }

  const complexd iu(0.0, 1.0);
  for (int p = 0; p < params.depth; ++p) {
    const double tz = params.thetas_z[p];
    const double tx = params.thetas_x[p];
    if (basis == SpinBasis::X) {
      // e^{-i tz H_z}: per bond the double-flip F_j is an involution, so the
      // factor is cos(tz J_j) + i sin(tz J_j) F_j; bonds commute.
      for (int j = 0; j < n; ++j) {
        const std::size_t mask = (std::size_t{1} << j) | (std::size_t{1} << ((j + 1) % n));
        const double c = std::cos(tz * config.couplings[j]);
        const complexd is = iu * std::sin(tz * config.couplings[j]);
        for (std::size_t b = 0; b < dim; ++b) {
          const std::size_t bf = b ^ mask;
          if (b < bf) {
            const complexd u = psi(b), v = psi(bf);
            psi(b) = c * u + is * v;
            psi(bf) = c * v + is * u;
          }
        }
      }
      for (std::size_t b = 0; b < dim; ++b) {
        psi(b) *= std::exp(-iu * tx * x_diag_entry(h, n, b));
      }
    } else {
      for (std::size_t b = 0; b < dim; ++b) {
        psi(b) *= std::exp(-iu * tz * z_diag_entry(config, b));
      }
      // e^{-i tx H_x} = prod_j (cos(tx h) + i sin(tx h) X_j).
      const double c = std::cos(tx * h);
      const complexd is = iu * std::sin(tx * h);
      for (int j = 0; j < n; ++j) {
        const std::size_t bit = std::size_t{1} << j;
        for (std::size_t b = 0; b < dim; ++b) {
          if (!(b & bit)) {
            const std::size_t bf = b | bit;
            const complexd u = psi(b), v = psi(bf);
            psi(b) = c * u + is * v;
            psi(bf) = c * v + is * u;
          }
        }
      }
    }
  }
  return psi;
}

namespace {

// Block-size-2 Lanczos with full reorthogonalization; resolves two-fold
// degenerate ground states, which plain Lanczos would merge.
double lanczos_gap(const CouplingConfig& config, double s) {
  const int n = config.n_sites;
  const std::size_t dim = std::size_t{1} << n;
  const int block = 2;
  const int max_blocks = 120;

  Rng rng(0x5eed0000u + static_cast<std::uint64_t>(n));
  CMat v_cur(dim, block);
  for (std::size_t b = 0; b < dim; ++b) {
    for (int c = 0; c < block; ++c) {
      v_cur(b, c) = complexd(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }
  }
  {
    Eigen::HouseholderQR<CMat> qr(v_cur);
    v_cur = qr.householderQ() * CMat::Identity(dim, block);
  }

  std::vector<CMat> basis{v_cur};
  CMat v_prev = CMat::Zero(dim, block);
  CMat b_prev = CMat::Zero(block, block);
  std::vector<CMat> a_blocks, b_blocks;
  double prev_e0 = 0.0, prev_e1 = 0.0;
  bool have_prev = false;

  for (int k = 0; k < max_blocks; ++k) {
    CMat w(dim, block);
    CVec col(dim), hcol(dim);
    for (int c = 0; c < block; ++c) {
      col = v_cur.col(c);
      dense_apply_h(config, s, SpinBasis::Z, col, hcol);
      w.col(c) = hcol;
    }
    w.noalias() -= v_prev * b_prev.adjoint();
    CMat a = v_cur.adjoint() * w;
    a = (a + a.adjoint()) / 2.0;
    w.noalias() -= v_cur * a;
    for (int pass = 0; pass < 2; ++pass) {
      for (const CMat& v : basis) w.noalias() -= v * (v.adjoint() * w);
    }
    a_blocks.push_back(a);

    // Ritz values of the block tridiagonal matrix built so far.
    const int m = static_cast<int>(a_blocks.size()) * block;
    CMat t = CMat::Zero(m, m);
    for (int i = 0; i < static_cast<int>(a_blocks.size()); ++i) {
      t.block(i * block, i * block, block, block) = a_blocks[i];
      if (i + 1 < static_cast<int>(a_blocks.size())) {
        t.block((i + 1) * block, i * block, block, block) = b_blocks[i];
        t.block(i * block, (i + 1) * block, block, block) = b_blocks[i].adjoint();
      }
    }
    Eigen::SelfAdjointEigenSolver<CMat> ritz(t, Eigen::EigenvaluesOnly);
    const double e0 = ritz.eigenvalues()(0);
    const double e1 = m > 1 ? ritz.eigenvalues()(1) : e0;
    if (have_prev && std::abs(e0 - prev_e0) < 1e-13 && std::abs(e1 - prev_e1) < 1e-13) {
      return e1 - e0;
    }
    prev_e0 = e0;
    prev_e1 = e1;
    have_prev = true;

    Eigen::HouseholderQR<CMat> qr(w);
    CMat r = qr.matrixQR().topLeftCorner(block, block).triangularView<Eigen::Upper>();
    if (r.cwiseAbs().maxCoeff() < 1e-12) {
      return e1 - e0;  // invariant subspace: Ritz values are exact
    }
    v_prev = v_cur;
    v_cur = qr.householderQ() * CMat::Identity(dim, block);
    b_prev = r;
    b_blocks.push_back(r);
    basis.push_back(v_cur);
  }
  return prev_e1 - prev_e0;
}

}

double dense_gap(const CouplingConfig& config, double s) {
  require_sites(config, kApplyMaxSites, "dense_gap");
  if (config.n_sites <= kDenseMaxSites) {
    const CMat h = dense_hamiltonian(config, s, SpinBasis::Z);
    Eigen::SelfAdjointEigenSolver<CMat> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(1) - solver.eigenvalues()(0);
  }
  return lanczos_gap(config, s);
}

SectorLevels dense_sector_levels(const CouplingConfig& config, double s, FermionParity sector) {
  require_sites(config, kDenseMaxSites, "dense_sector_levels");
  const int n = config.n_sites;
  const std::size_t dim = std::size_t{1} << n;
  const int want = sector == FermionParity::Even ? 0 : 1;
  std::vector<std::size_t> idx;
  idx.reserve(dim / 2);
  for (std::size_t b = 0; b < dim; ++b) {
    if (std::popcount(b) % 2 == want) idx.push_back(b);
  }
  const CMat h = dense_hamiltonian(config, s, SpinBasis::X);
  CMat blockm(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    for (std::size_t c = 0; c < idx.size(); ++c) blockm(r, c) = h(idx[r], idx[c]);
  }
  Eigen::SelfAdjointEigenSolver<CMat> solver(blockm, Eigen::EigenvaluesOnly);
  return SectorLevels{solver.eigenvalues()(0), solver.eigenvalues()(1)};
}

std::pair<double, double> dense_sector_grounds(const CouplingConfig& config, double s) {
  return {dense_sector_levels(config, s, FermionParity::Even).e0,
          dense_sector_levels(config, s, FermionParity::Odd).e0};
}

}
