#include "ffqaoa/nambu.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>

#include "ffqaoa/errors.hpp"
#include "ffqaoa/precise.hpp"

namespace ffqaoa {

namespace {

constexpr double kZeroModeTol = 1e-12;  // eps below this are exact zeros

// Particle-hole conjugation C(v) = Sigma_x v*.
CVec ph_conjugate(const CVec& v) {
  const int n = static_cast<int>(v.size()) / 2;
  CVec w(2 * n);
  w.head(n) = v.tail(n).conjugate();
  w.tail(n) = v.head(n).conjugate();
  return w;
}

// For a 2m-dimensional zero-energy eigenspace, returns m orthonormal columns
// p_i with <p_i|C p_j> = 0, so that (p_i, C p_i) are valid +0/-0 partners.
// Construction: a C-real orthonormal basis r_1..r_2m (C r = r), then
// p_i = (r_{2i-1} + i r_{2i}) / sqrt(2). Deterministic in the column order of
// the eigensolver output.
std::vector<CVec> pair_zero_modes(const std::vector<CVec>& zero_vectors) {
  const std::size_t two_m = zero_vectors.size();
  std::vector<CVec> rs;
  rs.reserve(two_m);
  const complexd iu(0.0, 1.0);
  for (const CVec& z : zero_vectors) {
    const CVec cz = ph_conjugate(z);
    for (const CVec& candidate : {CVec(z + cz), CVec(iu * (z - cz))}) {
      if (rs.size() == two_m) break;
      CVec w = candidate;
      for (const CVec& r : rs) w -= r * r.dot(w);
      if (w.norm() > 1e-6) rs.push_back(w.normalized());
    }
  }
  if (rs.size() != two_m) {
    throw numerical_error("diagonalize: could not pair zero modes under particle-hole conjugation");
  }
  std::vector<CVec> pairs(two_m / 2);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    pairs[i] = (rs[2 * i] + iu * rs[2 * i + 1]) / std::sqrt(2.0);
  }
  return pairs;
}

FermionParity vacuum_parity_of(const CMat& transform) {
  const int n = static_cast<int>(transform.rows()) / 2;
  const CMat u = transform.topLeftCorner(n, n);
  const CMat v = transform.bottomLeftCorner(n, n);
  RMat o(2 * n, 2 * n);
  o.topLeftCorner(n, n) = (u + v).real();
  o.topRightCorner(n, n) = -(u + v).imag();
  o.bottomLeftCorner(n, n) = (u - v).imag();
  o.bottomRightCorner(n, n) = (u - v).real();
  const double det = Eigen::PartialPivLU<RMat>(o).determinant();
  if (std::abs(std::abs(det) - 1.0) > 1e-6) {
    throw numerical_error(fmt::format("vacuum parity: Majorana determinant {} not on the unit circle", det));
  }
  return det > 0 ? FermionParity::Even : FermionParity::Odd;
}

}

void NambuMatrix::check() const {
  if (kind == Kind::Hermitian) {
    const double dev = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 1e-12) {
      throw numerical_error(fmt::format("NambuMatrix: hermiticity violated by {}", dev));
    }
  } else {
    const CMat gram = entries.adjoint() * entries;
    const double dev = (gram - CMat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (dev > 1e-10) {
      throw numerical_error(fmt::format("NambuMatrix: unitarity violated by {}", dev));
    }
  }
}

CMat gamma_matrix(int n) {
  CMat g = CMat::Zero(2 * n, 2 * n);
  g.bottomRightCorner(n, n).setIdentity();
  return g;
}

CMat block_swap(int n) {
  CMat s = CMat::Zero(2 * n, 2 * n);
  s.topRightCorner(n, n).setIdentity();
  s.bottomLeftCorner(n, n).setIdentity();
  return s;
}

CMat reflection_matrix(int n) {
  CMat p = CMat::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    p(j, n - 1 - j) = 1.0;
    p(n + j, 2 * n - 1 - j) = -1.0;
  }
  return p;
}

NambuMatrix build_hx(const CouplingConfig& config) {
  config.validate();
  const int n = config.n_sites;
  NambuMatrix m;
  m.kind = NambuMatrix::Kind::Hermitian;
  m.entries = CMat::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    m.entries(j, j) = config.field_h;
    m.entries(n + j, n + j) = -config.field_h;
  }
  return m;
}

NambuMatrix build_hz(const CouplingConfig& config, FermionParity parity) {
  config.validate();
  const int n = config.n_sites;
  RMat a = RMat::Zero(n, n);
  RMat b = RMat::Zero(n, n);
  for (int j = 0; j + 1 < n; ++j) {  // bulk bonds J_1..J_{N-1}
    const double half = config.couplings[j] / 2.0;
    a(j, j + 1) += -half;
    a(j + 1, j) += -half;
    b(j, j + 1) += -half;
    b(j + 1, j) += half;
  }
  // Boundary bond J_N picks up (-1)^p; += so that N=2 (a doubled bond) stacks.
  const double boundary = parity_sign(parity) * config.couplings[n - 1] / 2.0;
  a(n - 1, 0) += boundary;
  a(0, n - 1) += boundary;
  b(n - 1, 0) += boundary;
  b(0, n - 1) += -boundary;

  NambuMatrix m;
  m.kind = NambuMatrix::Kind::Hermitian;
  m.entries = CMat::Zero(2 * n, 2 * n);
  m.entries.topLeftCorner(n, n) = a;
  m.entries.topRightCorner(n, n) = b;
  m.entries.bottomLeftCorner(n, n) = -b;
  m.entries.bottomRightCorner(n, n) = -a;
  return m;
}

NambuMatrix build_h(const CouplingConfig& config, double s, FermionParity parity) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw config_error(fmt::format("build_h: s must lie in [0,1], got {}", s));
  }
  NambuMatrix hz = build_hz(config, parity);
  const NambuMatrix hx = build_hx(config);
  hz.entries = s * hz.entries + (1.0 - s) * hx.entries;
  return hz;
}

BdgSpectrum diagonalize(const NambuMatrix& m, FermionParity sector) {
  const int n = m.n();
  const CMat& h = m.entries;
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());

  // Particle-hole structure: Sigma_x H* Sigma_x = -H, entrywise.
  for (int i = 0; i < 2 * n; ++i) {
    const int si = (i + n) % (2 * n);
    for (int j = 0; j < 2 * n; ++j) {
      const int sj = (j + n) % (2 * n);
      if (std::abs(std::conj(h(si, sj)) + h(i, j)) > 1e-10 * scale) {
        throw numerical_error("diagonalize: input violates particle-hole structure");
      }
    }
  }

  Eigen::SelfAdjointEigenSolver<CMat> solver(h);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("diagonalize: eigendecomposition failed");
  }
  const RVec& lambda = solver.eigenvalues();  // ascending
  for (int i = 0; i < n; ++i) {
    if (std::abs(lambda(i) + lambda(2 * n - 1 - i)) > 1e-10 * scale) {
      throw numerical_error(fmt::format(
          "diagonalize: eigenvalues not particle-hole paired ({} vs {})", lambda(i),
          lambda(2 * n - 1 - i)));
    }
  }

  std::vector<CVec> zero_vectors;
  std::vector<int> positive_indices;
  for (int i = 0; i < 2 * n; ++i) {
    if (std::abs(lambda(i)) <= kZeroModeTol) {
      zero_vectors.push_back(solver.eigenvectors().col(i));
    } else if (lambda(i) > 0) {
      positive_indices.push_back(i);
    }
  }
  if (zero_vectors.size() % 2 != 0) {
    throw numerical_error("diagonalize: odd-dimensional zero-energy eigenspace");
  }
  const std::vector<CVec> zero_pairs = pair_zero_modes(zero_vectors);

  BdgSpectrum spectrum;
  spectrum.sector = sector;
  spectrum.epsilons = RVec::Zero(n);
  spectrum.transform.kind = NambuMatrix::Kind::Unitary;
  spectrum.transform.entries = CMat::Zero(2 * n, 2 * n);
  int col = 0;
  for (const CVec& p : zero_pairs) {
    spectrum.transform.entries.col(col++) = p;  // eps = 0
  }
  for (int idx : positive_indices) {
    spectrum.epsilons(col) = lambda(idx);
    spectrum.transform.entries.col(col++) = solver.eigenvectors().col(idx);
  }
  if (col != n) {
    throw numerical_error("diagonalize: positive/zero mode count mismatch");
  }
  for (int j = 0; j < n; ++j) {
    spectrum.transform.entries.col(n + j) = ph_conjugate(spectrum.transform.entries.col(j));
  }
  spectrum.vacuum_energy = -spectrum.epsilons.sum();
  spectrum.vacuum_parity = vacuum_parity_of(spectrum.transform.entries);
  return spectrum;
}

SectorLevels sector_levels(const BdgSpectrum& spectrum) {
  const RVec& eps = spectrum.epsilons;
  if (eps.size() < 2) {
    throw numerical_error("sector_levels: need at least two quasiparticle modes");
  }
  SectorLevels levels;
  if (spectrum.vacuum_parity == spectrum.sector) {
    // Even-cardinality excitation sets: vacuum, then the two cheapest modes.
    levels.e0 = spectrum.vacuum_energy;
    levels.e1 = spectrum.vacuum_energy + 2.0 * (eps(0) + eps(1));
  } else {
    // Odd-cardinality sets: one quasiparticle, cheapest first.
    levels.e0 = spectrum.vacuum_energy + 2.0 * eps(0);
    levels.e1 = spectrum.vacuum_energy + 2.0 * eps(1);
  }
  return levels;
}

double sector_ground_energy(const CouplingConfig& config, double s, FermionParity sector) {
  const BdgSpectrum spectrum = diagonalize(build_h(config, s, sector), sector);
  return sector_levels(spectrum).e0;
}

double sector_gap(const CouplingConfig& config, double s, FermionParity sector) {
  const SectorLevels lv = sector_levels(diagonalize(build_h(config, s, sector), sector));
  return lv.e1 - lv.e0;
}

FermionParity dynamics_parity(const CouplingConfig& config) {
  config.validate();
  if (config.field_h == 0.0) {
    throw config_error("h = 0 leaves the driver ground state (and its parity sector) undefined");
  }
  if (config.field_h > 0.0) return FermionParity::Even;
  return config.n_sites % 2 == 0 ? FermionParity::Even : FermionParity::Odd;
}

GapPoint many_body_gap_info(const CouplingConfig& config, double s) {
  struct Level {
    double e;
    FermionParity sector;
  };
  std::array<Level, 4> levels;
  int k = 0;
  for (FermionParity sector : {FermionParity::Even, FermionParity::Odd}) {
    const BdgSpectrum spectrum = diagonalize(build_h(config, s, sector), sector);
    const SectorLevels sl = sector_levels(spectrum);
    levels[k++] = {sl.e0, sector};
    levels[k++] = {sl.e1, sector};
  }
  std::stable_sort(levels.begin(), levels.end(),
                   [](const Level& a, const Level& b) { return a.e < b.e; });
  GapPoint point;
  point.s = s;
  point.gap = levels[1].e - levels[0].e;
  point.sector_e0 = levels[0].sector;
  point.sector_e1 = levels[1].sector;
  return point;
}

double many_body_gap(const CouplingConfig& config, double s) {
  return many_body_gap_info(config, s).gap;
}

GapScanResult gap_scan(const CouplingConfig& config, const std::vector<double>& s_grid,
                       bool refine) {
  const FermionParity dyn = dynamics_parity(config);
  GapScanResult result;
  result.points.reserve(s_grid.size());
  for (double s : s_grid) {
    struct Level {
      double e;
      FermionParity sector;
    };
    std::array<Level, 4> levels;
    int k = 0;
    double dyn_gap = 0.0;
    for (FermionParity sector : {FermionParity::Even, FermionParity::Odd}) {
      const SectorLevels sl = sector_levels(diagonalize(build_h(config, s, sector), sector));
      if (sector == dyn) dyn_gap = sl.e1 - sl.e0;
      levels[k++] = {sl.e0, sector};
      levels[k++] = {sl.e1, sector};
    }
    std::stable_sort(levels.begin(), levels.end(),
                     [](const Level& a, const Level& b) { return a.e < b.e; });
    result.points.push_back({s, dyn_gap, levels[0].sector, levels[1].sector});
  }
  if (result.points.empty()) return result;

  result.argmin_index = 0;
  for (int i = 1; i < static_cast<int>(result.points.size()); ++i) {
    if (result.points[i].gap < result.points[result.argmin_index].gap) result.argmin_index = i;
  }
  result.grid_min_gap = result.points[result.argmin_index].gap;
  result.refined_s = result.points[result.argmin_index].s;
  result.refined_gap = result.grid_min_gap;
  if (!refine || result.points.size() < 2) return result;

  const int i = result.argmin_index;
  const double a = result.points[std::max(i - 1, 0)].s;
  const double b = result.points[std::min(i + 1, static_cast<int>(result.points.size()) - 1)].s;
  if (!(b > a)) return result;

  const BottleneckPoint bottom = locate_bottleneck(config, dyn, a, b);
  result.refined_s = bottom.s;
  result.refined_gap = bottom.gap;
  return result;
}

}
