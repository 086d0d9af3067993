#include "ffqaoa/theory.hpp"

#include <cmath>
#include <fmt/format.h>

#include "ffqaoa/errors.hpp"
#include "ffqaoa/evolution.hpp"
#include "ffqaoa/models.hpp"
#include "ffqaoa/rng.hpp"

namespace ffqaoa {

const char* symmetry_name(SymmetryClass s) {
  switch (s) {
    case SymmetryClass::General: return "general";
    case SymmetryClass::ReflectionSymmetric: return "reflection";
    case SymmetryClass::TranslationInvariant: return "translation";
  }
  return "?";
}

DimensionReport count_dimensions(int n, SymmetryClass symmetry) {
  if (n < 2) throw config_error("dimension counts need N >= 2");
  DimensionReport r;
  r.symmetry = symmetry;
  r.n_sites = n;
  switch (symmetry) {
    case SymmetryClass::General:
      r.dim_group = 2 * n * n - n;
      r.dim_gauge = n * n;
      break;
    case SymmetryClass::ReflectionSymmetric:
      r.dim_group = n * n;
      r.dim_gauge = n % 2 == 1 ? (n * n + 1) / 2 : n * n / 2;
      break;
    case SymmetryClass::TranslationInvariant:
      if (n % 2 != 0) {
        throw config_error("translation-invariant counts are defined for even N");
      }
      r.dim_group = 2 * n;
      r.dim_gauge = n;
      break;
  }
  r.dim_flag = r.dim_group - r.dim_gauge;
  r.p_critical = r.dim_flag / 2;
  return r;
}

int predict_pcr(int n, SymmetryClass symmetry) { return count_dimensions(n, symmetry).p_critical; }

SymmetryClass classify(const CouplingConfig& config) {
  config.validate();
  if (config.n_sites % 2 == 0 && is_translation_invariant(config)) {
    return SymmetryClass::TranslationInvariant;
  }
  if (is_reflection_symmetric(config)) return SymmetryClass::ReflectionSymmetric;
  return SymmetryClass::General;
}

namespace {

CouplingConfig certificate_instance(int n, SymmetryClass symmetry, Rng& rng) {
  CouplingConfig config;
  config.n_sites = n;
  config.field_h = 1.0;
  config.couplings.assign(n, 1.0);
  switch (symmetry) {
    case SymmetryClass::General:
      for (int j = 0; j < n; ++j) config.couplings[j] = rng.uniform(0.7, 1.3);
      break;
    case SymmetryClass::ReflectionSymmetric:
      // J_j = J_{N-j}; bonds j = 1..floor((N-1)/2) free, axis bond(s) free.
      for (int j = 1; j <= (n - 1) / 2; ++j) {
        const double v = rng.uniform(0.7, 1.3);
        config.couplings[j - 1] = v;
        config.couplings[n - j - 1] = v;
      }
      config.couplings[n - 1] = rng.uniform(0.7, 1.3);
      if (n % 2 == 0) config.couplings[n / 2 - 1] = rng.uniform(0.7, 1.3);
      break;
    case SymmetryClass::TranslationInvariant:
      break;  // uniform couplings
  }
  config.label = fmt::format("certificate-{}-{}", symmetry_name(symmetry), n);
  return config;
}

// Real coordinates of an antisymmetric complex matrix: (Re, Im) of the
// strict upper triangle.
RVec vectorize_antisymmetric(const CMat& z) {
  const int n = static_cast<int>(z.rows());
  RVec out(n * (n - 1));
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out(idx++) = z(i, j).real();
      out(idx++) = z(i, j).imag();
    }
  }
  return out;
}

}

DimensionCertificate certify_gaussian_dimension(int n, SymmetryClass symmetry, int samples,
                                                std::uint64_t seed) {
  if (n > 8) throw config_error("certificate limited to N <= 8");
  if (samples < 1) throw config_error("certificate needs at least one sample");

  DimensionCertificate cert;
  cert.report = count_dimensions(n, symmetry);
  cert.depth_used = 2 * cert.report.dim_flag;
  const double step = cert.fd_step;
  const int n_angles = 2 * cert.depth_used;
  const int n_coords = n * (n - 1);

  Rng rng(seed);
  const CouplingConfig config = certificate_instance(n, symmetry, rng);
  const FermionParity sector = dynamics_sector(config);

  for (int sample = 0; sample < samples; ++sample) {
    // Redraw when the chart is singular at the base point or a probe.
    int rank = -1;
    for (int attempt = 0; attempt < 10 && rank < 0; ++attempt) {
      RVec flat(n_angles);
      for (int i = 0; i < n_angles; ++i) flat(i) = rng.uniform(0.0, 6.283185307179586);
      try {
        RMat jac(n_coords, n_angles);
        for (int i = 0; i < n_angles; ++i) {
          RVec fp = flat, fm = flat;
          fp(i) += step;
          fm(i) -= step;
          const RVec zp = vectorize_antisymmetric(
              thouless_z(evolve(config, QaoaParams::from_flat(fp), sector)));
          const RVec zm = vectorize_antisymmetric(
              thouless_z(evolve(config, QaoaParams::from_flat(fm), sector)));
          jac.col(i) = (zp - zm) / (2.0 * step);
        }
        Eigen::BDCSVD<RMat> svd(jac);
        const RVec& sv = svd.singularValues();
        const double cut = 1e-8 * std::max(1.0, sv(0));
        rank = 0;
        for (int i = 0; i < sv.size(); ++i) {
          if (sv(i) > cut) ++rank;
        }
      } catch (const singular_u_block_error&) {
        rank = -1;
      }
    }
    if (rank < 0) {
      throw numerical_error("certificate: Thouless chart singular at 10 random points");
    }
    cert.sample_ranks.push_back(rank);
    cert.jacobian_rank = std::max(cert.jacobian_rank, rank);
  }
  cert.matches = cert.jacobian_rank == cert.report.dim_flag;
  return cert;
}

}
