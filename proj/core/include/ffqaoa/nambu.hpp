#ifndef FFQAOA_NAMBU_HPP
#define FFQAOA_NAMBU_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ffqaoa/coupling.hpp"

namespace ffqaoa {

using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using complexd = std::complex<double>;

// Dense 2Nx2N matrix in the Nambu (c_1..c_N, cdag_1..cdag_N) ordering.
struct NambuMatrix {
  enum class Kind { Hermitian, Unitary };

  CMat entries;
  Kind kind = Kind::Hermitian;

  int n() const { return static_cast<int>(entries.rows()) / 2; }

  Eigen::Block<const CMat> block_uu() const { return entries.topLeftCorner(n(), n()); }
  Eigen::Block<const CMat> block_vl() const { return entries.bottomLeftCorner(n(), n()); }

  // Throws numerical_error when the kind invariant (hermiticity to 1e-12 /
  // unitarity to 1e-10) is violated.
  void check() const;
};

struct BdgSpectrum {
  RVec epsilons;          // N quasiparticle energies, ascending, >= 0
  NambuMatrix transform;  // columns 1..N belong to +eps_j, N+j to -eps_j
  double vacuum_energy = 0.0;  // -sum_j eps_j
  FermionParity vacuum_parity = FermionParity::Even;
  FermionParity sector = FermionParity::Even;
};

// Two lowest many-body levels of one parity sector, built from the vacuum by
// quasiparticle sets whose cardinality parity matches the sector.
struct SectorLevels {
  double e0 = 0.0;
  double e1 = 0.0;
};

struct GapPoint {
  double s = 0.0;
  double gap = 0.0;
  FermionParity sector_e0 = FermionParity::Even;
  FermionParity sector_e1 = FermionParity::Even;
};

struct GapScanResult {
  std::vector<GapPoint> points;
  int argmin_index = -1;   // over the grid; -1 for an empty grid
  double grid_min_gap = 0.0;
  double refined_s = 0.0;  // golden-section refinement around the grid argmin
  double refined_gap = 0.0;
};

// Gamma = diag(0_N, 1_N): the projector selecting Bogoliubov-occupied modes
// in the trace energy formula.
CMat gamma_matrix(int n);

// Block swap [[0,1],[1,0]]; also the particle-hole conjugation carrier.
CMat block_swap(int n);

// Reflection P = diag(P, -P) with P the site-reversal antidiagonal.
CMat reflection_matrix(int n);

// Nambu matrix of H_x = -h sum_j sx_j: diag(h 1_N, -h 1_N).
NambuMatrix build_hx(const CouplingConfig& config);

// Nambu matrix of H_z = -sum_j J_j sz_j sz_{j+1} in the given parity sector;
// the boundary bond J_N enters with sign (-1)^p relative to +J_N/2.
NambuMatrix build_hz(const CouplingConfig& config, FermionParity parity);

// H(s) = s H_z + (1-s) H_x. Rejects s outside [0,1].
NambuMatrix build_h(const CouplingConfig& config, double s, FermionParity parity);

// Full BdG diagonalization: quasiparticle energies, the particle-hole paired
// transform, vacuum energy and vacuum parity (sign of the Majorana-picture
// determinant). Throws numerical_error when the input lacks particle-hole
// structure.
BdgSpectrum diagonalize(const NambuMatrix& m, FermionParity sector);

// Lowest and second-lowest many-body energies of the spectrum's sector.
SectorLevels sector_levels(const BdgSpectrum& spectrum);

// Ground energy of the given sector of H(s).
double sector_ground_energy(const CouplingConfig& config, double s, FermionParity sector);

// E_1 - E_0 inside one parity sector.
double sector_gap(const CouplingConfig& config, double s, FermionParity sector);

// Parity sector hosting the H_x ground state (the sector the alternating
// dynamics stays in): even for h > 0; for h < 0 even only when N is even.
// h = 0 is rejected.
FermionParity dynamics_parity(const CouplingConfig& config);

// E_1 - E_0 across both parity sectors. In the ordered phase the two sector
// ground states are degenerate to within e^{-O(N)}, so this vanishes there;
// the bottleneck curve of the scans is sector_gap in the dynamics sector.
double many_body_gap(const CouplingConfig& config, double s);

// Cross-sector gap plus which sector hosts E_0 and E_1.
GapPoint many_body_gap_info(const CouplingConfig& config, double s);

// Pointwise dynamics-sector gap over the grid (sector_e0 / sector_e1 still
// label the two lowest levels across both sectors). With `refine` set, the
// bottleneck between the argmin's grid neighbours is localized by a
// software-float search that resolves exponentially small minima far below
// the double eigensolver floor.
GapScanResult gap_scan(const CouplingConfig& config, const std::vector<double>& s_grid,
                       bool refine = true);

}

#endif
