#ifndef FFQAOA_ED_HPP
#define FFQAOA_ED_HPP

#include <utility>
#include <vector>

#include "ffqaoa/coupling.hpp"
#include "ffqaoa/nambu.hpp"

namespace ffqaoa {

struct QaoaParams;  // evolution.hpp

// Dense 2^N reference implementation on the spin chain
//   H(s) = -s sum_j J_j sz_j sz_{j+1} - (1-s) h sum_j sx_j,
// periodic, site j in 0..N-1 mapped to bit j of the basis index. Two bases:
//   Z: bit b_j = 0 means sz = +1; H_z diagonal, sx_j flips bit j.
//   X: bit b_j = 0 means sx = +1; H_x diagonal, sz_j flips bit j, fermion
//      parity prod_j sx_j is diagonal with sign (-1)^popcount.
enum class SpinBasis { Z, X };

// Dense Hamiltonian matrix. Requires N <= 10 (1024^2 complex entries).
CMat dense_hamiltonian(const CouplingConfig& config, double s, SpinBasis basis = SpinBasis::Z);

// y = H(s) x without forming the matrix. Any N <= 12.
void dense_apply_h(const CouplingConfig& config, double s, SpinBasis basis, const CVec& x,
                   CVec& y);

// <state| H(s) |state> via dense_apply_h.
double dense_energy(const CouplingConfig& config, double s, SpinBasis basis, const CVec& state);

// |psi(theta)> from |+>^N through P layers of e^{-i theta_z H_z},
// e^{-i theta_x H_x} (single angles; the Nambu picture carries the factor
// two). Exact product of commuting two-level rotations, no truncation.
// Requires N <= 10.
CVec dense_qaoa_state(const CouplingConfig& config, const QaoaParams& params,
                      SpinBasis basis = SpinBasis::X);

// E_1 - E_0 of the full 2^N spectrum: dense eigensolve for N <= 10,
// block-Lanczos (degeneracy-safe, block size 2) for N = 11, 12.
double dense_gap(const CouplingConfig& config, double s);

// Two lowest levels restricted to one fermion-parity sector (X basis,
// popcount-selected block). Requires N <= 10.
SectorLevels dense_sector_levels(const CouplingConfig& config, double s, FermionParity sector);

// Ground energies (even, odd). Requires N <= 10.
std::pair<double, double> dense_sector_grounds(const CouplingConfig& config, double s);

}

#endif
