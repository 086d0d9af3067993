#ifndef FFQAOA_PRECISE_HPP
#define FFQAOA_PRECISE_HPP

#include <utility>

#include "ffqaoa/coupling.hpp"

namespace ffqaoa {

// Software-float (~30/60 decimal digit) evaluation of the low end of the
// quasiparticle spectrum. The bottleneck splitting of the frustrated rings
// closes like 10^{-0.3..0.45 N}, far below what a double eigensolver can
// resolve past N ~ 40; these routines follow it down to ~1e-55.
//
// Implementation: quasiparticle energies are the singular values of the
// N x N cyclic bidiagonal M(s) = A - B (diag (1-s)h, subdiag -s J_j,
// corner parity_sign * s * J_N), so eps_1, eps_2 come from Sturm bisection
// on M^T M, which is cyclic tridiagonal and costs O(N) per shift. Vacuum
// parity is the sign of det M.

// Two smallest quasiparticle energies of H(s) in the given parity sector.
std::pair<double, double> precise_epsilon_pair(const CouplingConfig& config, double s,
                                               FermionParity parity);

// Many-body gap E1 - E0 inside one parity sector: 2(eps_1 + eps_2) when the
// Bogoliubov vacuum parity matches the sector, 2(eps_2 - eps_1) otherwise.
double precise_sector_gap(const CouplingConfig& config, double s, FermionParity parity);

struct BottleneckPoint {
  double s = 0.0;
  double gap = 0.0;
};

// Minimum of the sector gap over s in [s_lo, s_hi] (Brent search carried out
// in software floats; the interior minimum of the squared gap is smooth even
// when the avoided crossing is exponentially tight). Expects a bracket from a
// coarse grid; returns the best point found.
BottleneckPoint locate_bottleneck(const CouplingConfig& config, FermionParity parity,
                                  double s_lo, double s_hi);

}

#endif
