#ifndef FFQAOA_COUPLING_HPP
#define FFQAOA_COUPLING_HPP

#include <string>
#include <vector>

namespace ffqaoa {

// Fermion parity sector; changes the sign of the boundary bond in the
// quadratic-fermion picture.
enum class FermionParity { Even = 0, Odd = 1 };

inline int parity_sign(FermionParity p) { return p == FermionParity::Even ? 1 : -1; }

// One Ising ring: N sites, couplings J_1..J_N (J_N is the bond closing the
// ring through sites N and 1), transverse field h. Couplings are in units of
// the base coupling J.
struct CouplingConfig {
  int n_sites = 0;
  std::vector<double> couplings;
  double field_h = 1.0;
  std::string label;

  // Throws config_error unless N >= 2 and |couplings| == N.
  void validate() const;
};

}

#endif
