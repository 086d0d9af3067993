#ifndef FFQAOA_EVOLUTION_HPP
#define FFQAOA_EVOLUTION_HPP

#include "ffqaoa/coupling.hpp"
#include "ffqaoa/nambu.hpp"

namespace ffqaoa {

// Angles of one circuit, theta_z_p / theta_x_p for p = 1..depth. The flat
// vector interleaves per layer: (z_1, x_1, z_2, x_2, ...). Angles are the
// spin-picture ones; the Nambu generators carry the factor two.
struct QaoaParams {
  int depth = 0;
  RVec thetas_z;
  RVec thetas_x;

  static QaoaParams from_flat(const RVec& flat);
  RVec flat() const;

  // Throws config_error on size mismatch or negative depth.
  void validate() const;
};

// Parity sector the circuit acts in: the parity of the H_x ground state,
// even for h > 0, (-1)^N for h < 0. h = 0 leaves the initial state
// undefined and is rejected.
FermionParity dynamics_sector(const CouplingConfig& config);

// Nambu matrix of the initial Bogoliubov transform U_0: identity for h > 0,
// the block swap for h < 0.
NambuMatrix initial_transform(const CouplingConfig& config);

// Per-instance precomputation for repeated energy/gradient evaluation.
// Everything lives in the eigenbasis of the sector H_z:
//   lambda  2N BdG eigenvalues of H_z, ascending
//   k       V^dag P_+ V with P_+ = diag(1_N, 0_N); Hermitian projector
//   phi0    V^dag U_0 C, the Gamma-projected initial block (2N x N)
// In that basis the driver factor is exp(2i t h) I - 2i sin(2 t h) K with
// t = theta_x, so one evaluation costs 2P+1 products of K with a 2N x N
// block plus O(N^2) diagonal work.
struct EvolutionCache {
  CouplingConfig config;
  double s_target = 1.0;
  FermionParity sector = FermionParity::Even;
  RVec lambda;
  CMat k;
  CMat phi0;
  double target_ground_energy = 0.0;  // sector ground energy of H(s_target)
};

EvolutionCache make_cache(const CouplingConfig& config, double s_target);

// Reference path: the full 2N x 2N circuit matrix
//   U = X_P Z_P ... X_1 Z_1 U_0,
// X_p = exp(-2i theta_x_p Hx), Z_p = exp(-2i theta_z_p Hz), via exact
// spectral exponentials. Quadratic in the layer count; for optimization use
// the cache path.
NambuMatrix evolve(const CouplingConfig& config, const QaoaParams& params,
                   FermionParity sector);
NambuMatrix evolve(const CouplingConfig& config, const QaoaParams& params);

// Tr(U^dag H U Gamma). Throws numerical_error if the trace picks up an
// imaginary part beyond roundoff.
double trace_energy(const NambuMatrix& h, const NambuMatrix& u);

// E(theta) through the cache fast path.
double qaoa_energy(const EvolutionCache& cache, const QaoaParams& params);

// Fused E(theta) and dE/dtheta (flat layout). One forward sweep storing the
// projected blocks, one adjoint sweep reusing each K product for both the
// recursion and the layer's x-derivative trace.
double qaoa_energy_gradient(const EvolutionCache& cache, const QaoaParams& params,
                            RVec& grad);

// Least-squares view of the residual energy. Diagonalizing the target
// matrix s Lambda + (1-s) h (2K - 1) in the cache basis gives quasiparticle
// rows t_j = sqrt(2 eps_j) w_j^dag, and the residual matrix R = t Phi(theta)
// satisfies ||R||_F^2 = E(theta) - E_vac = E(theta) - E_gs when the vacuum
// parity matches the sector. When it does not (ordered phase at s_target
// near 1), the sector ground state is the one-quasiparticle state and the
// lowest row is swapped for its hole partner; then
//   E(theta) - E_gs = ||R||_F^2 - 2 ||row_0(R)||^2,
// and ||R|| = 0 still holds exactly at the sector ground state. Either way
// the zero set of R is the set of circuits hitting the target, which makes
// R the natural residual for Gauss-Newton-type polishing.
struct ResidualMap {
  CMat t;                // N x 2N, rows sqrt(2 eps_j) w_j^dag (cache basis)
  bool flipped = false;  // lowest mode replaced by its hole partner
};

ResidualMap make_residual_map(const EvolutionCache& cache);

// R(theta) into r_out; returns ||R||_F^2.
double residual_matrix(const EvolutionCache& cache, const ResidualMap& map,
                       const QaoaParams& params, CMat& r_out);

// R(theta) plus the Jacobian of the stacked real vector [Re vec R; Im vec R]
// with respect to the flat angle layout: jac_out is 2N^2 x 2P. Returns
// ||R||_F^2. One forward sweep storing layer blocks, one suffix sweep
// reusing each K product for the x-derivative and the layer step.
double residual_jacobian(const EvolutionCache& cache, const ResidualMap& map,
                         const QaoaParams& params, CMat& r_out, RMat& jac_out);

// Thouless coordinate Z = V* (U*)^{-1} of a Nambu unitary with blocks
// [[U, V*],[V, U*]]. Antisymmetric when the input is a proper Bogoliubov
// transform. Throws singular_u_block_error when the U block is singular
// (the coordinate chart does not cover that point).
CMat thouless_z(const NambuMatrix& u);

// Momentum-space evaluation for translation-invariant even-N rings with
// h > 0: the even-sector problem splits into one 2x2 block per antiperiodic
// momentum k = +-(2m-1) pi/N. Independent of the real-space path, used as a
// crosscheck.
double momentum_energy(const CouplingConfig& config, double s_target,
                       const QaoaParams& params);

}

#endif
