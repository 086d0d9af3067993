#ifndef FFQAOA_THEORY_HPP
#define FFQAOA_THEORY_HPP

#include <cstdint>
#include <vector>

#include "ffqaoa/coupling.hpp"

namespace ffqaoa {

// Coupling-pattern classes with distinct dynamical-group dimensions. A class
// restricts which Gaussian unitaries the alternating circuit can generate,
// which is what sets the critical depth.
enum class SymmetryClass { General, ReflectionSymmetric, TranslationInvariant };

const char* symmetry_name(SymmetryClass s);

// Counted over the real Lie algebra generated by the two gate generators:
//   dim_group  dimension of the reachable unitary group
//   dim_gauge  dimension of the vacuum stabilizer (gauge) subgroup
//   dim_flag   orbit dimension = dim_group - dim_gauge; always even
//   p_critical dim_flag / 2, the depth where angle count matches orbit size
struct DimensionReport {
  SymmetryClass symmetry = SymmetryClass::General;
  int n_sites = 0;
  int dim_group = 0;
  int dim_gauge = 0;
  int dim_flag = 0;
  int p_critical = 0;
};

// Closed-form counts. TranslationInvariant requires even N; the others any
// N >= 2 (General is the generic-coupling count and assumes nothing else).
DimensionReport count_dimensions(int n, SymmetryClass symmetry);
int predict_pcr(int n, SymmetryClass symmetry);

// Most specific class the coupling pattern belongs to.
SymmetryClass classify(const CouplingConfig& config);

// Numerical certificate: rank of the finite-difference Jacobian of the
// Thouless coordinate Z(theta) for a generic deep circuit (depth =
// 2 dim_flag) of a seeded random instance of the class. Passes when the rank
// equals dim_flag. Exact-arithmetic-free but independent of the counting.
struct DimensionCertificate {
  DimensionReport report;
  int depth_used = 0;
  double fd_step = 1e-5;
  std::vector<int> sample_ranks;  // one per random angle draw
  int jacobian_rank = 0;          // max over samples
  bool matches = false;
};

// Requires n <= 8 (the Jacobian has n(n-1) rows and 4 dim_flag columns).
DimensionCertificate certify_gaussian_dimension(int n, SymmetryClass symmetry,
                                                int samples = 3,
                                                std::uint64_t seed = 2024);

}

#endif
