#ifndef FFQAOA_EXPERIMENT_HPP
#define FFQAOA_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ffqaoa/coupling.hpp"
#include "ffqaoa/optimizer.hpp"

namespace ffqaoa {

// Model block of a config file. kind selects the generator:
//   frustrated  odd-N ring, weak bonds jw / jw_prime, boundary -jf
//   disordered  frustrated ring with seeded random bulk bonds
//   uniform     all couplings 1
//   explicit    couplings listed verbatim
struct ModelSpec {
  std::string kind = "frustrated";
  int n = 13;
  double jw = 0.5;
  double jw_prime = 0.55;
  double jf = 0.45;
  double h = 1.0;
  std::vector<double> couplings;  // kind = explicit
  double disorder_lo = 0.8;       // kind = disordered
  double disorder_hi = 1.0;
  bool disorder_symmetric = false;
  std::uint64_t disorder_seed = 1;

  CouplingConfig build() const;
};

struct ScanSpec {
  double s_min = 0.0;
  double s_max = 1.0;
  int points = 101;
  bool refine = true;
};

struct DepthSpec {
  int value = 1;       // qaoa-opt / disorder-sweep (0 in sweep = class prediction)
  int window_lo = -1;  // critical-depth; -1 = predicted p_critical - 5
  int window_hi = -1;  // -1 = predicted p_critical + 5
};

struct SweepSpec {
  int realizations = 10;
  bool symmetric = false;
  double interval_lo = 0.8;
  double interval_hi = 1.0;
};

// Full experiment description; one file drives one CLI invocation. Parsing
// is schema-checked: unknown keys are errors, every value is typed.
struct ExperimentConfig {
  std::string task = "predict";
  ModelSpec model;
  double s_target = 1.0;
  OptimizerSettings optimizer;
  DepthSpec depth;
  ScanSpec scan;
  SweepSpec sweep;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_dir;  // empty: summary to stdout only

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_stream(std::istream& in, const std::string& origin);

  // "section.key=value" (values with commas become lists).
  void apply_override(const std::string& assignment);

  // Canonical file form; parse(serialize()) == *this field for field.
  std::string serialize() const;

  void validate() const;
};

}

#endif
