#ifndef FFQAOA_RUNNER_HPP
#define FFQAOA_RUNNER_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffqaoa/experiment.hpp"

namespace ffqaoa {

std::uint64_t fnv1a64(const std::string& bytes);

struct ResultBundle {
  std::string task;
  std::string config_text;   // canonical config, the byte string the manifest hashes
  std::string summary_json;  // deterministic for fixed config + seed
  std::vector<std::pair<std::string, std::string>> files;  // name -> content
  bool all_passed = true;    // verify only: false when a check fails
};

// Dispatches on config.task and runs the full experiment in-process.
ResultBundle run_experiment(const ExperimentConfig& config);

// Creates out_dir, writes config.toml, summary.json, the data files and a
// manifest.json carrying the config hash and per-file hashes.
void write_bundle(const ResultBundle& bundle, const std::string& out_dir);

}

#endif
