#include "ffqaoa/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <fstream>

#include "ffqaoa/emit.hpp"
#include "ffqaoa/errors.hpp"
#include "ffqaoa/models.hpp"
#include "ffqaoa/rng.hpp"
#include "ffqaoa/theory.hpp"
#include "ffqaoa/verify.hpp"
#include "ffqaoa/version.hpp"
#include "json.hpp"

namespace ffqaoa {

using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

ordered_json model_json(const CouplingConfig& config) {
  ordered_json j;
  j["label"] = config.label;
  j["n"] = config.n_sites;
  j["h"] = config.field_h;
  j["couplings"] = config.couplings;
  return j;
}

ResultBundle run_predict(const ExperimentConfig& config) {
  const CouplingConfig model = config.model.build();
  const SymmetryClass cls = classify(model);
  const DimensionReport report = count_dimensions(model.n_sites, cls);

  ResultBundle bundle;
  ordered_json j;
  j["task"] = config.task;
  j["model"] = model_json(model);
  j["symmetry_class"] = symmetry_name(cls);
  j["dim_group"] = report.dim_group;
  j["dim_gauge"] = report.dim_gauge;
  j["dim_flag"] = report.dim_flag;
  j["p_critical"] = report.p_critical;
  bundle.summary_json = j.dump(2) + "\n";
  return bundle;
}

ResultBundle run_gap_scan(const ExperimentConfig& config) {
  const CouplingConfig model = config.model.build();
  std::vector<double> grid(config.scan.points);
  for (int i = 0; i < config.scan.points; ++i) {
    grid[i] = config.scan.points == 1
                  ? config.scan.s_min
                  : config.scan.s_min + (config.scan.s_max - config.scan.s_min) * i /
                                            (config.scan.points - 1);
  }
  const GapScanResult scan = gap_scan(model, grid, config.scan.refine);

  ResultBundle bundle;
  bundle.files.emplace_back("gap_curve.csv", emit_gap_curve(scan));
  ordered_json j;
  j["task"] = config.task;
  j["model"] = model_json(model);
  j["n_points"] = config.scan.points;
  j["grid_min_gap"] = scan.grid_min_gap;
  j["grid_argmin_s"] = scan.argmin_index >= 0 ? scan.points[scan.argmin_index].s : -1.0;
  j["refined_s"] = scan.refined_s;
  j["refined_gap"] = scan.refined_gap;
  bundle.summary_json = j.dump(2) + "\n";
  return bundle;
}

ResultBundle run_qaoa_opt(const ExperimentConfig& config) {
  const CouplingConfig model = config.model.build();
  const EvolutionCache cache = make_cache(model, config.s_target);
  const ResidualDistribution dist = residual_distribution(
      cache, config.depth.value, config.seed, config.optimizer, config.threads);

  ResultBundle bundle;
  bundle.files.emplace_back("runs.csv", emit_run_records(dist.records));
  bundle.files.emplace_back("residual_histogram.csv",
                            emit_residual_histogram(dist, config.optimizer.numerical_zero));
  ordered_json j;
  j["task"] = config.task;
  j["model"] = model_json(model);
  j["s_target"] = config.s_target;
  j["depth"] = config.depth.value;
  j["n_samples"] = config.optimizer.n_samples;
  j["n_success"] = dist.n_success;
  j["min_residual_per_site"] = dist.min_residual_per_site;
  j["best_index"] = dist.best_index;
  j["target_ground_energy"] = dist.target_ground_energy;
  bundle.summary_json = j.dump(2) + "\n";
  return bundle;
}

ResultBundle run_critical_depth(const ExperimentConfig& config) {
  const CouplingConfig model = config.model.build();
  const int predicted = predict_pcr(model.n_sites, classify(model));
  const int lo = config.depth.window_lo >= 0 ? config.depth.window_lo
                                             : std::max(1, predicted - 5);
  const int hi = config.depth.window_hi >= 0 ? config.depth.window_hi : predicted + 5;
  const CriticalDepthResult found = critical_depth_search(
      model, config.s_target, lo, hi, config.seed, config.optimizer, config.threads);

  ResultBundle bundle;
  bundle.files.emplace_back("depth_scan.csv", emit_depth_scan(found.scanned));
  ordered_json j;
  j["task"] = config.task;
  j["model"] = model_json(model);
  j["s_target"] = config.s_target;
  j["window_lo"] = lo;
  j["window_hi"] = hi;
  j["predicted_p_critical"] = predicted;
  j["critical_depth"] = found.critical_depth;  // -1: none found in window
  j["found"] = found.critical_depth >= 0;
  j["target_ground_energy"] = found.target_ground_energy;
  j["theta0_energy"] = found.theta0_energy;
  j["energy_window"] = found.theta0_energy - found.target_ground_energy;
  bundle.summary_json = j.dump(2) + "\n";
  return bundle;
}

ResultBundle run_disorder_sweep(const ExperimentConfig& config) {
  const SymmetryClass cls =
      config.sweep.symmetric ? SymmetryClass::ReflectionSymmetric : SymmetryClass::General;
  const int depth = config.depth.value > 0
                        ? config.depth.value
                        : predict_pcr(config.model.n, cls);

  std::string csv =
      "realization,disorder_seed,depth,n_success,min_residual_per_site,couplings\n";
  int n_all = 0;
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < config.sweep.realizations; ++r) {
    const std::uint64_t realization_seed = derive_seed(config.seed, r);
    DisorderSpec d;
    d.interval_lo = config.sweep.interval_lo;
    d.interval_hi = config.sweep.interval_hi;
    d.symmetric = config.sweep.symmetric;
    d.seed = realization_seed;
    const CouplingConfig model = disordered_ring(
        config.model.n, config.model.jw,
        config.sweep.symmetric ? config.model.jw : config.model.jw_prime, config.model.jf,
        d, config.model.h);
    const EvolutionCache cache = make_cache(model, config.s_target);
    const ResidualDistribution dist =
        residual_distribution(cache, depth, realization_seed, config.optimizer,
                              config.threads);
    if (dist.n_success > 0) ++n_all;

    std::string couplings;
    for (std::size_t i = 0; i < model.couplings.size(); ++i) {
      if (i) couplings += ';';
      couplings += format_double17(model.couplings[i]);
    }
    csv += fmt::format("{},{},{},{},{},{}\n", r, realization_seed, depth, dist.n_success,
                       format_double17(dist.min_residual_per_site), csv_field(couplings));
    ordered_json row;
    row["realization"] = r;
    row["disorder_seed"] = realization_seed;
    row["n_success"] = dist.n_success;
    row["min_residual_per_site"] = dist.min_residual_per_site;
    rows.push_back(row);
  }

  ResultBundle bundle;
  bundle.files.emplace_back("sweep.csv", std::move(csv));
  ordered_json j;
  j["task"] = config.task;
  j["n"] = config.model.n;
  j["symmetric"] = config.sweep.symmetric;
  j["depth"] = depth;
  j["realizations"] = config.sweep.realizations;
  j["n_succeeded"] = n_all;
  j["all_succeeded"] = n_all == config.sweep.realizations;
  j["results"] = rows;
  bundle.summary_json = j.dump(2) + "\n";
  return bundle;
}

ResultBundle run_verify(const ExperimentConfig& config) {
  const std::vector<CheckResult> checks = run_verification(config.seed);

  ResultBundle bundle;
  std::string csv = "check,n_cases,worst,tolerance,pass\n";
  ordered_json rows = ordered_json::array();
  int n_pass = 0;
  for (const CheckResult& c : checks) {
    csv += fmt::format("{},{},{},{},{}\n", csv_field(c.name), c.n_cases,
                       format_double17(c.worst), format_double17(c.tolerance),
                       c.pass ? "true" : "false");
    ordered_json row;
    row["check"] = c.name;
    row["n_cases"] = c.n_cases;
    row["worst"] = c.worst;
    row["tolerance"] = c.tolerance;
    row["pass"] = c.pass;
    row["detail"] = c.detail;
    rows.push_back(row);
    if (c.pass) ++n_pass;
    bundle.all_passed = bundle.all_passed && c.pass;
  }
  bundle.files.emplace_back("verify.csv", std::move(csv));
  ordered_json j;
  j["task"] = config.task;
  j["n_checks"] = static_cast<int>(checks.size());
  j["n_pass"] = n_pass;
  j["n_fail"] = static_cast<int>(checks.size()) - n_pass;
  j["checks"] = rows;
  bundle.summary_json = j.dump(2) + "\n";
  return bundle;
}

}

ResultBundle run_experiment(const ExperimentConfig& config) {
  config.validate();
  ResultBundle bundle;
  if (config.task == "predict") bundle = run_predict(config);
  else if (config.task == "gap-scan") bundle = run_gap_scan(config);
  else if (config.task == "qaoa-opt") bundle = run_qaoa_opt(config);
  else if (config.task == "critical-depth") bundle = run_critical_depth(config);
  else if (config.task == "disorder-sweep") bundle = run_disorder_sweep(config);
  else if (config.task == "verify") bundle = run_verify(config);
  else throw config_error(fmt::format("unknown task '{}'", config.task));
  bundle.task = config.task;
  bundle.config_text = config.serialize();
  return bundle;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(fmt::format("cannot open '{}' for writing", path.string()));
  out << content;
  if (!out) throw io_error(fmt::format("write failed for '{}'", path.string()));
}

}

void write_bundle(const ResultBundle& bundle, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw io_error(fmt::format("cannot create '{}': {}", out_dir, ec.message()));
  const fs::path root(out_dir);

  write_file(root / "config.toml", bundle.config_text);
  write_file(root / "summary.json", bundle.summary_json);
  for (const auto& [name, content] : bundle.files) write_file(root / name, content);

  ordered_json manifest;
  manifest["tool"] = "ffqaoa";
  manifest["version"] = version_string;
  manifest["task"] = bundle.task;
  const auto now = std::chrono::system_clock::now();
  manifest["created_utc"] =
      fmt::format("{:%FT%TZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(now)));
  manifest["config_file"] = "config.toml";
  manifest["config_hash_fnv1a64"] = fmt::format("{:016x}", fnv1a64(bundle.config_text));
  ordered_json files = ordered_json::array();
  {
    ordered_json f;
    f["name"] = "summary.json";
    f["bytes"] = bundle.summary_json.size();
    f["fnv1a64"] = fmt::format("{:016x}", fnv1a64(bundle.summary_json));
    files.push_back(f);
  }
  for (const auto& [name, content] : bundle.files) {
    ordered_json f;
    f["name"] = name;
    f["bytes"] = content.size();
    f["fnv1a64"] = fmt::format("{:016x}", fnv1a64(content));
    files.push_back(f);
  }
  manifest["files"] = files;
  write_file(root / "manifest.json", manifest.dump(2) + "\n");
}

}
