#include <cstdint>
#include <fmt/format.h>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ffqaoa/errors.hpp"
#include "ffqaoa/experiment.hpp"
#include "ffqaoa/runner.hpp"
#include "ffqaoa/version.hpp"

namespace {

struct CliArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int threads = 0;
  std::vector<std::string> overrides;
};

int run_task(const std::string& task, const CliArgs& args, bool have_seed, bool have_threads) {
  ffqaoa::ExperimentConfig config;
  if (!args.config_path.empty()) {
    config = ffqaoa::ExperimentConfig::from_file(args.config_path);
  }
  config.task = task;
  for (const std::string& o : args.overrides) config.apply_override(o);
  if (have_seed) config.seed = args.seed;
  if (have_threads) config.threads = args.threads;
  if (!args.out_dir.empty()) config.out_dir = args.out_dir;
  config.validate();

  const ffqaoa::ResultBundle bundle = ffqaoa::run_experiment(config);
  fmt::print("{}", bundle.summary_json);
  if (!config.out_dir.empty()) {
    ffqaoa::write_bundle(bundle, config.out_dir);
    fmt::print(stderr, "results written to {}\n", config.out_dir);
  }
  if (task == "verify" && !bundle.all_passed) return 2;
  return 0;
}

}

int main(int argc, char** argv) {
  CLI::App app{"free-fermion QAOA laboratory for transverse-field Ising rings"};
  app.set_version_flag("--version", ffqaoa::version_string);
  app.require_subcommand(1);

  CliArgs args;
  const std::pair<const char*, const char*> tasks[] = {
      {"predict", "dimension counts and critical-depth prediction for a model"},
      {"gap-scan", "many-body gap along the annealing path, with refinement"},
      {"qaoa-opt", "multistart optimization at fixed depth; residual distribution"},
      {"critical-depth", "ascending depth scan for the first successful depth"},
      {"disorder-sweep", "seeded disorder ensemble at a fixed depth"},
      {"verify", "cross-implementation equivalence suite"},
  };
  for (const auto& [name, help] : tasks) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", args.config_path, "experiment config file");
    sub->add_option("--out", args.out_dir, "output directory (manifest + CSVs)");
    sub->add_option("--seed", args.seed, "master seed (overrides config)");
    sub->add_option("--threads", args.threads, "worker threads (overrides config)");
    sub->add_option("--override", args.overrides, "config override key=value")
        ->take_all();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    return run_task(active->get_name(), args, active->count("--seed") > 0,
                    active->count("--threads") > 0);
  } catch (const ffqaoa::config_error& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return 1;
  } catch (const ffqaoa::io_error& e) {
    fmt::print(stderr, "io error: {}\n", e.what());
    return 3;
  } catch (const ffqaoa::numerical_error& e) {
    fmt::print(stderr, "numerical fault: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
}
