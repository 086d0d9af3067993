#include "ffqaoa/experiment.hpp"

#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ffqaoa/errors.hpp"
#include "ffqaoa/models.hpp"

namespace ffqaoa {

CouplingConfig ModelSpec::build() const {
  if (kind == "frustrated") return frustrated_ring(n, jw, jw_prime, jf, h);
  if (kind == "disordered") {
    DisorderSpec d;
    d.interval_lo = disorder_lo;
    d.interval_hi = disorder_hi;
    d.symmetric = disorder_symmetric;
    d.seed = disorder_seed;
    return disordered_ring(n, jw, disorder_symmetric ? jw : jw_prime, jf, d, h);
  }
  if (kind == "uniform") return uniform_chain(n, h);
  if (kind == "explicit") {
    CouplingConfig c;
    c.n_sites = n;
    c.couplings = couplings;
    c.field_h = h;
    c.label = fmt::format("explicit-{}", n);
    c.validate();
    return c;
  }
  throw config_error(fmt::format("unknown model.kind '{}'", kind));
}

namespace {

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const char* want) {
  throw config_error(fmt::format("key '{}': cannot read '{}' as {}", key, value, want));
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) bad_value(key, v, "a real number");
  return out;
}

long long to_ll(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) bad_value(key, v, "an integer");
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  const long long x = to_ll(key, v);
  if (x < INT32_MIN || x > INT32_MAX) bad_value(key, v, "a 32-bit integer");
  return static_cast<int>(x);
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) bad_value(key, v, "an unsigned integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad_value(key, v, "a boolean");
}

const std::string& single(const std::string& key, const std::vector<std::string>& in) {
  if (in.size() != 1) {
    throw config_error(fmt::format("key '{}' expects one value, got {}", key, in.size()));
  }
  return in.front();
}

using Setter =
    std::function<void(ExperimentConfig&, const std::string&, const std::vector<std::string>&)>;

#define SCALAR(field, conv)                                                              \
  [](ExperimentConfig& c, const std::string& k, const std::vector<std::string>& in) {    \
    c.field = conv(k, single(k, in));                                                    \
  }

const std::map<std::string, Setter>& schema() {
  static const std::map<std::string, Setter> table = {
      {"task",
       [](ExperimentConfig& c, const std::string& k, const std::vector<std::string>& in) {
         c.task = single(k, in);
       }},
      {"model.kind",
       [](ExperimentConfig& c, const std::string& k, const std::vector<std::string>& in) {
         c.model.kind = single(k, in);
       }},
      {"model.n", SCALAR(model.n, to_int)},
      {"model.jw", SCALAR(model.jw, to_double)},
      {"model.jw_prime", SCALAR(model.jw_prime, to_double)},
      {"model.jf", SCALAR(model.jf, to_double)},
      {"model.h", SCALAR(model.h, to_double)},
      {"model.couplings",
       [](ExperimentConfig& c, const std::string& k, const std::vector<std::string>& in) {
         c.model.couplings.clear();
         for (const auto& v : in) c.model.couplings.push_back(to_double(k, v));
       }},
      {"model.disorder_lo", SCALAR(model.disorder_lo, to_double)},
      {"model.disorder_hi", SCALAR(model.disorder_hi, to_double)},
      {"model.disorder_symmetric", SCALAR(model.disorder_symmetric, to_bool)},
      {"model.disorder_seed", SCALAR(model.disorder_seed, to_u64)},
      {"schedule.s_target", SCALAR(s_target, to_double)},
      {"optimizer.n_samples", SCALAR(optimizer.n_samples, to_int)},
      {"optimizer.max_iterations", SCALAR(optimizer.max_iterations, to_int)},
      {"optimizer.gradient_tolerance", SCALAR(optimizer.gradient_tolerance, to_double)},
      {"optimizer.numerical_zero", SCALAR(optimizer.numerical_zero, to_double)},
      {"optimizer.history", SCALAR(optimizer.history, to_int)},
      {"optimizer.angle_lo", SCALAR(optimizer.angle_lo, to_double)},
      {"optimizer.angle_hi", SCALAR(optimizer.angle_hi, to_double)},
      {"optimizer.polish", SCALAR(optimizer.polish, to_bool)},
      {"optimizer.polish_max_iterations", SCALAR(optimizer.polish_max_iterations, to_int)},
      {"depth.value", SCALAR(depth.value, to_int)},
      {"depth.window_lo", SCALAR(depth.window_lo, to_int)},
      {"depth.window_hi", SCALAR(depth.window_hi, to_int)},
      {"scan.s_min", SCALAR(scan.s_min, to_double)},
      {"scan.s_max", SCALAR(scan.s_max, to_double)},
      {"scan.points", SCALAR(scan.points, to_int)},
      {"scan.refine", SCALAR(scan.refine, to_bool)},
      {"sweep.realizations", SCALAR(sweep.realizations, to_int)},
      {"sweep.symmetric", SCALAR(sweep.symmetric, to_bool)},
      {"sweep.interval_lo", SCALAR(sweep.interval_lo, to_double)},
      {"sweep.interval_hi", SCALAR(sweep.interval_hi, to_double)},
      {"run.seed", SCALAR(seed, to_u64)},
      {"run.threads", SCALAR(threads, to_int)},
      {"run.out",
       [](ExperimentConfig& c, const std::string& k, const std::vector<std::string>& in) {
         c.out_dir = single(k, in);
       }},
  };
  return table;
}

#undef SCALAR

void apply_item(ExperimentConfig& config, const std::string& key,
                const std::vector<std::string>& inputs) {
  const auto it = schema().find(key);
  if (it == schema().end()) {
    throw config_error(fmt::format("unknown config key '{}'", key));
  }
  it->second(config, key, inputs);
}

}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(fmt::format("cannot open config '{}'", path));
  return from_stream(in, path);
}

ExperimentConfig ExperimentConfig::from_stream(std::istream& in, const std::string& origin) {
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_config(in);
  } catch (const CLI::Error& e) {
    throw config_error(fmt::format("{}: {}", origin, e.what()));
  }
  ExperimentConfig config;
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    apply_item(config, item.fullname(), item.inputs);
  }
  config.validate();
  return config;
}

void ExperimentConfig::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw config_error(fmt::format("override '{}' is not key=value", assignment));
  }
  const std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  std::vector<std::string> inputs;
  std::size_t start = 0;
  for (;;) {
    const auto comma = value.find(',', start);
    inputs.push_back(value.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  apply_item(*this, key, inputs);
}

namespace {

std::string dtos(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

}

std::string ExperimentConfig::serialize() const {
  std::string s;
  s += fmt::format("task = \"{}\"\n\n", task);
  s += "[model]\n";
  s += fmt::format("kind = \"{}\"\n", model.kind);
  s += fmt::format("n = {}\n", model.n);
  s += fmt::format("jw = {}\n", dtos(model.jw));
  s += fmt::format("jw_prime = {}\n", dtos(model.jw_prime));
  s += fmt::format("jf = {}\n", dtos(model.jf));
  s += fmt::format("h = {}\n", dtos(model.h));
  if (!model.couplings.empty()) {
    s += "couplings = [";
    for (std::size_t i = 0; i < model.couplings.size(); ++i) {
      s += (i ? ", " : "") + dtos(model.couplings[i]);
    }
    s += "]\n";
  }
  s += fmt::format("disorder_lo = {}\n", dtos(model.disorder_lo));
  s += fmt::format("disorder_hi = {}\n", dtos(model.disorder_hi));
  s += fmt::format("disorder_symmetric = {}\n", model.disorder_symmetric);
  s += fmt::format("disorder_seed = {}\n\n", model.disorder_seed);
  s += "[schedule]\n";
  s += fmt::format("s_target = {}\n\n", dtos(s_target));
  s += "[optimizer]\n";
  s += fmt::format("n_samples = {}\n", optimizer.n_samples);
  s += fmt::format("max_iterations = {}\n", optimizer.max_iterations);
  s += fmt::format("gradient_tolerance = {}\n", dtos(optimizer.gradient_tolerance));
  s += fmt::format("numerical_zero = {}\n", dtos(optimizer.numerical_zero));
  s += fmt::format("history = {}\n", optimizer.history);
  s += fmt::format("angle_lo = {}\n", dtos(optimizer.angle_lo));
  s += fmt::format("angle_hi = {}\n", dtos(optimizer.angle_hi));
  s += fmt::format("polish = {}\n", optimizer.polish);
  s += fmt::format("polish_max_iterations = {}\n\n", optimizer.polish_max_iterations);
  s += "[depth]\n";
  s += fmt::format("value = {}\n", depth.value);
  s += fmt::format("window_lo = {}\n", depth.window_lo);
  s += fmt::format("window_hi = {}\n\n", depth.window_hi);
  s += "[scan]\n";
  s += fmt::format("s_min = {}\n", dtos(scan.s_min));
  s += fmt::format("s_max = {}\n", dtos(scan.s_max));
  s += fmt::format("points = {}\n", scan.points);
  s += fmt::format("refine = {}\n\n", scan.refine);
  s += "[sweep]\n";
  s += fmt::format("realizations = {}\n", sweep.realizations);
  s += fmt::format("symmetric = {}\n", sweep.symmetric);
  s += fmt::format("interval_lo = {}\n", dtos(sweep.interval_lo));
  s += fmt::format("interval_hi = {}\n\n", dtos(sweep.interval_hi));
  s += "[run]\n";
  s += fmt::format("seed = {}\n", seed);
  s += fmt::format("threads = {}\n", threads);
  if (!out_dir.empty()) s += fmt::format("out = \"{}\"\n", out_dir);
  return s;
}

void ExperimentConfig::validate() const {
  static const char* kTasks[] = {"predict",        "gap-scan",       "qaoa-opt",
                                 "critical-depth", "disorder-sweep", "verify"};
  bool known = false;
  for (const char* t : kTasks) known = known || task == t;
  if (!known) throw config_error(fmt::format("unknown task '{}'", task));
  if (!(s_target >= 0.0 && s_target <= 1.0)) {
    throw config_error(fmt::format("schedule.s_target = {} outside [0, 1]", s_target));
  }
  if (optimizer.n_samples < 1) throw config_error("optimizer.n_samples must be >= 1");
  if (optimizer.max_iterations < 1) throw config_error("optimizer.max_iterations must be >= 1");
  if (optimizer.history < 1) throw config_error("optimizer.history must be >= 1");
  if (!(optimizer.angle_lo < optimizer.angle_hi)) {
    throw config_error("optimizer angle window needs angle_lo < angle_hi");
  }
  if (optimizer.polish_max_iterations < 0) {
    throw config_error("optimizer.polish_max_iterations must be >= 0");
  }
  if (!(optimizer.gradient_tolerance > 0.0)) {
    throw config_error("optimizer.gradient_tolerance must be > 0");
  }
  if (!(optimizer.numerical_zero > 0.0)) {
    throw config_error("optimizer.numerical_zero must be > 0");
  }
  if (depth.value < 0) throw config_error("depth.value must be >= 0");
  if (scan.points < 1) throw config_error("scan.points must be >= 1");
  if (!(scan.s_min >= 0.0 && scan.s_max <= 1.0 && scan.s_min <= scan.s_max)) {
    throw config_error("scan range must satisfy 0 <= s_min <= s_max <= 1");
  }
  if (sweep.realizations < 1) throw config_error("sweep.realizations must be >= 1");
  if (!(sweep.interval_lo <= sweep.interval_hi)) {
    throw config_error("sweep.interval_lo must be <= sweep.interval_hi");
  }
  if (threads < 1) throw config_error("run.threads must be >= 1");
}

}
