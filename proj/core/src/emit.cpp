#include "ffqaoa/emit.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>

#include "ffqaoa/errors.hpp"

namespace ffqaoa {

std::string format_double(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string format_double17(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, p);
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
  std::string out = "\"";
  for (const char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

const char* sector_name(FermionParity p) {
  return p == FermionParity::Even ? "even" : "odd";
}

}

std::string emit_gap_curve(const GapScanResult& scan) {
  std::string out = "s,gap,sector_of_E0,sector_of_E1\n";
  for (const GapPoint& pt : scan.points) {
    out += fmt::format("{},{},{},{}\n", format_double17(pt.s), format_double17(pt.gap),
                       sector_name(pt.sector_e0), sector_name(pt.sector_e1));
  }
  return out;
}

std::string emit_residual_histogram(const ResidualDistribution& dist, double zero_threshold,
                                    int lo_exp, int hi_exp) {
  if (lo_exp >= hi_exp) throw config_error("histogram needs lo_exp < hi_exp");
  const int n_bins = hi_exp - lo_exp;
  std::vector<long> counts(n_bins, 0);
  long zeros = 0;
  for (const RunRecord& r : dist.records) {
    if (r.residual_energy_per_site <= zero_threshold) {
      ++zeros;
      continue;
    }
    const double lg = std::log10(r.residual_energy_per_site);
    int bin = static_cast<int>(std::floor(lg)) - lo_exp;
    if (bin < 0) bin = 0;
    if (bin >= n_bins) bin = n_bins - 1;
    ++counts[bin];
  }
  std::string out = "bin_lo,bin_hi,count\n";
  out += fmt::format("0,{},{}\n", format_double17(zero_threshold), zeros);
  for (int b = 0; b < n_bins; ++b) {
    out += fmt::format("{},{},{}\n", format_double17(std::pow(10.0, lo_exp + b)),
                       format_double17(std::pow(10.0, lo_exp + b + 1)), counts[b]);
  }
  return out;
}

std::string emit_run_records(const std::vector<RunRecord>& records) {
  std::string out =
      "index,seed,depth,s_target,final_energy,residual_per_site,iterations,converged,"
      "final_angles\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const RunRecord& r = records[i];
    std::string angles;
    for (int j = 0; j < r.final_angles.size(); ++j) {
      if (j) angles += ';';
      angles += format_double17(r.final_angles(j));
    }
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", i, r.seed, r.depth,
                       format_double17(r.s_target), format_double17(r.final_energy),
                       format_double17(r.residual_energy_per_site), r.iterations,
                       r.converged ? "true" : "false", csv_field(angles));
  }
  return out;
}

std::string emit_depth_scan(const std::vector<DepthSummary>& scanned) {
  std::string out = "depth,n_success,min_residual_per_site\n";
  for (const DepthSummary& d : scanned) {
    out += fmt::format("{},{},{}\n", d.depth, d.n_success,
                       format_double17(d.min_residual_per_site));
  }
  return out;
}

}
