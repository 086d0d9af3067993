#ifndef FFQAOA_EMIT_HPP
#define FFQAOA_EMIT_HPP

#include <string>
#include <vector>

#include "ffqaoa/nambu.hpp"
#include "ffqaoa/optimizer.hpp"

namespace ffqaoa {

// Locale-free formatting: shortest exact round-trip.
std::string format_double(double v);
// Fixed 17 significant digits (the CSV energy contract).
std::string format_double17(double v);

// RFC-4180 quoting when the field contains comma, quote, or newline.
std::string csv_field(const std::string& raw);

// Columns: s, gap, sector_of_E0, sector_of_E1. Sectors as "even"/"odd".
std::string emit_gap_curve(const GapScanResult& scan);

// Columns: bin_lo, bin_hi, count. First row is the numerical-zero row
// [0, zero_threshold]; the remaining rows are decade bins 10^lo..10^hi for
// residuals above the threshold (log10 clamped into [lo_exp, hi_exp]).
std::string emit_residual_histogram(const ResidualDistribution& dist, double zero_threshold,
                                    int lo_exp = -14, int hi_exp = 0);

// One row per restart: index, seed, depth, s_target, final_energy,
// residual_per_site, iterations, converged, then the final angles as a
// single quoted semicolon-separated field.
std::string emit_run_records(const std::vector<RunRecord>& records);

// Columns: depth, n_success, min_residual_per_site.
std::string emit_depth_scan(const std::vector<DepthSummary>& scanned);

}

#endif
