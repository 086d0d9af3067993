// Acceptance gate. Every headline claim gets one pass/fail line, evaluated
// at the tolerances pinned below. Exit 0 only when every selected criterion
// holds. Run a subset with --criterion N (repeatable); --list prints the
// catalogue.
//
// The optimization protocol is identical everywhere: 100 restarts per depth,
// seeded derive_seed(123, k), L-BFGS warmup capped at 700 iterations, then
// Levenberg-Marquardt on the quasiparticle residual capped at 400. Success
// means residual energy per site at or below 1e-12. Depth claims are
// established on the pair window [P-1, P]: the sub-critical depth must go
// 0/100 while P itself produces at least one exact hit. Together with the
// zero-padding embedding (any depth-P circuit is a depth-P+1 circuit with a
// null layer) this pins the transition to exactly P.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fmt/format.h>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ffqaoa/evolution.hpp"
#include "ffqaoa/models.hpp"
#include "ffqaoa/nambu.hpp"
#include "ffqaoa/optimizer.hpp"
#include "ffqaoa/precise.hpp"
#include "ffqaoa/rng.hpp"
#include "ffqaoa/theory.hpp"
#include "ffqaoa/verify.hpp"

using namespace ffqaoa;

namespace {

constexpr std::uint64_t kOptimizerSeed = 123;  // restart master seed, all scans
constexpr std::uint64_t kDisorderSeed = 777;   // disorder realization master
constexpr std::uint64_t kVerifySeed = 2024;    // cross-implementation suite
constexpr double kZeroPerSite = 1e-12;         // exact-reach threshold
constexpr double kBottleneckS = 0.8544;        // reference bottleneck location
constexpr double kBottleneckTol = 1e-3;
constexpr double kFitR2Min = 0.98;             // clean-ring exponential fit

OptimizerSettings protocol() {
    OptimizerSettings s;
    s.n_samples = 100;
    s.max_iterations = 700;
    s.polish_max_iterations = 400;
    s.numerical_zero = kZeroPerSite;
    return s;
}

struct Lines {
    std::vector<std::string> detail;
    void add(std::string line) { detail.push_back(std::move(line)); }
};

// ---- shared pair-window scans, memoized across criteria ----

struct PairOutcome {
    bool pass = false;
    CriticalDepthResult result;
    std::string summary;
};

std::map<std::string, PairOutcome> g_pairs;

const PairOutcome& pair_scan(const std::string& key, const CouplingConfig& config,
                             double s_target, int expected_pcr) {
    auto it = g_pairs.find(key);
    if (it != g_pairs.end()) return it->second;

    PairOutcome out;
    out.result = critical_depth_search(config, s_target, expected_pcr - 1, expected_pcr,
                                       kOptimizerSeed, protocol(), 1);
    const auto& scanned = out.result.scanned;
    const bool fail_clean = !scanned.empty() && scanned[0].depth == expected_pcr - 1
                            && scanned[0].n_success == 0;
    const bool hit = scanned.size() == 2 && scanned[1].depth == expected_pcr
                     && scanned[1].n_success >= 1;
    out.pass = fail_clean && hit && out.result.critical_depth == expected_pcr;
    if (scanned.size() == 2) {
        out.summary = fmt::format(
            "depth {}: 0/100 (floor {:.2e}/site), depth {}: exact hit (residual {:.2e}/site)",
            scanned[0].depth, scanned[0].min_residual_per_site, scanned[1].depth,
            scanned[1].min_residual_per_site);
    } else {
        out.summary = fmt::format("scan shape unexpected: {} depths, critical {}",
                                  scanned.size(), out.result.critical_depth);
    }
    return g_pairs.emplace(key, std::move(out)).first->second;
}

// ---- verification suite, run once ----

const std::vector<CheckResult>& verification() {
    static const std::vector<CheckResult> results = run_verification(kVerifySeed);
    return results;
}

const CheckResult* find_check(const std::string& name) {
    for (const auto& check : verification()) {
        if (check.name == name) return &check;
    }
    return nullptr;
}

bool check_against(Lines& lines, const std::string& name, int want_cases, double want_tol) {
    const CheckResult* check = find_check(name);
    if (check == nullptr) {
        lines.add(fmt::format("{}: missing from the verification suite", name));
        return false;
    }
    const bool ok = check->pass && check->n_cases == want_cases
                    && check->tolerance == want_tol && check->worst <= want_tol;
    lines.add(fmt::format("{}: {} cases, worst {:.2e} vs tolerance {:.0e} -> {}", name,
                          check->n_cases, check->worst, check->tolerance,
                          ok ? "ok" : "FAIL"));
    return ok;
}

// ---- least-squares fit for the gap-scaling criterion ----

struct Fit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

Fit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    Fit fit;
    const double vx = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / vx;
    fit.intercept = (sy - fit.slope * sx) / n;
    const double vy = n * syy - sy * sy;
    fit.r2 = vy > 0 ? (n * sxy - sx * sy) * (n * sxy - sx * sy) / (vx * vy) : 1.0;
    return fit;
}

CouplingConfig clean_ring(int n, bool symmetric) {
    return frustrated_ring(n, 0.5, symmetric ? 0.5 : 0.55, 0.45);
}

CouplingConfig disordered(int n, bool symmetric, std::uint64_t realization_seed) {
    DisorderSpec spec;
    spec.seed = realization_seed;
    spec.symmetric = symmetric;
    return disordered_ring(n, 0.5, symmetric ? 0.5 : 0.55, 0.45, spec);
}

// ---- criteria ----

bool c1_broken_ring_depth(Lines& lines) {
    const auto& pair = pair_scan("broken-13-s1", clean_ring(13, false), 1.0, 78);
    lines.add(pair.summary);
    lines.add(fmt::format("predicted N(N-1)/2 = {}", predict_pcr(13, SymmetryClass::General)));
    return pair.pass && predict_pcr(13, SymmetryClass::General) == 78;
}

bool c2_symmetric_rings(Lines& lines) {
    struct Row { int n; int pcr; };
    bool ok = true;
    for (Row row : {Row{5, 6}, Row{7, 12}, Row{13, 42}}) {
        const auto& pair = pair_scan(fmt::format("symmetric-{}-s1", row.n),
                                     clean_ring(row.n, true), 1.0, row.pcr);
        lines.add(fmt::format("N={}: {}", row.n, pair.summary));
        const bool formula = predict_pcr(row.n, SymmetryClass::ReflectionSymmetric) == row.pcr;
        ok = ok && pair.pass && formula;
    }
    return ok;
}

bool c3_broken_series(Lines& lines) {
    struct Row { int n; int pcr; };
    bool ok = true;
    for (Row row : {Row{5, 10}, Row{7, 21}, Row{9, 36}, Row{11, 55}, Row{13, 78}}) {
        const auto& pair = pair_scan(fmt::format("broken-{}-s1", row.n),
                                     clean_ring(row.n, false), 1.0, row.pcr);
        lines.add(fmt::format("N={}: {}", row.n, pair.summary));
        const bool formula = row.pcr == row.n * (row.n - 1) / 2;
        ok = ok && pair.pass && formula;
    }
    return ok;
}

bool c4_target_independence(Lines& lines) {
    const auto& mid = pair_scan("broken-13-s04", clean_ring(13, false), 0.4, 78);
    lines.add(fmt::format("s_target = 0.4: {}", mid.summary));
    const auto& end = pair_scan("broken-13-s1", clean_ring(13, false), 1.0, 78);
    lines.add(fmt::format("s_target = 1.0: {}", end.summary));
    const bool same = mid.result.critical_depth == end.result.critical_depth;
    lines.add(fmt::format("critical depth {} at both targets -> {}",
                          mid.result.critical_depth, same ? "ok" : "FAIL"));
    return mid.pass && end.pass && same;
}

bool c5_disorder_robustness(Lines& lines) {
    bool ok = true;
    for (int variant = 0; variant < 2; ++variant) {
        const bool symmetric = variant == 1;
        const int pcr = symmetric ? 42 : 78;
        int found = 0;
        for (int r = 0; r < 10; ++r) {
            const std::uint64_t seed = derive_seed(kDisorderSeed, symmetric ? 10 + r : r);
            const auto& pair = pair_scan(
                fmt::format("disorder-{}-{}", symmetric ? "sym" : "gen", r),
                disordered(13, symmetric, seed), 1.0, pcr);
            if (pair.pass) {
                ++found;
            } else {
                lines.add(fmt::format("{} realization {} (seed {:#x}): {}",
                                      symmetric ? "symmetric" : "generic", r, seed,
                                      pair.summary));
                ok = false;
            }
        }
        lines.add(fmt::format("{} bonds: {}/10 realizations at P = {}",
                              symmetric ? "symmetric" : "generic", found, pcr));
    }
    return ok;
}

bool c6_bottleneck_location(Lines& lines) {
    auto config = clean_ring(101, false);
    std::vector<double> grid(101);
    for (int i = 0; i < 101; ++i) grid[i] = i / 100.0;
    const auto scan = gap_scan(config, grid, true);
    const double miss = std::abs(scan.refined_s - kBottleneckS);
    lines.add(fmt::format("N=101 refined bottleneck s* = {:.9f}, gap {:.3e}", scan.refined_s,
                          scan.refined_gap));
    lines.add(fmt::format("|s* - {}| = {:.2e} vs tolerance {:.0e}", kBottleneckS, miss,
                          kBottleneckTol));
    return miss <= kBottleneckTol && scan.refined_gap >= 0 && scan.refined_gap <= 1e-30;
}

bool c7_exponential_closing(Lines& lines) {
    bool ok = true;

    // Clean rings: ten sizes, strict exponential fit.
    for (int variant = 0; variant < 2; ++variant) {
        const bool symmetric = variant == 1;
        std::vector<double> sizes, logs;
        for (int n = 11; n <= 101; n += 10) {
            auto config = clean_ring(n, symmetric);
            const auto point = locate_bottleneck(config, dynamics_parity(config), 0.5, 0.999);
            if (!(point.gap > 0)) {
                lines.add(fmt::format("N={} {}: non-positive bottleneck gap {}", n,
                                      symmetric ? "symmetric" : "generic", point.gap));
                ok = false;
                continue;
            }
            sizes.push_back(n);
            logs.push_back(std::log10(point.gap));
        }
        const Fit fit = linear_fit(sizes, logs);
        const bool good = fit.slope < 0 && fit.r2 >= kFitR2Min && sizes.size() == 10;
        lines.add(fmt::format("clean {}: log10 gap = {:.4f} N + {:.2f}, R^2 = {:.5f} -> {}",
                              symmetric ? "symmetric" : "generic", fit.slope, fit.intercept,
                              fit.r2, good ? "ok" : "FAIL"));
        ok = ok && good;
    }

    // Disordered rings: five realizations each, the mean slope must stay
    // firmly negative (individual curves wiggle with the realization).
    for (int variant = 0; variant < 2; ++variant) {
        const bool symmetric = variant == 1;
        double slope_sum = 0.0;
        int n_realizations = 0;
        for (int r = 0; r < 5; ++r) {
            const std::uint64_t seed = derive_seed(kDisorderSeed, 100 + 10 * variant + r);
            std::vector<double> sizes, logs;
            for (int n : {11, 21, 31, 41, 51}) {
                auto config = disordered(n, symmetric, seed);
                const auto point =
                    locate_bottleneck(config, dynamics_parity(config), 0.5, 0.999);
                if (point.gap > 0) {
                    sizes.push_back(n);
                    logs.push_back(std::log10(point.gap));
                }
            }
            if (sizes.size() < 4) {
                lines.add(fmt::format("disordered {} realization {}: only {} usable sizes",
                                      symmetric ? "symmetric" : "generic", r, sizes.size()));
                ok = false;
                continue;
            }
            slope_sum += linear_fit(sizes, logs).slope;
            ++n_realizations;
        }
        const double mean_slope = n_realizations > 0 ? slope_sum / n_realizations : 0.0;
        const bool good = n_realizations == 5 && mean_slope < 0;
        lines.add(fmt::format("disordered {}: mean log10 slope {:.4f} over {} realizations -> {}",
                              symmetric ? "symmetric" : "generic", mean_slope, n_realizations,
                              good ? "ok" : "FAIL"));
        ok = ok && good;
    }
    return ok;
}

bool c8_dense_oracle(Lines& lines) {
    const bool energies = check_against(lines, "nambu_vs_ed_energy", 20, 1e-9);
    const bool gaps = check_against(lines, "gap_vs_ed", 50, 1e-9);
    return energies && gaps;
}

bool c9_gradient(Lines& lines) { return check_against(lines, "gradient_vs_fd", 10, 1e-6); }

bool c10_gauge(Lines& lines) { return check_against(lines, "gauge_invariance", 100, 1e-10); }

bool c11_structure(Lines& lines) {
    const bool reflection = check_against(lines, "reflection_symmetry", 6, 1e-10);
    const bool thouless = check_against(lines, "thouless_structure", 6, 1e-10);
    const CheckResult* ranks = find_check("rank_certificate");
    bool certificates = ranks != nullptr && ranks->pass && ranks->n_cases == 8;
    lines.add(fmt::format("rank_certificate: {} cases -> {}",
                          ranks != nullptr ? ranks->n_cases : 0,
                          certificates ? "ok" : "FAIL"));
    return reflection && thouless && certificates;
}

bool c12_momentum(Lines& lines) {
    bool ok = check_against(lines, "momentum_equivalence", 6, 1e-10);
    for (int n : {4, 6, 8}) {
        const auto& pair = pair_scan(fmt::format("uniform-{}-s1", n), uniform_chain(n, 1.0),
                                     1.0, n / 2);
        lines.add(fmt::format("uniform N={}: {}", n, pair.summary));
        const bool formula = predict_pcr(n, SymmetryClass::TranslationInvariant) == n / 2;
        ok = ok && pair.pass && formula;
    }
    return ok;
}

struct Criterion {
    int id;
    const char* title;
    bool (*run)(Lines&);
};

const Criterion kCriteria[] = {
    {1, "generic N=13 ring reaches the target exactly at P = 78, not 77", c1_broken_ring_depth},
    {2, "reflection-symmetric rings: P_cr = (N^2-1)/4 for N = 5, 7, 13", c2_symmetric_rings},
    {3, "generic rings follow P_cr = N(N-1)/2 for N = 5..13", c3_broken_series},
    {4, "critical depth is independent of the target coupling s", c4_target_independence},
    {5, "disorder keeps P_cr at the class prediction (10+10 realizations)",
     c5_disorder_robustness},
    {6, "N=101 gap scan localizes the bottleneck at s = 0.8544 +- 1e-3",
     c6_bottleneck_location},
    {7, "bottleneck gap closes exponentially in N (clean fit + disorder means)",
     c7_exponential_closing},
    {8, "quadratic-fermion energies match the dense 2^N oracle", c8_dense_oracle},
    {9, "analytic gradient matches finite differences", c9_gradient},
    {10, "energies are invariant under vacuum gauge transformations", c10_gauge},
    {11, "symmetry algebra, Thouless structure, and dimension certificates hold",
     c11_structure},
    {12, "momentum blocks agree and uniform rings reach the target at P = N/2",
     c12_momentum},
};

} // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--list") {
            for (const auto& c : kCriteria) fmt::print("C{:<2} {}\n", c.id, c.title);
            return 0;
        }
        if (arg == "--criterion" && i + 1 < argc) {
            selected.insert(std::atoi(argv[++i]));
            continue;
        }
        fmt::print(stderr, "usage: {} [--list] [--criterion N]...\n", argv[0]);
        return 2;
    }

    fmt::print("acceptance gate: {} criteria\n", std::size(kCriteria));
    fmt::print("protocol: 100 restarts/depth, L-BFGS(700) + LM(400), zero = {:.0e}/site, "
               "seeds {}/{}\n\n",
               kZeroPerSite, kOptimizerSeed, kDisorderSeed);

    int failures = 0;
    int ran = 0;
    for (const auto& criterion : kCriteria) {
        if (!selected.empty() && selected.count(criterion.id) == 0) continue;
        ++ran;
        Lines lines;
        const auto start = std::chrono::steady_clock::now();
        bool pass = false;
        std::string error;
        try {
            pass = criterion.run(lines);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        fmt::print("[{}] C{:<2} {}  ({:.1f}s)\n", pass ? "PASS" : "FAIL", criterion.id,
                   criterion.title, seconds);
        for (const auto& line : lines.detail) fmt::print("       {}\n", line);
        if (!error.empty()) fmt::print("       exception: {}\n", error);
        if (!pass) ++failures;
    }

    fmt::print("\n{}/{} criteria passed\n", ran - failures, ran);
    return failures == 0 ? 0 : 1;
}
