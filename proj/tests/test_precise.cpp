#include <doctest.h>

#include <cmath>

#include "ffqaoa/ed.hpp"
#include "ffqaoa/errors.hpp"
#include "ffqaoa/models.hpp"
#include "ffqaoa/nambu.hpp"
#include "ffqaoa/precise.hpp"

using namespace ffqaoa;
using doctest::Approx;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace

TEST_CASE("epsilon pair matches the double eigensolver where it resolves") {
    for (const auto& config :
         {frustrated_ring(9, 0.5, 0.55, 0.45), uniform_chain(8, 0.8)}) {
        for (double s : {0.0, 0.3, 0.6, 1.0}) {
            for (auto parity : {FermionParity::Even, FermionParity::Odd}) {
                auto spec = diagonalize(build_h(config, s, parity), parity);
                auto [e1, e2] = precise_epsilon_pair(config, s, parity);
                CHECK(e1 == Approx(spec.epsilons(0)).epsilon(1e-10));
                CHECK(e2 == Approx(spec.epsilons(1)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("sector gap agrees with double and dense references") {
    auto config = frustrated_ring(9, 0.5, 0.55, 0.45);
    for (double s : {0.2, 0.5, 0.85}) {
        for (auto parity : {FermionParity::Even, FermionParity::Odd}) {
            double fine = precise_sector_gap(config, s, parity);
            CHECK(rel(fine, sector_gap(config, s, parity)) < 1e-8);
            auto levels = dense_sector_levels(config, s, parity);
            CHECK(fine == Approx(levels.e1 - levels.e0).epsilon(1e-8));
        }
    }
}

TEST_CASE("input validation") {
    auto config = frustrated_ring(9, 0.5, 0.55, 0.45);
    CHECK_THROWS_AS(precise_sector_gap(config, -0.5, FermionParity::Even), config_error);
    CHECK_THROWS_AS(precise_sector_gap(config, 1.5, FermionParity::Even), config_error);
    CHECK_THROWS_AS(precise_epsilon_pair(config, 2.0, FermionParity::Even), config_error);
}

TEST_CASE("degenerate bracket collapses to a point evaluation") {
    auto config = frustrated_ring(11, 0.5, 0.55, 0.45);
    auto point = locate_bottleneck(config, FermionParity::Even, 0.5, 0.5);
    CHECK(point.s == 0.5);
    CHECK(rel(point.gap, precise_sector_gap(config, 0.5, FermionParity::Even)) < 1e-12);
}

TEST_CASE("bottleneck ladder, broken reflection symmetry") {
    // jw != jw' splits the avoided crossing polynomially slower than the
    // symmetric ring, but it still closes exponentially in N. Values frozen
    // from this implementation; they sit far below double resolution from
    // N = 31 on, which is the point of the software-float path.
    struct Row { int n; double s; double gap; };
    const Row rows[] = {
        {11, 0.85444045297534521, 8.3183838661335743e-4},
        {21, 0.85439325794337107, 3.5446929959592788e-7},
        {31, 0.85439325792600018, 1.5091638518818618e-10},
    };
    double previous = 1.0;
    for (const auto& row : rows) {
        auto config = frustrated_ring(row.n, 0.5, 0.55, 0.45);
        auto point = locate_bottleneck(config, FermionParity::Even, 0.5, 0.999);
        CHECK(point.s == Approx(row.s).epsilon(1e-10));
        CHECK(rel(point.gap, row.gap) < 1e-9);
        CHECK(point.gap < previous);
        previous = point.gap;
    }
    // Past the double floor: only the magnitude is pinned here.
    auto deep = locate_bottleneck(frustrated_ring(41, 0.5, 0.55, 0.45), FermionParity::Even,
                                  0.5, 0.999);
    CHECK(rel(deep.gap, 6.4253111141931834e-14) < 1e-9);
    CHECK(deep.gap < previous);
}

TEST_CASE("bottleneck ladder, symmetric ring closes faster") {
    struct Row { int n; double s; double gap; };
    const Row rows[] = {
        {11, 0.89872163261696647, 1.1549278676642244e-4},
        {21, 0.89872068230277768, 6.3777110555146674e-9},
        {31, 0.89872068230277191, 3.5217944261482840e-13},
    };
    for (const auto& row : rows) {
        auto config = frustrated_ring(row.n, 0.5, 0.5, 0.45);
        auto point = locate_bottleneck(config, FermionParity::Even, 0.5, 0.999);
        CHECK(point.s == Approx(row.s).epsilon(1e-10));
        CHECK(rel(point.gap, row.gap) < 1e-9);
    }
    // Same sizes close orders of magnitude tighter than the broken ring.
    CHECK(6.3777110555146674e-9 < 3.5446929959592788e-7);
}

TEST_CASE("bottleneck agrees with the double scan where both resolve") {
    auto config = frustrated_ring(11, 0.5, 0.55, 0.45);
    auto point = locate_bottleneck(config, FermionParity::Even, 0.7, 0.95);
    double at_min = sector_gap(config, point.s, FermionParity::Even);
    CHECK(rel(at_min, point.gap) < 1e-6);
    // Nearby points sit higher: it is a genuine interior minimum.
    CHECK(sector_gap(config, point.s - 0.01, FermionParity::Even) > point.gap);
    CHECK(sector_gap(config, point.s + 0.01, FermionParity::Even) > point.gap);
}
