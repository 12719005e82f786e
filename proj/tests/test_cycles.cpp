#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pwlinf/cycles.hpp"
#include "pwlinf/flow.hpp"
#include "pwlinf/series.hpp"

using namespace pwlinf;
using namespace pwlinf::testing;
using Catch::Approx;

namespace {

SystemSpec reference_perturbed() {
    return make_spec(-0.125, 1638355.0 / 13106841.0, -260534.0 / 1045519.0, 1.0,
                     552751.0 / 556327.0);
}

}  // namespace

TEST_CASE("truncation roots of the model quartic") {
    SECTION("reference coefficients as printed") {
        // The printed coefficients are rounded to 9-10 digits; the nearly
        // tangent roots amplify that rounding to ~2e-10.
        const TruncationRoots roots = truncation_roots(
            {-4.43719886e-8, 3.993655760e-5, -1.15001344e-2, 1.054869499});
        REQUIRE(roots.roots.size() == 3);
        CHECK(roots.roots[0] == Approx(0.002467460261).margin(2.5e-10));
        CHECK(roots.roots[1] == Approx(0.003358360933).margin(2.5e-10));
        CHECK(roots.roots[2] == Approx(0.005076128658).margin(2.5e-10));
        for (const int m : roots.multiplicities) CHECK(m == 1);
    }
    SECTION("extended-precision coefficients recover the printed roots") {
        const std::array<double, 4> deltas = closed_form_deltas_extended(
            -0.125L, 1.0L, 1638355.0L / 13106841.0L, 552751.0L / 556327.0L,
            -260534.0L / 1045519.0L);
        const TruncationRoots roots = truncation_roots(deltas);
        REQUIRE(roots.roots.size() == 3);
        CHECK(roots.roots[0] == Approx(0.002467460261).margin(1e-11));
        CHECK(roots.roots[1] == Approx(0.003358360933).margin(1e-11));
        CHECK(roots.roots[2] == Approx(0.005076128658).margin(1e-11));
    }
    SECTION("pure quartic has no positive root") {
        CHECK(truncation_roots({0.0, 0.0, 0.0, 1.0}).roots.empty());
    }
    SECTION("u^4 - u") {
        const TruncationRoots roots = truncation_roots({-1.0, 0.0, 0.0, 1.0});
        REQUIRE(roots.roots.size() == 1);
        CHECK(roots.roots[0] == Approx(1.0).margin(1e-12));
    }
    SECTION("degenerate leading coefficient") {
        CHECK_THROWS_AS(truncation_roots({1.0, 1.0, 1.0, 0.0}), DegenerateLeading);
    }
}

TEST_CASE("the reference perturbed system carries three big cycles") {
    const SystemSpec spec = reference_perturbed();
    const CycleScan scan = find_cycles(spec, 0.01, 400);

    REQUIRE(scan.cycles.size() == 3);
    CHECK_FALSE(scan.period_annulus);

    const double printed_y[3] = {405.21567427, 297.91820638, 196.89979358};
    for (int i = 0; i < 3; ++i) {
        const LimitCycle& c = scan.cycles[static_cast<size_t>(i)];
        REQUIRE(c.y_top == Approx(printed_y[i]).epsilon(1e-6));
        REQUIRE(c.u0_root == Approx(1.0 / c.y_top).epsilon(1e-12));
        CHECK(std::abs(displacement_numeric(spec, c.u0_root)) <= 1e-12);
        CHECK(c.y_bottom < 0.0);
        CHECK(c.tau_L == Approx(std::numbers::pi).margin(0.05));
        CHECK(c.tau_R == Approx(std::numbers::pi).margin(0.05));
        CHECK(c.hyperbolic);
        CHECK(c.multiplier_proxy == Approx(1.0).margin(1e-6));

        const TracedOrbit orbit = trace_orbit(spec, {0.0, c.y_top}, 1, 64);
        REQUIRE(orbit.stop == TracedOrbit::Stop::Completed);
        REQUIRE(std::abs(orbit.samples.back().y - c.y_top) <= 1e-6 * c.y_top);
    }

    // Simple zeros interlace, so the slopes alternate.
    CHECK(scan.cycles[0].displacement_slope > 0.0);
    CHECK(scan.cycles[1].displacement_slope < 0.0);
    CHECK(scan.cycles[2].displacement_slope > 0.0);
    CHECK(*scan.cycles[0].stability == Stability::Stable);
    CHECK(*scan.cycles[1].stability == Stability::Unstable);
    CHECK(*scan.cycles[2].stability == Stability::Stable);
}

TEST_CASE("center families report a period annulus") {
    const SystemSpec center = make_spec(0.35, -0.35, 0.0, 0.6, -0.6);
    const CycleScan scan = find_cycles(center, 0.01, 100);
    CHECK(scan.period_annulus);
    CHECK(scan.cycles.empty());
}

TEST_CASE("single-signed displacement yields no cycles") {
    const SystemSpec spec = make_spec(0.5, 0.5, 0.0, 0.0, 0.0);
    const CycleScan scan = find_cycles(spec, 0.01, 100);
    CHECK(scan.cycles.empty());
    CHECK_FALSE(scan.period_annulus);
    CHECK(displacement_sign_changes(spec, 1e-8, 0.01, 1000) == 0);
}

TEST_CASE("root count matches a dense-scan oracle near the critical point") {
    std::mt19937_64 rng(909);
    const int grid = 400;
    for (int i = 0; i < 200; ++i) {
        const SystemSpec spec = make_spec(
            -0.125, 0.125 + uniform(rng, -2e-3, 2e-3), -0.25 + uniform(rng, -2e-3, 2e-3),
            1.0, 1.0 + uniform(rng, -2e-3, 2e-3));
        const CycleScan scan = find_cycles(spec, 0.01, grid);
        const int oracle = displacement_sign_changes(spec, 1e-6 * 0.01, scan.u0_max_effective,
                                                     10 * grid);
        REQUIRE(static_cast<int>(scan.cycles.size()) == oracle);
    }
}

TEST_CASE("scan range shrinks when crossing orbits disappear") {
    // With u0_max far beyond the crossing regime the effective range shrinks;
    // an entirely unusable range raises EmptyRange.
    const SystemSpec spec = make_spec(-0.125, 0.125, -0.25, 1.0, 1.0);
    const CycleScan scan = find_cycles(spec, 1.0, 64);
    CHECK(scan.u0_max_effective < 1.0);
    CHECK_THROWS_AS(find_cycles(spec, 1e9, 16), EmptyRange);
    CHECK_THROWS_AS(find_cycles(spec, -1.0, 64), Error);
    CHECK_THROWS_AS(find_cycles(spec, 0.01, 4), Error);
}
