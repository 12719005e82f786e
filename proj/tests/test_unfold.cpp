#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pwlinf/cycles.hpp"
#include "pwlinf/series.hpp"
#include "pwlinf/unfold.hpp"

using namespace pwlinf;
using namespace pwlinf::testing;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("order-3 unfolding") {
    SECTION("the zero target is the critical point itself") {
        const UnfoldingResult r = order3_unfold(-0.125, 1.0, {0.0, 0.0, 0.0});
        CHECK(r.gamma_R == 0.125);
        CHECK(r.b == -0.25);
        CHECK(r.x_R == 1.0);
        CHECK(r.newton_iters == 0);
        CHECK(r.residual <= 1e-13);
    }
    SECTION("the reference targets recover the rational parameters") {
        const UnfoldingResult r = order3_unfold(
            -0.125, 1.0, {-4.43719886e-8, 3.993655760e-5, -1.15001344e-2});
        CHECK(r.gamma_R == Approx(1638355.0 / 13106841.0).epsilon(1e-6));
        CHECK(r.b == Approx(-260534.0 / 1045519.0).epsilon(1e-6));
        CHECK(r.x_R == Approx(552751.0 / 556327.0).epsilon(1e-6));
        CHECK(r.residual <= 1e-12);
        CHECK(std::abs(r.achieved[3]) > 1.0);  // Delta_4 stays bounded away from 0
    }
    SECTION("random targets are achieved to 1e-12") {
        std::mt19937_64 rng(616);
        for (int pair = 0; pair < 20; ++pair) {
            const double gl = signed_uniform(rng, 0.08, 0.4);
            const double xl = signed_uniform(rng, 0.3, 1.2);
            for (int t = 0; t < 100; ++t) {
                const UnfoldingTarget target{uniform(rng, -0.01, 0.01),
                                             uniform(rng, -0.01, 0.01),
                                             uniform(rng, -0.01, 0.01)};
                const UnfoldingResult r = order3_unfold(gl, xl, target);
                REQUIRE(r.residual <= 1e-12);
                REQUIRE(std::abs(r.achieved[0] - target.delta1) <= 1e-12);
                REQUIRE(std::abs(r.achieved[1] - target.delta2) <= 1e-12);
                REQUIRE(std::abs(r.achieved[2] - target.delta3) <= 1e-12);
            }
        }
    }
    SECTION("preconditions and locality") {
        CHECK_THROWS_AS(order3_unfold(0.0, 1.0, {0, 0, 0}), Error);
        CHECK_THROWS_AS(order3_unfold(-0.125, 0.0, {0, 0, 0}), Error);
        CHECK_THROWS_AS(order3_unfold(-0.125, 1.0, {0.2, 0.0, 0.0}), Error);
        // A nearly vanishing damping ratio makes the third column of the
        // Jacobian tiny; the Newton step then leaves the locality ball.
        CHECK_THROWS_AS(order3_unfold(2e-6, 1.0, {0.0, 0.0, 0.01}), OutsideLocality);
    }
    SECTION("coefficient scales beyond the noise floor are refused") {
        // At gamma_L = -1.5 the growth factor is e^(1.5 pi) ~ 111 and the
        // order-3 coefficients cancel through ~1e7-sized terms, leaving a
        // rounding floor far above the 1e-13 convergence target.
        CHECK_THROWS_AS(order3_unfold(-1.5, 2.0, {1e-3, 1e-3, 1e-3}), NoConvergence);
    }
}

TEST_CASE("difference Jacobians match the printed determinants") {
    SECTION("order-3 critical Jacobian") {
        const ParamVector point{-0.125, 0.125, -0.25, 1.0, 1.0};
        const int dirs[] = {kParamGammaR, kParamB, kParamXR};
        const DeltaJacobian jac = delta_jacobian(point, dirs, 1e-5);
        const double e = std::exp(kPi / 8.0);
        const double expected = -2.0 * kPi * e * e * e * (1.0 - e) * (1.0 + e) * (1.0 + e) *
                                (1.0 + 1.0 / 64.0) * 1.0;
        CHECK(jacobian_det3(jac, {1, 2, 3}, {0, 1, 2}) == Approx(expected).epsilon(1e-6));
        CHECK(jac.at(1, 0) == Approx(kPi * e).epsilon(1e-6));
        CHECK(std::abs(jac.at(1, 1)) <= 1e-6);
        CHECK(std::abs(jac.at(1, 2)) <= 1e-6);
        CHECK(jac.at(2, 1) == Approx(2.0 * e * (1.0 + e)).epsilon(1e-6));
        CHECK(jac.at(2, 2) == Approx(2.0 * e * (1.0 + e) * 0.125).epsilon(1e-6));
        CHECK(std::abs(jac.at(3, 1)) <= 1e-6);
        CHECK(jac.at(3, 2) ==
              Approx(-e * (1.0 - e * e) * (1.0 + 1.0 / 64.0)).epsilon(1e-6));
    }
    SECTION("generic order-3 points") {
        std::mt19937_64 rng(717);
        for (int i = 0; i < 10; ++i) {
            const double gl = signed_uniform(rng, 0.08, 0.5);
            const double xl = signed_uniform(rng, 0.3, 1.2);
            const ParamVector point{gl, -gl, 2.0 * gl * xl, xl, xl};
            const int dirs[] = {kParamGammaR, kParamB, kParamXR};
            const DeltaJacobian jac = delta_jacobian(point, dirs, 1e-5);
            const double e = std::exp(-gl * kPi);
            const double expected = -2.0 * kPi * e * e * e * (1.0 - e) * (1.0 + e) *
                                    (1.0 + e) * (1.0 + gl * gl) * xl;
            REQUIRE(jacobian_det3(jac, {1, 2, 3}, {0, 1, 2}) ==
                    Approx(expected).epsilon(1e-6));
        }
    }
    SECTION("mirror-pair center determinant") {
        for (const auto [eta, xi] : {std::pair{0.3, 0.7}, std::pair{-0.45, 0.6}}) {
            const ParamVector point{-eta, eta, 0.0, -xi, xi};
            const int dirs[] = {kParamGammaL, kParamB, kParamXL};
            const DeltaJacobian jac = delta_jacobian(point, dirs, 1e-5);
            const double e = std::exp(eta * kPi);
            const double expected = 2.0 * kPi * xi * e * e * e * (e - 1.0) * (e + 1.0) *
                                    (e + 1.0) * (eta * eta + 1.0);
            REQUIRE(jacobian_det3(jac, {1, 2, 3}, {0, 1, 2}) ==
                    Approx(expected).epsilon(1e-6));
        }
    }
    SECTION("matched-centers linear rows") {
        for (const auto [eta, xi] : {std::pair{1.0, 1.0}, std::pair{0.8, -1.3}}) {
            const ParamVector point{0.0, 0.0, 0.0, eta, xi};
            const int dirs[] = {kParamGammaL, kParamGammaR, kParamB, kParamXL, kParamXR};
            const DeltaJacobian jac = delta_jacobian(point, dirs, 1e-5);
            const double expected[4][5] = {
                {kPi, kPi, 0.0, 0.0, 0.0},
                {-4.0 * eta, 4.0 * xi, 4.0, 0.0, 0.0},
                {kPi * eta * eta, kPi * xi * xi, 0.0, 0.0, 0.0},
                {-4.0 / 3.0 * eta * eta * eta, 4.0 / 3.0 * xi * xi * xi, 0.0, 0.0, 0.0},
            };
            for (int row = 1; row <= 4; ++row)
                for (int col = 0; col < 5; ++col) {
                    const double want = expected[row - 1][col];
                    if (want == 0.0) {
                        REQUIRE(std::abs(jac.at(row, col)) <= 1e-6);
                    } else {
                        REQUIRE(jac.at(row, col) == Approx(want).epsilon(1e-6));
                    }
                }
            // Determinant of the first three rows w.r.t. the first three
            // perturbation directions.
            REQUIRE(jacobian_det3(jac, {1, 2, 3}, {0, 1, 2}) ==
                    Approx(4.0 * kPi * kPi * (eta * eta - xi * xi)).epsilon(1e-6));
        }
    }
    SECTION("boundary-focus center linear rows") {
        for (const double eta : {0.4, -0.7}) {
            const ParamVector point{-eta, eta, 0.0, 0.0, 0.0};
            const int dirs[] = {kParamGammaL, kParamGammaR, kParamB, kParamXL, kParamXR};
            const DeltaJacobian jac = delta_jacobian(point, dirs, 1e-5);
            const double e = std::exp(eta * kPi);
            const double expected[4][5] = {
                {kPi * e, kPi * e, 0.0, 0.0, 0.0},
                {0.0, 0.0, 2.0 * e * (1.0 + e), 2.0 * eta * e * (1.0 + e),
                 2.0 * eta * e * (1.0 + e)},
                {0.0, 0.0, 0.0, 0.0, 0.0},
                {0.0, 0.0, 0.0, 0.0, 0.0},
            };
            for (int row = 1; row <= 4; ++row)
                for (int col = 0; col < 5; ++col) {
                    const double want = expected[row - 1][col];
                    if (want == 0.0) {
                        REQUIRE(std::abs(jac.at(row, col)) <= 1e-6);
                    } else {
                        REQUIRE(jac.at(row, col) == Approx(want).epsilon(1e-6));
                    }
                }
        }
    }
    SECTION("step validation") {
        const ParamVector point{-0.125, 0.125, -0.25, 1.0, 1.0};
        const int dirs[] = {kParamGammaR};
        CHECK_THROWS_AS(delta_jacobian(point, dirs, 1e-8), Error);
        CHECK_THROWS_AS(delta_jacobian(point, dirs, 1e-3), Error);
    }
}

TEST_CASE("model quartic root counting") {
    SECTION("cusp carries a triple positive root for negative third coefficient") {
        for (const double d3 : {-0.1, -0.5, -1.0, -2.0}) {
            const ModelRegionCount mc =
                model_region_count({d3 * d3 * d3 / 27.0, d3 * d3 / 3.0, d3});
            REQUIRE(mc.boundary == ModelRegionCount::Boundary::TripleRoot);
            REQUIRE(mc.count == 1);
            REQUIRE(mc.multiplicities[0] == 3);
            REQUIRE(mc.roots[0] == Approx(-d3 / 3.0).epsilon(1e-10));
        }
    }
    SECTION("all-positive coefficients have no positive root") {
        const ModelRegionCount mc = model_region_count({1.0, 1.0, 1.0});
        CHECK(mc.count == 0);
        CHECK_FALSE(mc.on_boundary());
    }
    SECTION("never three positive roots when the cubic coefficient is positive") {
        std::mt19937_64 rng(818);
        for (int i = 0; i < 10000; ++i) {
            const std::array<double, 3> delta{uniform(rng, -1, 1), uniform(rng, -1, 1),
                                              uniform(rng, 0, 1)};
            REQUIRE(model_region_count(delta).count < 3);
        }
    }
    SECTION("agreement with the scanning oracles") {
        std::mt19937_64 rng(919);
        for (int i = 0; i < 10000; ++i) {
            const double d1 = uniform(rng, -1, 1);
            const double d2 = uniform(rng, -1, 1);
            const double d3 = uniform(rng, -1, 1);
            const int mine = model_region_count({d1, d2, d3}).count;
            REQUIRE(mine == cubic_positive_roots_monotone(d1, d2, d3));
        }
    }
}

TEST_CASE("region maps") {
    SECTION("negative third coefficient shows the three-root tongue") {
        const RegionMap map =
            region_boundaries(-1.0, {-0.045, 0.0, 0.25, 0.40}, 64);
        CHECK(map.cusp_d1 == Approx(-1.0 / 27.0).margin(1e-15));
        CHECK(map.cusp_d2 == Approx(1.0 / 3.0).margin(1e-15));
        CHECK(map.cusp_in_window);
        int three = 0, total = 0;
        for (const auto& p : map.labels) {
            three += (p.count == 3);
            ++total;
        }
        CHECK(total == 64 * 64);
        CHECK(three > 0);
        CHECK_FALSE(map.discriminant_curve.empty());
    }
    SECTION("positive third coefficient never labels three") {
        const RegionMap map = region_boundaries(1.0, {-0.5, 0.5, -0.5, 0.5}, 32);
        for (const auto& p : map.labels) REQUIRE(p.count < 3);
    }
    SECTION("vanishing third coefficient degenerates to the standard variety") {
        const RegionMap map = region_boundaries(0.0, {-0.5, 0.5, -0.5, 0.5}, 32);
        REQUIRE_FALSE(map.discriminant_curve.empty());
        for (const auto& p : map.discriminant_curve) {
            // 4 d2^3 + 27 d1^2 = 0 on the curve.
            REQUIRE(std::abs(4.0 * p.d2 * p.d2 * p.d2 + 27.0 * p.d1 * p.d1) <=
                    1e-10 * std::max(1.0, std::abs(p.d1)));
            REQUIRE(p.d2 <= 0.0);
        }
    }
    SECTION("resolution validation") {
        CHECK_THROWS_AS(region_boundaries(-1.0, {-1, 1, -1, 1}, 8), Error);
    }
}

TEST_CASE("unfolded three-root targets produce three cycles") {
    std::mt19937_64 rng(1020);
    for (int i = 0; i < 3; ++i) {
        const double r1 = uniform(rng, 1.4e-3, 2.0e-3);
        const double r2 = r1 * uniform(rng, 1.4, 1.7);
        const double r3 = r2 * uniform(rng, 1.4, 1.7);
        const double d3 = -(r1 + r2 + r3);
        const double d2 = r1 * r2 + r1 * r3 + r2 * r3;
        const double d1 = -r1 * r2 * r3;
        const double delta4 = 65.0 / 384.0 * std::exp(kPi / 8.0) *
                              (1.0 + std::exp(3.0 * kPi / 8.0));
        const UnfoldingResult unfolded = order3_unfold(
            -0.125, 1.0, {delta4 * d1, delta4 * d2, delta4 * d3});
        const SystemSpec spec =
            make_spec(-0.125, unfolded.gamma_R, unfolded.b, 1.0, unfolded.x_R);
        const CycleScan scan = find_cycles(spec, 0.01, 400);
        REQUIRE(scan.cycles.size() == 3);
        REQUIRE(scan.cycles[0].u0_root == Approx(r1).epsilon(0.05));
        REQUIRE(scan.cycles[2].u0_root == Approx(r3).epsilon(0.05));
    }
}
