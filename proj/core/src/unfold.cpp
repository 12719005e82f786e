#include "pwlinf/unfold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cubic.hpp"
#include "pwlinf/series.hpp"

namespace pwlinf {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTargetCap = 0.1;
constexpr double kLocalityRadius = 0.5;
constexpr int kMaxNewtonIters = 50;

SystemSpec spec_from_params(const ParamVector& p) {
    SystemSpec spec;
    spec.gamma_L = p[kParamGammaL];
    spec.gamma_R = p[kParamGammaR];
    spec.b = p[kParamB];
    spec.alpha_L = (1.0 + spec.gamma_L * spec.gamma_L) * p[kParamXL];
    spec.alpha_R = (1.0 + spec.gamma_R * spec.gamma_R) * p[kParamXR];
    return spec;
}

// Analytic Jacobian of (Delta_1, Delta_2, Delta_3) with respect to
// (gamma_R, b, x_R) at an arbitrary point, from the closed-form coefficients.
// Row-major 3x3.
std::array<double, 9> delta123_jacobian(double gamma_L, double x_L, double gamma_R,
                                        double b, double x_R) {
    const double e = std::exp(gamma_R * kPi);    // right-side growth factor
    const double el = std::exp(-gamma_L * kPi);  // left-side growth factor
    const double y_R = 2.0 * gamma_R * x_R + b;
    const double y_L = 2.0 * gamma_L * x_L - b;
    const double gs = 1.0 + gamma_R * gamma_R;

    const double de = kPi * e;
    const double s_r = gs * (e - 1.0) * x_R * x_R / 2.0 + (1.0 + e) * y_R * y_R;
    const double s_r_gamma = (2.0 * gamma_R * (e - 1.0) + gs * de) * x_R * x_R / 2.0 +
                             de * y_R * y_R + (1.0 + e) * 2.0 * y_R * (2.0 * x_R);

    std::array<double, 9> jac{};
    // d Delta_1
    jac[0] = de;   // d/d gamma_R
    jac[1] = 0.0;  // d/d b
    jac[2] = 0.0;  // d/d x_R
    // d Delta_2 = d(-e(1+e) y_R) * (-1) ... Delta_2 = L_2 - R_2, R_2 = -e(1+e)y_R
    jac[3] = de * (1.0 + 2.0 * e) * y_R + e * (1.0 + e) * 2.0 * x_R;
    jac[4] = el * (1.0 + el) + e * (1.0 + e);
    jac[5] = e * (1.0 + e) * 2.0 * gamma_R;
    // d Delta_3, with R_3 = -e(1+e) s_r and L_3 depending on b through y_L
    jac[6] = de * (1.0 + 2.0 * e) * s_r + e * (1.0 + e) * s_r_gamma;
    jac[7] = 2.0 * el * (1.0 + el) * (1.0 + el) * y_L +
             2.0 * e * (1.0 + e) * (1.0 + e) * y_R;
    jac[8] = e * (1.0 + e) * (gs * (e - 1.0) * x_R + (1.0 + e) * 2.0 * y_R * 2.0 * gamma_R);
    return jac;
}

// Solve a 3x3 linear system by Gaussian elimination with partial pivoting.
std::array<double, 3> solve3(std::array<double, 9> a, std::array<double, 3> rhs) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(a[static_cast<size_t>(3 * row + col)]) >
                std::abs(a[static_cast<size_t>(3 * pivot + col)]))
                pivot = row;
        if (pivot != col) {
            for (int k = 0; k < 3; ++k)
                std::swap(a[static_cast<size_t>(3 * col + k)],
                          a[static_cast<size_t>(3 * pivot + k)]);
            std::swap(rhs[static_cast<size_t>(col)], rhs[static_cast<size_t>(pivot)]);
        }
        const double diag = a[static_cast<size_t>(3 * col + col)];
        if (diag == 0.0) throw NoConvergence("singular Jacobian in unfolding Newton");
        for (int row = col + 1; row < 3; ++row) {
            const double f = a[static_cast<size_t>(3 * row + col)] / diag;
            for (int k = col; k < 3; ++k)
                a[static_cast<size_t>(3 * row + k)] -= f * a[static_cast<size_t>(3 * col + k)];
            rhs[static_cast<size_t>(row)] -= f * rhs[static_cast<size_t>(col)];
        }
    }
    std::array<double, 3> x{};
    for (int row = 2; row >= 0; --row) {
        double acc = rhs[static_cast<size_t>(row)];
        for (int k = row + 1; k < 3; ++k)
            acc -= a[static_cast<size_t>(3 * row + k)] * x[static_cast<size_t>(k)];
        x[static_cast<size_t>(row)] = acc / a[static_cast<size_t>(3 * row + row)];
    }
    return x;
}

}  // namespace

std::array<double, 4> displacement_deltas(const ParamVector& p) {
    const DisplacementSeries d = displacement_series(spec_from_params(p), 4);
    return {d.delta(1), d.delta(2), d.delta(3), d.delta(4)};
}

UnfoldingResult order3_unfold(double gamma_L, double x_L, const UnfoldingTarget& target) {
    if (!(std::abs(gamma_L) > 1e-6) || !(std::abs(x_L) > 1e-6))
        throw Error("order3_unfold requires |gamma_L| > 1e-6 and |x_L| > 1e-6");
    const double target_mag = std::max({std::abs(target.delta1), std::abs(target.delta2),
                                        std::abs(target.delta3)});
    if (target_mag > kTargetCap)
        throw Error("unfolding target magnitude " + std::to_string(target_mag) +
                    " exceeds the locality cap " + std::to_string(kTargetCap));

    const std::array<double, 3> critical{-gamma_L, 2.0 * gamma_L * x_L, x_L};
    std::array<double, 3> point = critical;

    UnfoldingResult result;
    for (int iter = 0; iter <= kMaxNewtonIters; ++iter) {
        ParamVector p{gamma_L, point[0], point[1], x_L, point[2]};
        const std::array<double, 4> deltas = displacement_deltas(p);
        const std::array<double, 3> f{deltas[0] - target.delta1,
                                      deltas[1] - target.delta2,
                                      deltas[2] - target.delta3};
        const double residual = std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[2])});
        if (residual <= 1e-13) {
            result.gamma_R = point[0];
            result.b = point[1];
            result.x_R = point[2];
            result.achieved = deltas;
            result.residual = residual;
            result.newton_iters = iter;
            return result;
        }
        if (iter == kMaxNewtonIters) break;

        const std::array<double, 9> jac =
            delta123_jacobian(gamma_L, x_L, point[0], point[1], point[2]);
        const std::array<double, 3> step = solve3(jac, f);
        const double step_norm =
            std::max({std::abs(step[0]), std::abs(step[1]), std::abs(step[2])});
        const double point_norm =
            std::max({std::abs(point[0]), std::abs(point[1]), std::abs(point[2])});
        if (step_norm <= 1e-15 * (1.0 + point_norm) && residual <= 1e-12) {
            // The iterate stopped moving inside the evaluation noise floor.
            result.gamma_R = point[0];
            result.b = point[1];
            result.x_R = point[2];
            result.achieved = deltas;
            result.residual = residual;
            result.newton_iters = iter;
            return result;
        }
        for (int k = 0; k < 3; ++k) point[static_cast<size_t>(k)] -= step[static_cast<size_t>(k)];

        const double dist = std::sqrt(
            (point[0] - critical[0]) * (point[0] - critical[0]) +
            (point[1] - critical[1]) * (point[1] - critical[1]) +
            (point[2] - critical[2]) * (point[2] - critical[2]));
        if (dist > kLocalityRadius)
            throw OutsideLocality("Newton iterate left the locality ball of radius 0.5");
    }
    throw NoConvergence("unfolding Newton did not converge in 50 iterations");
}

DeltaJacobian delta_jacobian(const ParamVector& point, std::span<const int> directions,
                             double h) {
    if (!(h >= 1e-7 && h <= 1e-4))
        throw Error("delta_jacobian step must lie in [1e-7, 1e-4]");
    if (directions.empty()) throw Error("delta_jacobian needs at least one direction");
    for (const int d : directions)
        if (d < 0 || d > 4) throw Error("delta_jacobian direction out of range");

    const auto central = [&](int dir, double step) {
        ParamVector plus = point, minus = point;
        plus[static_cast<size_t>(dir)] += step;
        minus[static_cast<size_t>(dir)] -= step;
        const std::array<double, 4> dp = displacement_deltas(plus);
        const std::array<double, 4> dm = displacement_deltas(minus);
        std::array<double, 4> out{};
        for (int i = 0; i < 4; ++i)
            out[static_cast<size_t>(i)] =
                (dp[static_cast<size_t>(i)] - dm[static_cast<size_t>(i)]) / (2.0 * step);
        return out;
    };

    const size_t cols = directions.size();
    std::vector<double> data(4 * cols, 0.0);
    for (size_t c = 0; c < cols; ++c) {
        const int dir = directions[c];
        const std::array<double, 4> coarse = central(dir, h);
        const std::array<double, 4> fine = central(dir, 0.5 * h);
        for (int i = 0; i < 4; ++i) {
            // One Richardson halving kills the h^2 term of the central stencil.
            const double extrapolated =
                (4.0 * fine[static_cast<size_t>(i)] - coarse[static_cast<size_t>(i)]) / 3.0;
            const double disagreement = std::abs(extrapolated - fine[static_cast<size_t>(i)]) /
                                        std::max(1.0, std::abs(extrapolated));
            if (disagreement > 1e-5)
                throw StepTooSmall("Richardson extrapolation disagreement " +
                                   std::to_string(disagreement) + " for direction " +
                                   std::to_string(dir));
            data[static_cast<size_t>(i) * cols + c] = extrapolated;
        }
    }
    return {std::vector<int>(directions.begin(), directions.end()), std::move(data)};
}

double jacobian_det3(const DeltaJacobian& jac, std::array<int, 3> rows,
                     std::array<int, 3> cols) {
    const auto e = [&](int i, int j) {
        return jac.at(rows[static_cast<size_t>(i)], cols[static_cast<size_t>(j)]);
    };
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
           e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

ModelRegionCount model_region_count(const std::array<double, 3>& delta) {
    const double d1 = delta[0], d2 = delta[1], d3 = delta[2];

    ModelRegionCount out;
    const detail::CubicRoots cubic = detail::solve_monic_cubic(d3, d2, d1);

    const double zero_scale = std::max({1.0, std::abs(d2), std::abs(d3)});
    const bool root_at_zero = std::abs(d1) <= 1e-12 * zero_scale;

    for (int i = 0; i < cubic.distinct; ++i) {
        const double r = cubic.roots[static_cast<size_t>(i)];
        if (r > 0.0 && !(root_at_zero && std::abs(r) <= 1e-10 * zero_scale)) {
            out.roots.push_back(r);
            out.multiplicities.push_back(cubic.mults[static_cast<size_t>(i)]);
        }
    }
    out.count = static_cast<int>(out.roots.size());

    if (root_at_zero) {
        out.boundary = ModelRegionCount::Boundary::RootAtZero;
    } else if (cubic.boundary) {
        // Flag only collisions that affect the positive-root count.
        bool positive_multiple = false;
        for (size_t i = 0; i < out.roots.size(); ++i)
            positive_multiple = positive_multiple || out.multiplicities[i] > 1;
        if (positive_multiple)
            out.boundary = cubic.triple ? ModelRegionCount::Boundary::TripleRoot
                                        : ModelRegionCount::Boundary::DoubleRoot;
    }
    return out;
}

RegionMap region_boundaries(double delta3, const RegionWindow& window, int resolution) {
    if (resolution < 16) throw Error("region_boundaries requires resolution >= 16");

    RegionMap map;
    map.delta3 = delta3;
    map.cusp_d1 = delta3 * delta3 * delta3 / 27.0;
    map.cusp_d2 = delta3 * delta3 / 3.0;
    map.cusp_in_window = map.cusp_d1 >= window.d1_min && map.cusp_d1 <= window.d1_max &&
                         map.cusp_d2 >= window.d2_min && map.cusp_d2 <= window.d2_max;

    // Variety d1 = 0.
    if (window.d1_min <= 0.0 && 0.0 <= window.d1_max) {
        for (int i = 0; i < resolution; ++i) {
            const double d2 = window.d2_min + (window.d2_max - window.d2_min) *
                                                  static_cast<double>(i) / (resolution - 1);
            map.axis_curve.push_back({0.0, d2});
        }
    }

    // Vanishing discriminant of the cofactor cubic, solved as a quadratic in
    // d1 for each d2:  -27 d1^2 + (18 d3 d2 - 4 d3^3) d1 + (d3^2 d2^2 - 4 d2^3) = 0.
    const int sweep = 8 * resolution;
    for (int i = 0; i <= sweep; ++i) {
        const double d2 = window.d2_min + (window.d2_max - window.d2_min) *
                                              static_cast<double>(i) / sweep;
        const double qa = -27.0;
        const double qb = 18.0 * delta3 * d2 - 4.0 * delta3 * delta3 * delta3;
        const double qc = delta3 * delta3 * d2 * d2 - 4.0 * d2 * d2 * d2;
        const double disc2 = qb * qb - 4.0 * qa * qc;
        if (disc2 < 0.0) continue;
        const double sq = std::sqrt(disc2);
        for (const double d1 : {(-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)}) {
            if (d1 >= window.d1_min && d1 <= window.d1_max)
                map.discriminant_curve.push_back({d1, d2});
        }
    }

    for (int i = 0; i < resolution; ++i) {
        const double d1 = window.d1_min + (window.d1_max - window.d1_min) *
                                              static_cast<double>(i) / (resolution - 1);
        for (int j = 0; j < resolution; ++j) {
            const double d2 = window.d2_min + (window.d2_max - window.d2_min) *
                                                  static_cast<double>(j) / (resolution - 1);
            map.labels.push_back({d1, d2, model_region_count({d1, d2, delta3}).count});
        }
    }
    return map;
}

}  // namespace pwlinf
