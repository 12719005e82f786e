#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace pwlinf::detail {

struct CubicRoots {
    std::array<double, 3> roots{};
    std::array<int, 3> mults{};
    int distinct = 0;
    double discriminant = 0.0;
    bool boundary = false;  // discriminant vanishes within tolerance
    bool triple = false;
};

// Real roots of x^3 + p x^2 + q x + r with geometric multiplicities.
// Trig form for three real roots, Cardano otherwise, Newton polish on top.
inline CubicRoots solve_monic_cubic(double p, double q, double r) {
    CubicRoots out;

    const double t_18pqr = 18.0 * p * q * r;
    const double t_4p3r = 4.0 * p * p * p * r;
    const double t_p2q2 = p * p * q * q;
    const double t_4q3 = 4.0 * q * q * q;
    const double t_27r2 = 27.0 * r * r;
    out.discriminant = t_18pqr - t_4p3r + t_p2q2 - t_4q3 - t_27r2;

    double disc_scale = std::abs(t_18pqr);
    disc_scale = std::max(disc_scale, std::abs(t_4p3r));
    disc_scale = std::max(disc_scale, std::abs(t_p2q2));
    disc_scale = std::max(disc_scale, std::abs(t_4q3));
    disc_scale = std::max(disc_scale, std::abs(t_27r2));
    out.boundary = std::abs(out.discriminant) <= 1e-12 * disc_scale + 1e-300;

    // Depressed form t^3 + P t + Q with x = t - p/3.
    const double P = q - p * p / 3.0;
    const double Q = 2.0 * p * p * p / 27.0 - p * q / 3.0 + r;

    const auto polish = [&](double x, int newton_iters) {
        for (int i = 0; i < newton_iters; ++i) {
            const double f = ((x + p) * x + q) * x + r;
            const double df = (3.0 * x + 2.0 * p) * x + q;
            if (df == 0.0) break;
            x -= f / df;
        }
        return x;
    };

    if (out.boundary) {
        const double p_scale = std::max(1e-30, std::abs(q) + p * p);
        const double q_scale = std::max(1e-30, std::abs(Q) + std::abs(p * p * p) / 27.0 +
                                                   std::abs(p * q) / 3.0 + std::abs(r));
        if (std::abs(P) <= 1e-10 * p_scale && std::abs(Q) <= 1e-10 * q_scale) {
            out.triple = true;
            out.distinct = 1;
            out.roots[0] = -p / 3.0;
            out.mults[0] = 3;
            return out;
        }
        // Double root d and simple root -2d - p/3 of the depressed cubic.
        const double d = -3.0 * Q / (2.0 * P);
        double dbl = d - p / 3.0;
        double simple = -2.0 * d - p / 3.0;
        // Polish the double root on the derivative, where it is simple.
        for (int i = 0; i < 3; ++i) {
            const double df = (3.0 * dbl + 2.0 * p) * dbl + q;
            const double ddf = 6.0 * dbl + 2.0 * p;
            if (ddf == 0.0) break;
            dbl -= df / ddf;
        }
        simple = polish(simple, 3);
        out.distinct = 2;
        if (simple <= dbl) {
            out.roots = {simple, dbl, 0.0};
            out.mults = {1, 2, 0};
        } else {
            out.roots = {dbl, simple, 0.0};
            out.mults = {2, 1, 0};
        }
        return out;
    }

    if (out.discriminant > 0.0) {
        // Three distinct real roots.
        const double m = 2.0 * std::sqrt(-P / 3.0);
        double arg = 3.0 * Q / (P * m);
        arg = std::clamp(arg, -1.0, 1.0);
        const double theta = std::acos(arg);
        for (int k = 0; k < 3; ++k) {
            const double t = m * std::cos((theta - 2.0 * std::numbers::pi * k) / 3.0);
            out.roots[static_cast<size_t>(k)] = polish(t - p / 3.0, 3);
            out.mults[static_cast<size_t>(k)] = 1;
        }
        out.distinct = 3;
        if (out.roots[0] > out.roots[1]) std::swap(out.roots[0], out.roots[1]);
        if (out.roots[1] > out.roots[2]) std::swap(out.roots[1], out.roots[2]);
        if (out.roots[0] > out.roots[1]) std::swap(out.roots[0], out.roots[1]);
        return out;
    }

    // One real root (Cardano, stable branch selection).
    const double s = std::sqrt(Q * Q / 4.0 + P * P * P / 27.0);
    const double a = -Q / 2.0;
    const double u = std::cbrt(a >= 0.0 ? a + s : a - s);
    const double t = (u != 0.0) ? u - P / (3.0 * u) : 0.0;
    out.roots[0] = polish(t - p / 3.0, 3);
    out.mults[0] = 1;
    out.distinct = 1;
    return out;
}

}  // namespace pwlinf::detail
