#include "pwlinf/classify.hpp"

#include <cmath>

#include "pwlinf/series.hpp"

namespace pwlinf {
namespace {

enum class Tri { Zero, NonZero, Ambiguous };

Tri magnitude(double value, double tol) {
    const double a = std::abs(value);
    if (a <= tol) return Tri::Zero;
    if (a >= 10.0 * tol) return Tri::NonZero;
    return Tri::Ambiguous;
}

Tri decide(const char* name, double value, double tol) {
    const Tri t = magnitude(value, tol);
    if (t == Tri::Ambiguous) throw AmbiguousNearBoundary(name, value, tol);
    return t;
}

}  // namespace

InfinityClass classify_infinity(const SystemSpec& spec, double tol) {
    if (!(tol > 0.0)) throw Error("classification tolerance must be positive");

    const double x_left = spec.x_L();
    const double x_right = spec.x_R();
    const double y_left = spec.y_L();
    const double y_right = spec.y_R();

    InfinityClass out;
    auto& w = out.witness;
    w.gamma_sum = spec.gamma_L + spec.gamma_R;
    w.y_diff = y_left - y_right;
    w.x_sq_diff = x_left * x_left - x_right * x_right;
    w.x_diff = x_left - x_right;
    w.x_sum = x_left + x_right;
    w.gamma_L = spec.gamma_L;
    w.x_L = x_left;
    w.b = spec.b;
    {
        const DisplacementSeries d = displacement_series(spec, 4);
        for (int k = 1; k <= 4; ++k) w.leading_deltas[static_cast<size_t>(k - 1)] = d.delta(k);
    }

    // Hyperbolic branch: the first displacement coefficient has the sign of
    // gamma_L + gamma_R, and a positive sign attracts toward infinity.
    if (decide("gamma_L + gamma_R", w.gamma_sum, tol) == Tri::NonZero) {
        out.kind = OrbitKind::Hyperbolic;
        out.stability = (w.gamma_sum > 0.0) ? Stability::Stable : Stability::Unstable;
        return out;
    }

    // Non-hyperbolic: walk the vanishing pattern of the defining combinations.
    if (decide("y_L - y_R", w.y_diff, tol) == Tri::NonZero) {
        out.kind = OrbitKind::WeakFocus;
        out.order = 1;
        out.stability = (y_right - y_left > 0.0) ? Stability::Stable : Stability::Unstable;
        return out;
    }

    if (decide("gamma_L", spec.gamma_L, tol) == Tri::Zero) {
        // gamma_L = gamma_R = 0 together with y_L = y_R forces b = 0.
        (void)decide("gamma_R", spec.gamma_R, tol);
        if (decide("b", spec.b, tol) == Tri::NonZero)
            throw AmbiguousNearBoundary("b (center-a conditions)", spec.b, tol);
        out.kind = OrbitKind::Center;
        out.stability = Stability::NonIsolated;
        out.center_type = CenterType::A;
        return out;
    }

    if (decide("x_L^2 - x_R^2", w.x_sq_diff, tol) == Tri::NonZero) {
        out.kind = OrbitKind::WeakFocus;
        out.order = 2;
        out.stability =
            (spec.gamma_L * w.x_sq_diff > 0.0) ? Stability::Stable : Stability::Unstable;
        return out;
    }

    if (decide("x_L - x_R", w.x_diff, tol) == Tri::Zero) {
        if (decide("x_L", x_left, tol) == Tri::NonZero) {
            // Equal nonzero abscissas force y_L = y_R = 0.
            if (decide("y_L", y_left, tol) == Tri::NonZero ||
                decide("y_R", y_right, tol) == Tri::NonZero)
                throw AmbiguousNearBoundary("y_L, y_R (order-3 conditions)", y_left, tol);
            out.kind = OrbitKind::WeakFocus;
            out.order = 3;
            out.stability = (spec.gamma_L * x_left < 0.0) ? Stability::Stable
                                                          : Stability::Unstable;
            return out;
        }
        if (decide("b", spec.b, tol) == Tri::NonZero)
            throw AmbiguousNearBoundary("b (center-b conditions)", spec.b, tol);
        out.kind = OrbitKind::Center;
        out.stability = Stability::NonIsolated;
        out.center_type = CenterType::B;
        return out;
    }

    // x_L^2 = x_R^2 with x_L != x_R: mirror pair x_L = -x_R != 0.
    if (decide("x_L + x_R", w.x_sum, tol) == Tri::NonZero)
        throw AmbiguousNearBoundary("x_L + x_R (center-c conditions)", w.x_sum, tol);
    if (decide("b", spec.b, tol) == Tri::NonZero)
        throw AmbiguousNearBoundary("b (center-c conditions)", spec.b, tol);
    out.kind = OrbitKind::Center;
    out.stability = Stability::NonIsolated;
    out.center_type = CenterType::C;
    out.witness.equilibria_real = (x_left < 0.0 && x_right > 0.0);
    return out;
}

}  // namespace pwlinf
