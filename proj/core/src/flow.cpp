#include "pwlinf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pwlinf {
namespace {

constexpr double kPi = std::numbers::pi;

// Crossing-time refinement target: |x| <= kCrossingTol * (1 + |y|).
constexpr double kCrossingTol = 1e-13;

struct CrossingHit {
    double t = 0.0;  // positive elapsed time along the integration direction
    Vec2 point;
};

// x-coordinate of the flow after elapsed time tau along `direction`.
double x_at(const ZoneFlow& zone, Vec2 start, double direction, double tau) {
    return zone.at(start, direction * tau).x;
}

// Safeguarded Newton with bisection fallback inside a sign-change bracket.
CrossingHit refine_crossing(const ZoneFlow& zone, Vec2 start, double direction,
                            double t_lo, double t_hi) {
    double f_lo = x_at(zone, start, direction, t_lo);
    double t = 0.5 * (t_lo + t_hi);
    Vec2 p{};
    for (int iter = 0; iter < 120; ++iter) {
        p = zone.at(start, direction * t);
        if (std::abs(p.x) <= kCrossingTol * (1.0 + std::abs(p.y))) break;
        if ((p.x > 0.0) == (f_lo > 0.0)) {
            t_lo = t;
            f_lo = p.x;
        } else {
            t_hi = t;
        }
        const double slope = direction * zone.velocity(p).x;
        double t_next = (slope != 0.0) ? t - p.x / slope : 0.5 * (t_lo + t_hi);
        if (!(t_next > t_lo && t_next < t_hi)) t_next = 0.5 * (t_lo + t_hi);
        if (std::abs(t_next - t) <= 1e-16 * std::max(1.0, std::abs(t))) {
            t = t_next;
            p = zone.at(start, direction * t);
            break;
        }
        t = t_next;
    }
    return {t, p};
}

// First sign change of x(tau) for tau in (t_lo, t_hi], scanning n points.
// `interior` is the sign x keeps inside the zone (-1 left, +1 right).
// Returns false when no bracket exists.
bool first_crossing(const ZoneFlow& zone, Vec2 start, double direction, double t_lo,
                    double t_hi, int n, double interior, CrossingHit& hit) {
    double t_prev = t_lo;
    double f_prev = x_at(zone, start, direction, t_lo);
    for (int i = 1; i <= n; ++i) {
        const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / n;
        const double f = x_at(zone, start, direction, t);
        const bool prev_interior = f_prev != 0.0 && (f_prev > 0.0) == (interior > 0.0);
        if (prev_interior && (f > 0.0) != (f_prev > 0.0) && f != 0.0) {
            hit = refine_crossing(zone, start, direction, t_prev, t);
            return true;
        }
        if (prev_interior && f == 0.0) {
            hit = {t, zone.at(start, direction * t)};
            return true;
        }
        t_prev = t;
        f_prev = f;
    }
    return false;
}

ZoneFlow zone_for(const SystemSpec& spec, Zone side) {
    return (side == Zone::L) ? left_zone(spec) : right_zone(spec);
}

}  // namespace

ZoneFlow::ZoneFlow(double gamma, Vec2 equilibrium)
    : gamma_(gamma), equilibrium_(equilibrium) {
    // B = A - gamma I = [[gamma, -1], [1 + gamma^2, -gamma]] must square to -I
    // for the closed flow formula to represent this zone.
    const double gs = 1.0 + gamma * gamma;
    const double r00 = gamma * gamma - gs + 1.0;
    const double r11 = -gs + gamma * gamma + 1.0;
    const double r01 = -gamma + gamma;
    const double r10 = gs * gamma - gamma * gs;
    const double defect = std::max(std::max(std::abs(r00), std::abs(r11)),
                                   std::max(std::abs(r01), std::abs(r10)));
    if (!(defect <= 1e-14))
        throw Error("zone matrix identity (A - gamma I)^2 = -I fails, gamma = " +
                    std::to_string(gamma));
}

Vec2 ZoneFlow::at(Vec2 state, double t) const {
    const double dx = state.x - equilibrium_.x;
    const double dy = state.y - equilibrium_.y;
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double growth = std::exp(gamma_ * t);
    return {
        equilibrium_.x + growth * ((c + gamma_ * s) * dx - s * dy),
        equilibrium_.y + growth * ((1.0 + gamma_ * gamma_) * s * dx + (c - gamma_ * s) * dy),
    };
}

Vec2 ZoneFlow::velocity(Vec2 state) const {
    const double dx = state.x - equilibrium_.x;
    const double dy = state.y - equilibrium_.y;
    return {2.0 * gamma_ * dx - dy, (1.0 + gamma_ * gamma_) * dx};
}

ZoneFlow left_zone(const SystemSpec& spec) {
    return {spec.gamma_L, {spec.x_L(), spec.y_L()}};
}

ZoneFlow right_zone(const SystemSpec& spec) {
    return {spec.gamma_R, {spec.x_R(), spec.y_R()}};
}

HalfReturnResult half_return_numeric(const SystemSpec& spec, Zone side, double y_in) {
    if (!(y_in > 0.0)) throw Error("half_return_numeric requires y_in > 0");

    const ZoneFlow zone = zone_for(spec, side);
    const double direction = (side == Zone::L) ? 1.0 : -1.0;
    const double interior = (side == Zone::L) ? -1.0 : 1.0;
    const Vec2 start{0.0, y_in};

    // The orbit must stay inside the zone until the half-turn window opens;
    // leaving early means (0, y_in) is not on a crossing arc near infinity.
    constexpr int kPreScan = 24;
    for (int i = 1; i <= kPreScan; ++i) {
        const double t = 0.5 * kPi * static_cast<double>(i) / (kPreScan + 1);
        const double x = x_at(zone, start, direction, t);
        if ((x > 0.0) != (interior > 0.0) && x != 0.0)
            throw NoCrossing(side, "orbit exits the zone before the half-turn window");
    }

    CrossingHit hit;
    if (!first_crossing(zone, start, direction, 0.5 * kPi, 1.5 * kPi, 48, interior, hit))
        throw NoCrossing(side, "no sign change of x(t) in (pi/2, 3pi/2)");

    if (std::abs(hit.point.y) <= std::abs(spec.b))
        throw SlidingContact(side, hit.point.y, spec.b);
    if (!(hit.point.y < 0.0))
        throw NoCrossing(side, "arrival ordinate is not below the switching origin");

    return {hit.point.y, hit.t, hit.t - kPi};
}

double displacement_numeric(const SystemSpec& spec, double u0) {
    if (!(u0 > 0.0)) throw Error("displacement_numeric requires u0 > 0");
    const double y_in = 1.0 / u0;
    const double y1 = half_return_numeric(spec, Zone::L, y_in).y_out;
    const double y2 = half_return_numeric(spec, Zone::R, y_in).y_out;
    return 1.0 / y1 - 1.0 / y2;
}

TracedOrbit trace_orbit(const SystemSpec& spec, Vec2 start, int turns,
                        int samples_per_turn) {
    if (turns < 1) throw Error("trace_orbit requires turns >= 1");
    const int per_arc = std::max(2, samples_per_turn / 2);

    TracedOrbit orbit;
    Vec2 point = start;
    Zone side;
    if (point.x < 0.0) {
        side = Zone::L;
    } else if (point.x > 0.0) {
        side = Zone::R;
    } else {
        if (std::abs(point.y) <= std::abs(spec.b))
            throw Error("trace_orbit start lies on the sliding segment");
        // Forward motion leaves the axis toward x < 0 from the upper half and
        // toward x > 0 from the lower half.
        side = (point.y > 0.0) ? Zone::L : Zone::R;
    }

    double t_global = 0.0;
    orbit.samples.push_back({0.0, point.x, point.y});

    for (int arc = 0; arc < 2 * turns; ++arc) {
        const ZoneFlow zone = zone_for(spec, side);
        const double interior = (side == Zone::L) ? -1.0 : 1.0;

        // Generic first return to the axis; the half-turn time can approach a
        // full revolution for arcs far from infinity.
        CrossingHit hit;
        const bool on_axis = (point.x == 0.0) ||
                             std::abs(point.x) <= 1e-12 * (1.0 + std::abs(point.y));
        const double t_open = on_axis ? 1e-7 : 0.0;
        if (!first_crossing(zone, point, 1.0, t_open, 2.0 * kPi + 0.5 * kPi, 512,
                            interior, hit)) {
            orbit.stop = TracedOrbit::Stop::NoReturn;
            return orbit;
        }

        for (int j = 1; j <= per_arc; ++j) {
            // The arc-end sample reuses the refined crossing time exactly, so
            // CSV writers can match it against the crossing record.
            const double tau =
                (j == per_arc) ? hit.t : hit.t * static_cast<double>(j) / per_arc;
            const Vec2 q = zone.at(point, tau);
            orbit.samples.push_back({t_global + tau, q.x, q.y});
        }

        const Zone next = (side == Zone::L) ? Zone::R : Zone::L;
        t_global += hit.t;
        orbit.crossings.push_back({t_global, hit.point.y, side, next});

        if (std::abs(hit.point.y) <= std::abs(spec.b)) {
            orbit.stop = TracedOrbit::Stop::SlidingContact;
            return orbit;
        }

        point = {0.0, hit.point.y};
        side = next;
    }
    return orbit;
}

}  // namespace pwlinf
