#pragma once

#include <vector>

#include "pwlinf/params.hpp"

namespace pwlinf {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Exact affine flow of one linearity zone. The matrix action is determined
/// by gamma alone; the state evolves as
///   p(t) = equilibrium + e^(gamma t) (cos t I + sin t B) (p0 - equilibrium)
/// with B = A - gamma I, for which B^2 = -I (checked on construction).
class ZoneFlow {
public:
    ZoneFlow(double gamma, Vec2 equilibrium);

    [[nodiscard]] double gamma() const { return gamma_; }
    [[nodiscard]] Vec2 equilibrium() const { return equilibrium_; }

    /// Flowed state after time t (t may be negative).
    [[nodiscard]] Vec2 at(Vec2 state, double t) const;

    /// Vector field at a state: (2 gamma dx - dy, (1 + gamma^2) dx).
    [[nodiscard]] Vec2 velocity(Vec2 state) const;

private:
    double gamma_;
    Vec2 equilibrium_;
};

[[nodiscard]] ZoneFlow left_zone(const SystemSpec& spec);
[[nodiscard]] ZoneFlow right_zone(const SystemSpec& spec);

/// Numeric half-return map through one zone, forward in time for side L and
/// backward for side R, both starting from (0, y_in) with y_in > 0.
struct HalfReturnResult {
    double y_out = 0.0;        ///< arrival ordinate on the switching line
    double flight_time = 0.0;  ///< elapsed |time| tau, near pi for large y_in
    double s_correction = 0.0; ///< tau - pi
};

/// Locates the arrival crossing by bracketing a sign change of x(t) in
/// t in (pi/2, 3pi/2) followed by safeguarded Newton with bisection fallback.
/// Throws NoCrossing when no sign change is bracketed (or the orbit exits the
/// zone before pi/2) and SlidingContact when |y_out| <= |b|.
[[nodiscard]] HalfReturnResult half_return_numeric(const SystemSpec& spec, Zone side,
                                                   double y_in);

/// Numeric displacement 1/y1 - 1/y2 at u0 = 1/y_in, where y1 and y2 are the
/// two half-map arrival ordinates. Propagates half-map errors tagged with the
/// failing side.
[[nodiscard]] double displacement_numeric(const SystemSpec& spec, double u0);

/// Piecewise-exact sampled trajectory with crossing events.
struct TracedOrbit {
    struct Sample {
        double t = 0.0;
        double x = 0.0;
        double y = 0.0;
    };
    struct Crossing {
        double t = 0.0;
        double y = 0.0;
        Zone from = Zone::L;
        Zone to = Zone::R;
    };
    enum class Stop { Completed, SlidingContact, NoReturn };

    std::vector<Sample> samples;
    std::vector<Crossing> crossings;
    Stop stop = Stop::Completed;
};

/// Follow the orbit through `turns` full revolutions, sampling each half arc
/// uniformly in time. Stops early with a flag if the orbit meets the sliding
/// segment or fails to return to the switching line. The start point must not
/// lie in the sliding segment interior.
[[nodiscard]] TracedOrbit trace_orbit(const SystemSpec& spec, Vec2 start, int turns,
                                      int samples_per_turn);

}  // namespace pwlinf
