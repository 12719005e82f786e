#include "pwlinf/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cubic.hpp"
#include "pwlinf/flow.hpp"

namespace pwlinf {
namespace {

// Grid values with |Delta| below this fraction of u0 everywhere are reported
// as a period annulus instead of being mined for spurious sign changes.
constexpr double kAnnulusTol = 1e-9;

// Slope threshold for calling a root hyperbolic.
constexpr double kSlopeTol = 1e-10;

double half_map_u(const SystemSpec& spec, Zone side, double u0) {
    return 1.0 / half_return_numeric(spec, side, 1.0 / u0).y_out;
}

// Alternating secant/bisection refinement inside a sign-change bracket.
double refine_root(const SystemSpec& spec, double lo, double hi, double f_lo,
                   double f_hi) {
    for (int iter = 0; iter < 200; ++iter) {
        double cand;
        if (iter % 2 == 0 && f_hi != f_lo) {
            cand = hi - f_hi * (hi - lo) / (f_hi - f_lo);
            if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
        } else {
            cand = 0.5 * (lo + hi);
        }
        const double f = displacement_numeric(spec, cand);
        if (f == 0.0) return cand;
        if ((f > 0.0) == (f_lo > 0.0)) {
            lo = cand;
            f_lo = f;
        } else {
            hi = cand;
            f_hi = f;
        }
        if (hi - lo <= 1e-11 * (0.5 * (lo + hi))) break;
    }
    return 0.5 * (lo + hi);
}

LimitCycle make_cycle(const SystemSpec& spec, double u0) {
    LimitCycle cycle;
    cycle.u0_root = u0;
    cycle.y_top = 1.0 / u0;

    const HalfReturnResult left = half_return_numeric(spec, Zone::L, cycle.y_top);
    const HalfReturnResult right = half_return_numeric(spec, Zone::R, cycle.y_top);
    cycle.y_bottom = left.y_out;
    cycle.tau_L = left.flight_time;
    cycle.tau_R = right.flight_time;

    const double h = 1e-4 * u0;
    const double l_plus = half_map_u(spec, Zone::L, u0 + h);
    const double l_minus = half_map_u(spec, Zone::L, u0 - h);
    const double r_plus = half_map_u(spec, Zone::R, u0 + h);
    const double r_minus = half_map_u(spec, Zone::R, u0 - h);
    const double l_slope = (l_plus - l_minus) / (2.0 * h);
    const double r_slope = (r_plus - r_minus) / (2.0 * h);

    cycle.displacement_slope = l_slope - r_slope;
    cycle.multiplier_proxy = (r_slope != 0.0) ? l_slope / r_slope : 1.0;
    cycle.hyperbolic = std::abs(cycle.displacement_slope) > kSlopeTol;
    if (cycle.hyperbolic)
        cycle.stability = (cycle.displacement_slope > 0.0) ? Stability::Stable
                                                           : Stability::Unstable;
    return cycle;
}

}  // namespace

CycleScan find_cycles(const SystemSpec& spec, double u0_max, int grid) {
    if (!(u0_max > 0.0)) throw Error("find_cycles requires u0_max > 0");
    if (grid < 8) throw Error("find_cycles requires grid >= 8");

    const double u0_min = 1e-6 * u0_max;
    std::vector<double> us, ds;
    us.reserve(static_cast<size_t>(grid));
    ds.reserve(static_cast<size_t>(grid));

    // Roots cluster multiplicatively near u0 = 0, so scan a log-spaced grid.
    // Crossing orbits disappear at the large-u0 (small-amplitude) end first;
    // shrink the effective range at the first failure.
    for (int i = 0; i < grid; ++i) {
        const double u = u0_min * std::pow(u0_max / u0_min,
                                           static_cast<double>(i) / (grid - 1));
        try {
            const double d = displacement_numeric(spec, u);
            us.push_back(u);
            ds.push_back(d);
        } catch (const NoCrossing&) {
            break;
        } catch (const SlidingContact&) {
            break;
        }
    }
    if (us.empty())
        throw EmptyRange("no u0 in (0, " + std::to_string(u0_max) +
                         "] yields crossing orbits");

    CycleScan scan;
    scan.u0_min_effective = us.front();
    scan.u0_max_effective = us.back();

    double flatness = 0.0;
    for (size_t i = 0; i < us.size(); ++i)
        flatness = std::max(flatness, std::abs(ds[i]) / us[i]);
    if (flatness <= kAnnulusTol) {
        scan.period_annulus = true;
        return scan;
    }

    std::vector<double> roots;
    for (size_t i = 0; i + 1 < us.size(); ++i) {
        const double fa = ds[i], fb = ds[i + 1];
        if (fa == 0.0 || (fa > 0.0) == (fb > 0.0)) continue;
        // Skip brackets that live entirely in evaluation noise.
        if (std::max(std::abs(fa), std::abs(fb)) <= 1e-13 * us[i]) continue;
        roots.push_back(refine_root(spec, us[i], us[i + 1], fa, fb));
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> unique_roots;
    for (const double r : roots) {
        if (!unique_roots.empty() &&
            r - unique_roots.back() <= 1e-9 * std::max(r, unique_roots.back()))
            continue;
        unique_roots.push_back(r);
    }

    for (const double r : unique_roots) scan.cycles.push_back(make_cycle(spec, r));
    return scan;
}

TruncationRoots truncation_roots(const std::array<double, 4>& deltas) {
    if (std::abs(deltas[3]) < 1e-300)
        throw DegenerateLeading("leading displacement coefficient is numerically zero");

    // Positive roots of the quartic are the positive roots of the cofactor
    // cubic Delta_4 u^3 + Delta_3 u^2 + Delta_2 u + Delta_1.
    const detail::CubicRoots cubic = detail::solve_monic_cubic(
        deltas[2] / deltas[3], deltas[1] / deltas[3], deltas[0] / deltas[3]);

    TruncationRoots out;
    for (int i = 0; i < cubic.distinct; ++i) {
        const double r = cubic.roots[static_cast<size_t>(i)];
        if (r > 0.0) {
            out.roots.push_back(r);
            out.multiplicities.push_back(cubic.mults[static_cast<size_t>(i)]);
        }
    }
    return out;
}

}  // namespace pwlinf
