#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pwlinf/classify.hpp"
#include "pwlinf/params.hpp"

namespace pwlinf {

/// A big-amplitude limit cycle, identified by a simple positive zero of the
/// displacement map.
struct LimitCycle {
    double u0_root = 0.0;
    double y_top = 0.0;              ///< upper crossing ordinate, 1/u0_root
    double y_bottom = 0.0;           ///< lower crossing ordinate
    double tau_L = 0.0;              ///< left-zone flight time
    double tau_R = 0.0;              ///< right-zone flight time
    double displacement_slope = 0.0; ///< numeric Delta'(u0_root)
    double multiplier_proxy = 1.0;   ///< L'(u0)/R'(u0), return-map derivative
    bool hyperbolic = false;
    /// Stable iff Delta' > 0 at the root (the full-turn return map in u is
    /// then a contraction). Empty when the slope is below tolerance.
    std::optional<Stability> stability;
};

struct CycleScan {
    std::vector<LimitCycle> cycles;   ///< sorted by u0_root ascending
    bool period_annulus = false;      ///< Delta was 0 within tolerance on the grid
    double u0_min_effective = 0.0;    ///< scanned range actually usable
    double u0_max_effective = 0.0;
};

/// Scan the numeric displacement over a log-spaced grid in (0, u0_max],
/// bracket sign changes, polish each by safeguarded Newton, and deduplicate.
/// Completeness is relative to the grid. The range shrinks automatically when
/// crossing orbits cease to exist; throws EmptyRange if no grid point yields
/// a crossing orbit.
[[nodiscard]] CycleScan find_cycles(const SystemSpec& spec, double u0_max,
                                    int grid = 400);

struct TruncationRoots {
    std::vector<double> roots;        ///< positive roots, ascending
    std::vector<int> multiplicities;
};

/// Positive roots of Delta_1 u + Delta_2 u^2 + Delta_3 u^3 + Delta_4 u^4 via
/// closed-form solution of the cofactor cubic, refined by Newton.
/// Throws DegenerateLeading when |Delta_4| < 1e-300.
[[nodiscard]] TruncationRoots truncation_roots(const std::array<double, 4>& deltas);

}  // namespace pwlinf
