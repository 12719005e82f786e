#pragma once

#include <array>
#include <optional>

#include "pwlinf/params.hpp"

namespace pwlinf {

enum class OrbitKind { Hyperbolic, WeakFocus, Center };
enum class Stability { Stable, Unstable, NonIsolated };

/// Period-annulus families at infinity:
///   A: gamma_L = gamma_R = 0, b = 0 (reversible w.r.t. y = 0),
///   B: gamma_L = -gamma_R != 0, x_L = x_R = 0, b = 0,
///   C: gamma_L = -gamma_R != 0, x_L = -x_R != 0, b = 0
/// (B and C reversible w.r.t. x = 0).
enum class CenterType { A, B, C };

/// Parameter combinations that drove the verdict, plus the leading
/// displacement coefficients for cross-checking.
struct ClassificationWitness {
    double gamma_sum = 0.0;   ///< gamma_L + gamma_R
    double y_diff = 0.0;      ///< y_L - y_R
    double x_sq_diff = 0.0;   ///< x_L^2 - x_R^2
    double x_diff = 0.0;      ///< x_L - x_R
    double x_sum = 0.0;       ///< x_L + x_R
    double gamma_L = 0.0;
    double x_L = 0.0;
    double b = 0.0;
    std::array<double, 4> leading_deltas{};
    /// For type-C centers: whether the zone equilibria are real
    /// (x_L < 0 < x_R). Hint only; globality of the annulus is not certified.
    std::optional<bool> equilibria_real;
};

struct InfinityClass {
    OrbitKind kind = OrbitKind::Hyperbolic;
    Stability stability = Stability::Stable;
    std::optional<int> order;             ///< weak-focus order 1..3
    std::optional<CenterType> center_type;
    ClassificationWitness witness;
};

inline constexpr double kClassifyTol = 1e-11;

/// Classify the periodic orbit at infinity from exact parameter conditions
/// (never from thresholded floating Delta values): hyperbolic when
/// gamma_L + gamma_R != 0, with stability given by its sign; otherwise
/// weak-focus of order 1..3 or center, following the vanishing pattern of the
/// defining combinations. Combinations inside the band (tol, 10 tol) raise
/// AmbiguousNearBoundary instead of guessing.
[[nodiscard]] InfinityClass classify_infinity(const SystemSpec& spec,
                                              double tol = kClassifyTol);

}  // namespace pwlinf
