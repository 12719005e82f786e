#pragma once

#include <cmath>

#include "pwlinf/errors.hpp"

namespace pwlinf {

/// Lienard canonical form of the two-zone system. Each half-plane carries
/// the linear field (T x - y - b_zone, D x - a) with b_L = b and b_R = -b.
struct LienardSpec {
    double T_L = 0.0, T_R = 0.0;  ///< zone traces
    double D_L = 1.0, D_R = 1.0;  ///< zone determinants
    double a_L = 0.0, a_R = 0.0;  ///< zone offsets
    double b = 0.0;               ///< sliding-set half-length parameter

    [[nodiscard]] bool zone_is_focus(Zone z) const {
        const double t = (z == Zone::L) ? T_L : T_R;
        const double d = (z == Zone::L) ? D_L : D_R;
        return t * t - 4.0 * d < 0.0;
    }
};

/// Five-parameter canonical form. Zone matrices are
/// [[2 gamma, -1], [1 + gamma^2, 0]] with eigenvalues gamma +- i, so the
/// natural frequency is scaled to 1 in both zones.
struct SystemSpec {
    double gamma_L = 0.0, gamma_R = 0.0;  ///< focus damping ratios
    double alpha_L = 0.0, alpha_R = 0.0;  ///< zone offsets
    double b = 0.0;                       ///< sliding parameter

    /// Focus abscissas and ordinates of the (possibly virtual) zone equilibria.
    [[nodiscard]] double x_L() const { return alpha_L / (1.0 + gamma_L * gamma_L); }
    [[nodiscard]] double x_R() const { return alpha_R / (1.0 + gamma_R * gamma_R); }
    [[nodiscard]] double y_L() const { return 2.0 * gamma_L * x_L() - b; }
    [[nodiscard]] double y_R() const { return 2.0 * gamma_R * x_R() + b; }
};

/// Equilibrium-coordinate form: six parameters tied by the consistency
/// condition b = 2 gamma_L x_L - y_L = y_R - 2 gamma_R x_R, which places the
/// origin at the midpoint of the sliding segment.
struct EquilibriumSpec {
    double gamma_L = 0.0, gamma_R = 0.0;
    double x_L = 0.0, x_R = 0.0;
    double y_L = 0.0, y_R = 0.0;
    double b = 0.0;

    /// Defect of the consistency condition; zero for a well-formed spec.
    [[nodiscard]] double consistency_residual() const {
        const double b_left = 2.0 * gamma_L * x_L - y_L;
        const double b_right = y_R - 2.0 * gamma_R * x_R;
        double r = 0.0;
        r = std::abs(b - b_left) > r ? std::abs(b - b_left) : r;
        r = std::abs(b - b_right) > r ? std::abs(b - b_right) : r;
        return r;
    }
    [[nodiscard]] bool is_consistent(double tol = 1e-12) const {
        return consistency_residual() <= tol;
    }
};

/// Reduce a Lienard spec to the canonical five parameters,
/// gamma = (T/2) / omega and alpha = a / omega with omega = sqrt(D - T^2/4).
/// Throws NonFocusZone if a zone violates the monodromy condition.
[[nodiscard]] SystemSpec canonicalize(const LienardSpec& spec);

/// Canonical Lienard representative with omega = 1 in both zones:
/// T = 2 gamma, D = 1 + gamma^2, a = alpha. Round-trips with canonicalize.
[[nodiscard]] LienardSpec lienard_representative(const SystemSpec& spec);

/// Equilibrium coordinates of a canonical spec; the output satisfies the
/// consistency condition by construction.
[[nodiscard]] EquilibriumSpec to_equilibrium(const SystemSpec& spec);

struct RecenteredSpec {
    SystemSpec spec;
    double y_shift = 0.0;  ///< translation applied to the y coordinate
};

/// Invert to_equilibrium. Inputs violating the consistency condition beyond
/// `tol` are first re-centered by a y-translation; the applied shift is
/// reported (zero for consistent inputs).
[[nodiscard]] RecenteredSpec from_equilibrium(const EquilibriumSpec& spec,
                                              double tol = 1e-9);

/// True iff the vector field is continuous across x = 0,
/// i.e. b = 0 and alpha_L = alpha_R exactly.
[[nodiscard]] bool is_continuous(const SystemSpec& spec);

/// Parameter transformations under which the family is invariant:
/// x_flip is (x,y,t) -> (-x,y,-t), y_flip is (x,y,t) -> (x,-y,-t),
/// and both is their composition (x,y,t) -> (-x,-y,t).
enum class Symmetry { XFlip, YFlip, Both };

/// Parameter part of the symmetry; y_L and y_R are recomputed from the
/// transformed (gamma, x, b).
[[nodiscard]] EquilibriumSpec apply_symmetry(const EquilibriumSpec& spec,
                                             Symmetry which);

}  // namespace pwlinf
