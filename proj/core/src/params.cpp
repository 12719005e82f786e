#include "pwlinf/params.hpp"

#include <cmath>

namespace pwlinf {

SystemSpec canonicalize(const LienardSpec& spec) {
    if (!spec.zone_is_focus(Zone::L)) throw NonFocusZone(Zone::L, spec.T_L, spec.D_L);
    if (!spec.zone_is_focus(Zone::R)) throw NonFocusZone(Zone::R, spec.T_R, spec.D_R);

    const double omega_L = std::sqrt(spec.D_L - 0.25 * spec.T_L * spec.T_L);
    const double omega_R = std::sqrt(spec.D_R - 0.25 * spec.T_R * spec.T_R);

    SystemSpec out;
    out.gamma_L = 0.5 * spec.T_L / omega_L;
    out.gamma_R = 0.5 * spec.T_R / omega_R;
    out.alpha_L = spec.a_L / omega_L;
    out.alpha_R = spec.a_R / omega_R;
    out.b = spec.b;
    return out;
}

LienardSpec lienard_representative(const SystemSpec& spec) {
    LienardSpec out;
    out.T_L = 2.0 * spec.gamma_L;
    out.T_R = 2.0 * spec.gamma_R;
    out.D_L = 1.0 + spec.gamma_L * spec.gamma_L;
    out.D_R = 1.0 + spec.gamma_R * spec.gamma_R;
    out.a_L = spec.alpha_L;
    out.a_R = spec.alpha_R;
    out.b = spec.b;
    return out;
}

EquilibriumSpec to_equilibrium(const SystemSpec& spec) {
    EquilibriumSpec out;
    out.gamma_L = spec.gamma_L;
    out.gamma_R = spec.gamma_R;
    out.x_L = spec.x_L();
    out.x_R = spec.x_R();
    out.y_L = spec.y_L();
    out.y_R = spec.y_R();
    out.b = spec.b;
    return out;
}

RecenteredSpec from_equilibrium(const EquilibriumSpec& spec, double tol) {
    double shift = 0.0;
    EquilibriumSpec centered = spec;
    if (spec.consistency_residual() > tol) {
        // The unique y-translation placing the origin at the midpoint of the
        // sliding segment.
        shift = 0.5 * (spec.y_L + spec.y_R) - spec.gamma_L * spec.x_L -
                spec.gamma_R * spec.x_R;
        centered.y_L = spec.y_L - shift;
        centered.y_R = spec.y_R - shift;
    }

    SystemSpec out;
    out.gamma_L = centered.gamma_L;
    out.gamma_R = centered.gamma_R;
    out.alpha_L = (1.0 + centered.gamma_L * centered.gamma_L) * centered.x_L;
    out.alpha_R = (1.0 + centered.gamma_R * centered.gamma_R) * centered.x_R;
    out.b = 2.0 * centered.gamma_L * centered.x_L - centered.y_L;
    return {out, shift};
}

bool is_continuous(const SystemSpec& spec) {
    return spec.b == 0.0 && spec.alpha_L == spec.alpha_R;
}

EquilibriumSpec apply_symmetry(const EquilibriumSpec& spec, Symmetry which) {
    EquilibriumSpec out = spec;
    switch (which) {
        case Symmetry::XFlip:
            out.gamma_L = -spec.gamma_R;
            out.x_L = -spec.x_R;
            out.b = -spec.b;
            out.gamma_R = -spec.gamma_L;
            out.x_R = -spec.x_L;
            break;
        case Symmetry::YFlip:
            out.gamma_L = -spec.gamma_L;
            out.x_L = spec.x_L;
            out.b = -spec.b;
            out.gamma_R = -spec.gamma_R;
            out.x_R = spec.x_R;
            break;
        case Symmetry::Both:
            out.gamma_L = spec.gamma_R;
            out.x_L = spec.x_R;
            out.b = spec.b;
            out.gamma_R = spec.gamma_L;
            out.x_R = spec.x_L;
            break;
    }
    out.y_L = 2.0 * out.gamma_L * out.x_L - out.b;
    out.y_R = 2.0 * out.gamma_R * out.x_R + out.b;
    return out;
}

}  // namespace pwlinf
