#pragma once

#include <array>
#include <vector>

#include "pwlinf/params.hpp"

namespace pwlinf {

/// Power series in u0 with zero constant term, truncated at a fixed order.
/// coeffs[k-1] holds the coefficient of u0^k.
struct TruncatedSeries {
    int order = 0;
    std::vector<double> coeffs;

    TruncatedSeries() = default;
    explicit TruncatedSeries(int n) : order(n), coeffs(static_cast<size_t>(n), 0.0) {}

    /// Coefficient of u0^k, 1 <= k <= order.
    [[nodiscard]] double coeff(int k) const { return coeffs.at(static_cast<size_t>(k - 1)); }

    /// Horner evaluation of the truncated polynomial at u0.
    [[nodiscard]] double evaluate(double u0) const {
        double acc = 0.0;
        for (int k = order; k >= 1; --k) acc = (acc + coeff(k)) * u0;
        return acc;
    }
};

/// One zone's half-return expansion: the arrival coordinate u1 as a series in
/// the departure coordinate u0, together with the flight-time correction
/// s = tau - pi as a series in u0. The leading coefficient of u_series is
/// -exp_factor, where exp_factor is e^(-gamma_L pi) for side L and
/// e^(gamma_R pi) for side R.
struct HalfReturnSeries {
    Zone side = Zone::L;
    TruncatedSeries u_series;
    TruncatedSeries time_series;
    double exp_factor = 1.0;
};

/// Coefficients of the displacement map Delta(u0) = L(u0) - R(u0). Positive
/// zeros of Delta correspond one-to-one with periodic orbits near infinity.
struct DisplacementSeries {
    int order = 0;
    std::vector<double> deltas;

    [[nodiscard]] double delta(int k) const { return deltas.at(static_cast<size_t>(k - 1)); }
    [[nodiscard]] double evaluate(double u0) const {
        double acc = 0.0;
        for (int k = order; k >= 1; --k) acc = (acc + delta(k)) * u0;
        return acc;
    }
};

/// Default cap on the truncation order. Far beyond what the bifurcation
/// analysis needs (order 4); bounded to keep composition cost trivial.
inline constexpr int kDefaultOrderCap = 32;

/// Solve the desingularized closing equation of one zone order by order.
///
/// The closing equation relates the vector field at the departure and arrival
/// points of a half turn through e^(A s), expanded with the closed identity
/// e^(A s) = e^(gamma s)(cos s I + sin s (A - gamma I)), valid because
/// (A - gamma I)^2 = -I for the zone matrices. Composing the scalar series
/// exp/cos/sin with the unknown time series makes each order a linear solve
/// with the constant full-rank Jacobian of the system, so the construction
/// cannot break down for finite inputs.
///
/// The right side is obtained from the left solver through the half-plane
/// mirror symmetry (gamma, alpha, b) -> (-gamma_R, -alpha_R, -b).
///
/// Throws OrderTooLarge if order exceeds order_cap.
[[nodiscard]] HalfReturnSeries half_return_series(const SystemSpec& spec, Zone side,
                                                  int order,
                                                  int order_cap = kDefaultOrderCap);

/// Displacement coefficients Delta_i = L_i - R_i up to the given order.
[[nodiscard]] DisplacementSeries displacement_series(const SystemSpec& spec, int order,
                                                     int order_cap = kDefaultOrderCap);

/// Closed-form expressions for the first four coefficients of both half maps
/// and the first two time-correction coefficients. Independent oracle for the
/// order-by-order solver at orders <= 4.
struct ClosedFormCoeffs {
    std::array<double, 4> L{};  ///< L1..L4
    std::array<double, 4> R{};  ///< R1..R4
    double beta1 = 0.0;         ///< leading flight-time corrections, left side
    double beta2 = 0.0;
};

[[nodiscard]] ClosedFormCoeffs closed_form_coeffs(const SystemSpec& spec);

/// Delta_1..Delta_4 from the closed forms with extended-precision internals.
/// Parameters are given in equilibrium form. Near an order-3 critical point
/// the difference e^(pi gamma_R) - e^(-pi gamma_L) cancels seven leading
/// digits, which double arithmetic turns into ~1e-11 noise on the truncation
/// roots; pass exact rational quotients as long double to keep the digits.
[[nodiscard]] std::array<double, 4> closed_form_deltas_extended(
    long double gamma_L, long double x_L, long double gamma_R, long double x_R,
    long double b);

/// Substitute a solved (u, time) series pair back into the closing equation
/// and report, per collected power of u0, the residual relative to the
/// magnitude of the collected terms. A correct solution stays below ~1e-10.
[[nodiscard]] std::vector<double> closing_residual(const SystemSpec& spec, Zone side,
                                                   const TruncatedSeries& u_series,
                                                   const TruncatedSeries& time_series);

}  // namespace pwlinf
