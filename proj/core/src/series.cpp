#include "pwlinf/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace pwlinf {
namespace {

constexpr double kPi = std::numbers::pi;

// Dense truncated series including the constant term; c[k] multiplies u0^k.
struct Dense {
    std::vector<double> c;
    explicit Dense(int top) : c(static_cast<size_t>(top) + 1, 0.0) {}
    [[nodiscard]] int top() const { return static_cast<int>(c.size()) - 1; }
};

Dense mul(const Dense& a, const Dense& b) {
    Dense out(a.top());
    for (int i = 0; i <= a.top(); ++i) {
        const double ai = a.c[static_cast<size_t>(i)];
        if (ai == 0.0) continue;
        const int jmax = std::min(a.top() - i, b.top());
        for (int j = 0; j <= jmax; ++j)
            out.c[static_cast<size_t>(i + j)] += ai * b.c[static_cast<size_t>(j)];
    }
    return out;
}

void add_in_place(Dense& acc, const Dense& x) {
    for (size_t i = 0; i < acc.c.size(); ++i) acc.c[i] += x.c[i];
}

// Horner composition of a scalar Taylor polynomial with a series whose
// constant term vanishes.
Dense compose(const std::vector<double>& taylor, const Dense& inner) {
    Dense out(inner.top());
    out.c[0] = taylor.back();
    for (int k = static_cast<int>(taylor.size()) - 2; k >= 0; --k) {
        out = mul(out, inner);
        out.c[0] += taylor[static_cast<size_t>(k)];
    }
    return out;
}

// Taylor coefficients of e^(gamma s) cos s and e^(gamma s) sin s up to s^n:
// p_k + i q_k = (gamma + i)^k / k!.
void rotation_taylor(double gamma, int n, std::vector<double>& p, std::vector<double>& q) {
    p.assign(static_cast<size_t>(n) + 1, 0.0);
    q.assign(static_cast<size_t>(n) + 1, 0.0);
    std::complex<double> z(1.0, 0.0);
    const std::complex<double> lambda(gamma, 1.0);
    double factorial = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            z *= lambda;
            factorial *= static_cast<double>(k);
        }
        p[static_cast<size_t>(k)] = z.real() / factorial;
        q[static_cast<size_t>(k)] = z.imag() / factorial;
    }
}

struct ClosingTerms {
    Dense f1;      // e (u0 + b u0 u1) + u1 (P w1 + Q (gamma w1 - w2))
    Dense f2;      // e alpha u0 + P w2 + Q ((1 + gamma^2) w1 - gamma w2)
    Dense scale1;  // per-order sums of |term| contributions, for relative residuals
    Dense scale2;
};

// Assemble both components of the desingularized closing equation for the
// current (u, s) series.
ClosingTerms assemble(double gamma, double alpha, double b, double efac,
                      const Dense& u, const Dense& s,
                      const std::vector<double>& pk, const std::vector<double>& qk) {
    const int n = u.top();
    const double gs = 1.0 + gamma * gamma;

    Dense w1(n), w2(n);
    w1.c[0] = 1.0;
    if (n >= 1) {
        w1.c[1] = b;
        w2.c[1] = alpha;
    }

    const Dense P = compose(pk, s);
    const Dense Q = compose(qk, s);

    Dense gw1_w2(n), v(n);
    for (int i = 0; i <= n; ++i) {
        gw1_w2.c[static_cast<size_t>(i)] =
            gamma * w1.c[static_cast<size_t>(i)] - w2.c[static_cast<size_t>(i)];
        v.c[static_cast<size_t>(i)] =
            gs * w1.c[static_cast<size_t>(i)] - gamma * w2.c[static_cast<size_t>(i)];
    }

    Dense x_row = mul(P, w1);
    add_in_place(x_row, mul(Q, gw1_w2));

    ClosingTerms out{Dense(n), Dense(n), Dense(n), Dense(n)};

    const Dense t_flow1 = mul(u, x_row);
    out.f1 = t_flow1;
    if (n >= 1) out.f1.c[1] += efac;
    for (int i = 1; i + 1 <= n; ++i)  // e b u0 u1
        out.f1.c[static_cast<size_t>(i + 1)] += efac * b * u.c[static_cast<size_t>(i)];
    for (int i = 0; i <= n; ++i)
        out.scale1.c[static_cast<size_t>(i)] = std::abs(t_flow1.c[static_cast<size_t>(i)]);
    if (n >= 1) out.scale1.c[1] += efac;
    for (int i = 1; i + 1 <= n; ++i)
        out.scale1.c[static_cast<size_t>(i + 1)] +=
            std::abs(efac * b * u.c[static_cast<size_t>(i)]);

    const Dense t_pw2 = mul(P, w2);
    const Dense t_qv = mul(Q, v);
    out.f2 = t_pw2;
    add_in_place(out.f2, t_qv);
    if (n >= 1) out.f2.c[1] += efac * alpha;
    for (int i = 0; i <= n; ++i)
        out.scale2.c[static_cast<size_t>(i)] =
            std::abs(t_pw2.c[static_cast<size_t>(i)]) + std::abs(t_qv.c[static_cast<size_t>(i)]);
    if (n >= 1) out.scale2.c[1] += std::abs(efac * alpha);

    return out;
}

struct HalfSolution {
    Dense u;
    Dense s;
    double exp_factor;
    HalfSolution(int n, double e) : u(n), s(n), exp_factor(e) {}
};

// Left-map orientation solver. At each order k the two closing components are
// linear in (u_k, s_k) with the constant diagonal (1, 1 + gamma^2), so the
// update is a direct two-entry solve.
HalfSolution solve_half(double gamma, double alpha, double b, int order) {
    const double efac = std::exp(-gamma * kPi);
    const double gs = 1.0 + gamma * gamma;

    std::vector<double> pk, qk;
    rotation_taylor(gamma, order, pk, qk);

    HalfSolution sol(order, efac);
    for (int k = 1; k <= order; ++k) {
        const ClosingTerms f = assemble(gamma, alpha, b, efac, sol.u, sol.s, pk, qk);
        sol.u.c[static_cast<size_t>(k)] = -f.f1.c[static_cast<size_t>(k)];
        sol.s.c[static_cast<size_t>(k)] = -f.f2.c[static_cast<size_t>(k)] / gs;
    }
    return sol;
}

// Orientation parameters of the generic solver for each side: the right map
// is the left map of the half-plane mirror image.
struct SideParams {
    double gamma, alpha, b;
};

SideParams side_params(const SystemSpec& spec, Zone side) {
    if (side == Zone::L) return {spec.gamma_L, spec.alpha_L, spec.b};
    return {-spec.gamma_R, -spec.alpha_R, -spec.b};
}

std::array<double, 4> closed_half_coeffs(double gamma, double x, double y) {
    const double e = std::exp(-gamma * kPi);
    const double gs = 1.0 + gamma * gamma;
    const double q = gs * (2.0 * gamma * (1.0 - e + e * e) / 3.0 * x * x * x +
                           (e - 1.0) * (2.0 * e + 3.0) / 2.0 * x * x * y) +
                     (1.0 + e) * (1.0 + e) * y * y * y;
    return {
        -e,
        -e * (1.0 + e) * y,
        -e * (1.0 + e) * (gs * (e - 1.0) / 2.0 * x * x + (1.0 + e) * y * y),
        -e * (1.0 + e) * q,
    };
}

}  // namespace

HalfReturnSeries half_return_series(const SystemSpec& spec, Zone side, int order,
                                    int order_cap) {
    if (order < 1) throw Error("series order must be >= 1");
    if (order > order_cap) throw OrderTooLarge(order, order_cap);

    const SideParams p = side_params(spec, side);
    const HalfSolution sol = solve_half(p.gamma, p.alpha, p.b, order);

    HalfReturnSeries out;
    out.side = side;
    out.exp_factor = sol.exp_factor;
    out.u_series = TruncatedSeries(order);
    out.time_series = TruncatedSeries(order);
    for (int k = 1; k <= order; ++k) {
        out.u_series.coeffs[static_cast<size_t>(k - 1)] = sol.u.c[static_cast<size_t>(k)];
        out.time_series.coeffs[static_cast<size_t>(k - 1)] = sol.s.c[static_cast<size_t>(k)];
    }
    return out;
}

DisplacementSeries displacement_series(const SystemSpec& spec, int order, int order_cap) {
    const HalfReturnSeries left = half_return_series(spec, Zone::L, order, order_cap);
    const HalfReturnSeries right = half_return_series(spec, Zone::R, order, order_cap);

    DisplacementSeries out;
    out.order = order;
    out.deltas.resize(static_cast<size_t>(order));
    for (int k = 1; k <= order; ++k)
        out.deltas[static_cast<size_t>(k - 1)] =
            left.u_series.coeff(k) - right.u_series.coeff(k);
    return out;
}

ClosedFormCoeffs closed_form_coeffs(const SystemSpec& spec) {
    ClosedFormCoeffs out;
    out.L = closed_half_coeffs(spec.gamma_L, spec.x_L(), spec.y_L());
    out.R = closed_half_coeffs(-spec.gamma_R, -spec.x_R(), spec.y_R());
    const double e_left = std::exp(-spec.gamma_L * kPi);
    out.beta1 = -(1.0 + e_left) * spec.x_L();
    out.beta2 = -spec.b * out.beta1 - spec.gamma_L * out.beta1 * out.beta1;
    return out;
}

std::array<double, 4> closed_form_deltas_extended(long double gamma_L, long double x_L,
                                                  long double gamma_R, long double x_R,
                                                  long double b) {
    constexpr long double pi_l = std::numbers::pi_v<long double>;
    const auto half = [](long double gamma, long double x, long double y) {
        const long double e = std::exp(-gamma * pi_l);
        const long double gs = 1.0L + gamma * gamma;
        const long double q = gs * (2.0L * gamma * (1.0L - e + e * e) / 3.0L * x * x * x +
                                    (e - 1.0L) * (2.0L * e + 3.0L) / 2.0L * x * x * y) +
                              (1.0L + e) * (1.0L + e) * y * y * y;
        return std::array<long double, 4>{
            -e,
            -e * (1.0L + e) * y,
            -e * (1.0L + e) * (gs * (e - 1.0L) / 2.0L * x * x + (1.0L + e) * y * y),
            -e * (1.0L + e) * q,
        };
    };
    const long double y_left = 2.0L * gamma_L * x_L - b;
    const long double y_right = 2.0L * gamma_R * x_R + b;
    const auto left = half(gamma_L, x_L, y_left);
    const auto right = half(-gamma_R, -x_R, y_right);
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i)
        out[static_cast<size_t>(i)] =
            static_cast<double>(left[static_cast<size_t>(i)] - right[static_cast<size_t>(i)]);
    return out;
}

std::vector<double> closing_residual(const SystemSpec& spec, Zone side,
                                     const TruncatedSeries& u_series,
                                     const TruncatedSeries& time_series) {
    const int order = u_series.order;
    if (time_series.order != order) throw Error("series orders differ");

    const SideParams p = side_params(spec, side);
    const double efac = std::exp(-p.gamma * kPi);

    std::vector<double> pk, qk;
    rotation_taylor(p.gamma, order, pk, qk);

    Dense u(order), s(order);
    for (int k = 1; k <= order; ++k) {
        u.c[static_cast<size_t>(k)] = u_series.coeff(k);
        s.c[static_cast<size_t>(k)] = time_series.coeff(k);
    }

    const ClosingTerms f = assemble(p.gamma, p.alpha, p.b, efac, u, s, pk, qk);
    std::vector<double> rel(static_cast<size_t>(order), 0.0);
    for (int k = 1; k <= order; ++k) {
        const double r1 = std::abs(f.f1.c[static_cast<size_t>(k)]) /
                          std::max(1.0, f.scale1.c[static_cast<size_t>(k)]);
        const double r2 = std::abs(f.f2.c[static_cast<size_t>(k)]) /
                          std::max(1.0, f.scale2.c[static_cast<size_t>(k)]);
        rel[static_cast<size_t>(k - 1)] = std::max(r1, r2);
    }
    return rel;
}

}  // namespace pwlinf
