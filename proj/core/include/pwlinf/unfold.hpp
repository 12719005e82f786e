#pragma once

#include <array>
#include <span>
#include <vector>

#include "pwlinf/params.hpp"

namespace pwlinf {

/// Prescribed leading displacement coefficients near an order-3 critical
/// point. Magnitudes are capped at 0.1 to stay inside the locality of the
/// implicit-function regime.
struct UnfoldingTarget {
    double delta1 = 0.0;
    double delta2 = 0.0;
    double delta3 = 0.0;
};

struct UnfoldingResult {
    double gamma_R = 0.0;
    double b = 0.0;
    double x_R = 0.0;
    std::array<double, 4> achieved{};  ///< Delta_1..Delta_4 at the solution
    double residual = 0.0;             ///< max |Delta_i - target_i|, i <= 3
    int newton_iters = 0;
};

/// Solve (Delta_1, Delta_2, Delta_3)(gamma_R, b, x_R) = target by Newton,
/// starting at the order-3 critical point
/// (gamma_R, b, x_R) = (-gamma_L, 2 gamma_L x_L, x_L) and using the analytic
/// Jacobian of the closed-form coefficients. Requires |gamma_L| > 1e-6 and
/// |x_L| > 1e-6. Throws OutsideLocality if an iterate leaves the ball of
/// radius 0.5 around the critical point and NoConvergence after 50 steps.
[[nodiscard]] UnfoldingResult order3_unfold(double gamma_L, double x_L,
                                            const UnfoldingTarget& target);

/// Parameter vector (gamma_L, gamma_R, b, x_L, x_R) for derivative probes.
using ParamVector = std::array<double, 5>;

inline constexpr int kParamGammaL = 0;
inline constexpr int kParamGammaR = 1;
inline constexpr int kParamB = 2;
inline constexpr int kParamXL = 3;
inline constexpr int kParamXR = 4;

/// Delta_1..Delta_4 of the system with equilibrium-form parameters p.
[[nodiscard]] std::array<double, 4> displacement_deltas(const ParamVector& p);

/// Central-difference Jacobian of (Delta_1..Delta_4) with respect to a subset
/// of parameters, with one Richardson halving. Rows are indexed by the Delta
/// number 1..4, columns follow `directions`.
class DeltaJacobian {
public:
    DeltaJacobian(std::vector<int> directions, std::vector<double> data)
        : directions_(std::move(directions)), data_(std::move(data)) {}

    [[nodiscard]] int cols() const { return static_cast<int>(directions_.size()); }
    [[nodiscard]] const std::vector<int>& directions() const { return directions_; }
    /// Entry d(Delta_row)/d(p_directions[col]), row in 1..4, col in 0..cols-1.
    [[nodiscard]] double at(int row, int col) const {
        return data_.at(static_cast<size_t>(row - 1) * directions_.size() +
                        static_cast<size_t>(col));
    }

private:
    std::vector<int> directions_;
    std::vector<double> data_;  // row-major, 4 x cols
};

/// Requires h in [1e-7, 1e-4]. Throws StepTooSmall when the Richardson
/// extrapolation disagrees with the half-step estimate beyond 1e-5 relative.
[[nodiscard]] DeltaJacobian delta_jacobian(const ParamVector& point,
                                           std::span<const int> directions,
                                           double h = 1e-5);

/// Determinant of a 3x3 sub-block (rows are Delta indices 1..4, cols are
/// column indices into the Jacobian).
[[nodiscard]] double jacobian_det3(const DeltaJacobian& jac, std::array<int, 3> rows,
                                   std::array<int, 3> cols);

/// Root analysis of the model quartic q(u) = d1 u + d2 u^2 + d3 u^3 + u^4.
struct ModelRegionCount {
    enum class Boundary { None, RootAtZero, DoubleRoot, TripleRoot };
    int count = 0;  ///< distinct positive roots, 0..3
    std::vector<double> roots;
    std::vector<int> multiplicities;
    Boundary boundary = Boundary::None;
    [[nodiscard]] bool on_boundary() const { return boundary != Boundary::None; }
};

/// Number of positive solutions of the model quartic, by exact root analysis
/// of the cofactor cubic. Bifurcation varieties (d1 = 0 and vanishing cubic
/// discriminant, including the cusp with a triple root) are detected within
/// 1e-12 and flagged.
[[nodiscard]] ModelRegionCount model_region_count(const std::array<double, 3>& delta);

struct RegionWindow {
    double d1_min = -1.0, d1_max = 1.0;
    double d2_min = -1.0, d2_max = 1.0;
};

/// Sampled bifurcation diagram of the model quartic in the (d1, d2) plane at
/// fixed d3: boundary varieties plus a grid of positive-root counts.
struct RegionMap {
    struct LabeledPoint {
        double d1 = 0.0, d2 = 0.0;
        int count = 0;
    };
    struct CurvePoint {
        double d1 = 0.0, d2 = 0.0;
    };
    double delta3 = 0.0;
    std::vector<CurvePoint> axis_curve;          ///< variety d1 = 0
    std::vector<CurvePoint> discriminant_curve;  ///< vanishing cubic discriminant
    std::vector<LabeledPoint> labels;            ///< resolution x resolution grid
    double cusp_d1 = 0.0, cusp_d2 = 0.0;         ///< (d3^3/27, d3^2/3)
    bool cusp_in_window = false;
};

/// Requires resolution >= 16.
[[nodiscard]] RegionMap region_boundaries(double delta3, const RegionWindow& window,
                                          int resolution);

}  // namespace pwlinf
