#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace pwlinf {

enum class Zone : char { L = 'L', R = 'R' };

[[nodiscard]] constexpr char zone_letter(Zone z) { return static_cast<char>(z); }

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A Lienard-form zone fails the monodromy condition T^2 - 4D < 0.
class NonFocusZone : public Error {
public:
    NonFocusZone(Zone zone, double trace, double det)
        : Error(std::string("zone ") + zone_letter(zone) +
                " is not of focus type: T^2 - 4D = " +
                std::to_string(trace * trace - 4.0 * det) + " >= 0"),
          zone_(zone) {}
    [[nodiscard]] Zone zone() const { return zone_; }

private:
    Zone zone_;
};

/// Requested series order exceeds the configured cap.
class OrderTooLarge : public Error {
public:
    OrderTooLarge(int requested, int cap)
        : Error("series order " + std::to_string(requested) +
                " exceeds cap " + std::to_string(cap)) {}
};

/// No sign change of x(t) was bracketed inside the admissible time window.
class NoCrossing : public Error {
public:
    explicit NoCrossing(Zone side, const std::string& detail = {})
        : Error(std::string("no crossing for side ") + zone_letter(side) +
                (detail.empty() ? "" : ": " + detail)),
          side_(side) {}
    [[nodiscard]] Zone side() const { return side_; }

private:
    Zone side_;
};

/// The arrival ordinate lies inside the sliding segment |y| <= |b|.
class SlidingContact : public Error {
public:
    SlidingContact(Zone side, double y_out, double b)
        : Error(std::string("side ") + zone_letter(side) + " arrives at y = " +
                std::to_string(y_out) + " inside the sliding segment |y| <= " +
                std::to_string(std::abs(b))),
          side_(side) {}
    [[nodiscard]] Zone side() const { return side_; }

private:
    Zone side_;
};

/// No u0 in the requested range yields a crossing orbit.
class EmptyRange : public Error {
public:
    using Error::Error;
};

/// Leading coefficient of the truncation polynomial is numerically zero.
class DegenerateLeading : public Error {
public:
    using Error::Error;
};

/// Newton iterate left the locality ball around the critical point.
class OutsideLocality : public Error {
public:
    using Error::Error;
};

/// Newton failed to converge within the iteration budget.
class NoConvergence : public Error {
public:
    using Error::Error;
};

/// Richardson extrapolation of the difference Jacobian did not settle.
class StepTooSmall : public Error {
public:
    using Error::Error;
};

/// A classification quantity fell inside the ambiguity band (tol, 10 tol).
class AmbiguousNearBoundary : public Error {
public:
    AmbiguousNearBoundary(const std::string& quantity, double value, double tol)
        : Error("classification ambiguous: |" + quantity + "| = " +
                std::to_string(std::abs(value)) + " lies in the band (" +
                std::to_string(tol) + ", " + std::to_string(10.0 * tol) + ")") {}
};

/// Malformed input file or JSON document.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace pwlinf
