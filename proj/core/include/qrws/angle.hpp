#pragma once

#include <cmath>
#include <compare>
#include <numbers>
#include <stdexcept>

namespace qrws {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Maps any finite angle to its canonical representative in [0, 2*pi).
inline double reduce_angle(double radians) {
    double r = std::fmod(radians, two_pi);
    if (r < 0.0) r += two_pi;
    // adding two_pi to a tiny negative remainder can round up to two_pi itself
    return r >= two_pi ? 0.0 : r;
}

/// An angle in radians, kept in canonical form [0, 2*pi) from construction on.
class PhaseAngle {
  public:
    constexpr PhaseAngle() = default;

    explicit PhaseAngle(double radians) {
        if (!std::isfinite(radians))
            throw std::invalid_argument("PhaseAngle: angle must be finite");
        value_ = reduce_angle(radians);
    }

    [[nodiscard]] double value() const { return value_; }

    friend auto operator<=>(const PhaseAngle&, const PhaseAngle&) = default;

  private:
    double value_ = 0.0;
};

/// Distance between two angles on the circle, in [0, pi].
inline double circular_distance(double a, double b) {
    const double d = reduce_angle(a - b);
    return d > std::numbers::pi ? two_pi - d : d;
}

} // namespace qrws
