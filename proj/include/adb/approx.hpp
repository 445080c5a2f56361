#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <optional>
#include <span>

#include "adb/errors.hpp"

namespace adb {

/// Membership value in [0, 1]: 1 at the region center, 0 at its boundary.
class Degree {
 public:
  explicit constexpr Degree(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0))
      throw Error("degree outside [0, 1]");
  }

  constexpr double value() const noexcept { return value_; }

  friend constexpr auto operator<=>(Degree, Degree) = default;

 private:
  double value_;
};

/// Closed interval [center - left_radius, center + right_radius] of values
/// counted as approximate to the center. One radius may be zero (one-sided
/// regions arise at the first and last grid node), but not both.
class ApproximationRegion {
 public:
  ApproximationRegion(double center, double left_radius, double right_radius)
      : center_(center), left_radius_(left_radius), right_radius_(right_radius) {
    if (!std::isfinite(center) || !std::isfinite(left_radius) ||
        !std::isfinite(right_radius))
      throw Error("approximation region must be finite");
    if (left_radius < 0.0 || right_radius < 0.0)
      throw Error("approximation radii must be nonnegative");
    if (left_radius + right_radius <= 0.0)
      throw Error("approximation region must have positive width");
  }

  double center() const noexcept { return center_; }
  double left_radius() const noexcept { return left_radius_; }
  double right_radius() const noexcept { return right_radius_; }
  double lower() const noexcept { return center_ - left_radius_; }
  double upper() const noexcept { return center_ + right_radius_; }

  bool contains(double x) const noexcept { return x >= lower() && x <= upper(); }

 private:
  double center_;
  double left_radius_;
  double right_radius_;
};

enum class Side { Left, Right };

/// Degree of approximation of x to the region center: piecewise linear,
/// 1 at the center, 0 at the region boundary, empty outside the region.
inline std::optional<Degree> approximation_degree(const ApproximationRegion& region,
                                                  double x) {
  if (!region.contains(x)) return std::nullopt;
  if (x == region.center()) return Degree(1.0);
  if (x < region.center())
    return Degree((x - region.lower()) / (region.center() - region.lower()));
  return Degree((x - region.upper()) / (region.center() - region.upper()));
}

/// Inverse of the degree function on the chosen side: recovers the unique x
/// with that degree. Degrees below 1 are not invertible on a zero-radius side.
inline double inverse_degree(const ApproximationRegion& region, Degree d, Side side) {
  const double radius =
      side == Side::Left ? region.left_radius() : region.right_radius();
  if (radius == 0.0 && d.value() < 1.0)
    throw ZeroRadiusSide("cannot invert degree < 1 on a zero-radius side");
  if (side == Side::Left)
    return d.value() * (region.center() - region.lower()) + region.lower();
  return d.value() * (region.center() - region.upper()) + region.upper();
}

/// Degree of a vector to a vector under strict (component-wise) approximation:
/// empty if any component falls outside its region, otherwise the minimum of
/// the component degrees.
inline std::optional<Degree> vector_degree(
    std::span<const std::optional<Degree>> components) {
  if (components.empty()) throw EmptyInput("vector_degree needs at least one component");
  double m = 1.0;
  for (const auto& c : components) {
    if (!c) return std::nullopt;
    m = std::min(m, c->value());
  }
  return Degree(m);
}

}  // namespace adb
