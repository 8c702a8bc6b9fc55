#pragma once

#include <cmath>
#include <numbers>

namespace gdisc {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }
inline double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, kTwoPi);
  if (w <= -kPi) w += kTwoPi;
  return w;
}

/// Maps an angle to [0, 2pi).
inline double normalize_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

/// Closed time interval.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double t) const { return t >= lo && t <= hi; }
  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

}  // namespace gdisc
