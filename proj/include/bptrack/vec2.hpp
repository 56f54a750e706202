#pragma once

#include <cmath>

namespace bptrack {

// Plain 2-D vector. Doubles throughout; no SIMD, the hot loops are
// dominated by exp/acos calls anyway.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }

  constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  // z component of the 3-D cross product; sign gives the side of this w.r.t. o.
  constexpr double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  constexpr double squared_norm() const { return x * x + y * y; }

  Vec2 normalized() const {
    const double n = norm();
    return {x / n, y / n};
  }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

// Rotation by angle (counterclockwise, radians).
inline Vec2 rotated(const Vec2& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Receiver pose: position plus unit heading. norm(orientation) == 1 within 1e-12
// is required by every consumer; is_unit() is the check used at validation points.
struct Pose {
  Vec2 position;
  Vec2 orientation{1.0, 0.0};

  bool is_unit(double tol = 1e-12) const {
    return std::abs(orientation.norm() - 1.0) <= tol;
  }
};

}  // namespace bptrack
