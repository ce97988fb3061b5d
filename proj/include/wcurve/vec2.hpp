#pragma once

#include <cmath>

namespace wcurve {

// Point in the plane; value type of the curve, the stable direction, the
// bridge map and fiber positions.
struct Vec2 {
  double v1 = 0.0;
  double v2 = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double a, double b) : v1(a), v2(b) {}

  constexpr Vec2& operator+=(Vec2 o) {
    v1 += o.v1;
    v2 += o.v2;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    v1 -= o.v1;
    v2 -= o.v2;
    return *this;
  }
  constexpr Vec2 operator+(Vec2 o) const { return {v1 + o.v1, v2 + o.v2}; }
  constexpr Vec2 operator-(Vec2 o) const { return {v1 - o.v1, v2 - o.v2}; }
  constexpr Vec2 operator-() const { return {-v1, -v2}; }

  constexpr double squared_norm() const { return v1 * v1 + v2 * v2; }
  double norm() const { return std::sqrt(squared_norm()); }
};

constexpr Vec2 operator*(double c, Vec2 v) { return {c * v.v1, c * v.v2}; }
constexpr Vec2 operator*(Vec2 v, double c) { return c * v; }

}  // namespace wcurve
