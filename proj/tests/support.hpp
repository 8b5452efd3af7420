#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "capdisc/geometry.hpp"
#include "capdisc/lambert.hpp"

namespace capdisc::testing {

inline Polyline circle_polygon(Vec2 c, double r, int n) {
  Polyline p;
  p.closed = true;
  p.pieces = 1;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    p.vertices.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
  }
  return p;
}

inline Polyline segment(Vec2 a, Vec2 b) {
  Polyline p;
  p.vertices = {a, b};
  p.pieces = 1;
  return p;
}

// Entries uniform in [-2, 2], redrawn until the condition number is at most `max_cond`.
inline Mat2 random_matrix(std::mt19937_64& g, double max_cond = 50.0) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    const Mat2 q{u(g), u(g), u(g), u(g)};
    const auto s = singular_values(q);
    if (s[1] > 1e-3 && s[0] / s[1] <= max_cond) return q;
  }
}

inline Vec3 random_unit(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  for (;;) {
    const Vec3 v{n(g), n(g), n(g)};
    if (norm(v) > 1e-6) return normalized(v);
  }
}

}  // namespace capdisc::testing
