#include "capdisc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "capdisc/error.hpp"

namespace capdisc {

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

double det(const Mat2& q) { return q.a * q.d - q.b * q.c; }

double frobenius(const Mat2& q) {
  return std::sqrt(q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d);
}

bool is_singular(const Mat2& q) {
  const double f = frobenius(q);
  return !(std::abs(det(q)) > kSingularRelTol * f * f);
}

Mat2 inverse(const Mat2& q) {
  if (is_singular(q)) {
    throw SingularMatrix("matrix is singular (|det| below tolerance)");
  }
  const double s = 1.0 / det(q);
  return {q.d * s, -q.b * s, -q.c * s, q.a * s};
}

std::array<double, 2> singular_values(const Mat2& q) {
  const double f2 = q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d;
  const double dt = std::abs(det(q));
  // sigma_1^2 + sigma_2^2 = f2 and sigma_1 * sigma_2 = |det|.
  const double sum = std::sqrt(std::max(0.0, f2 + 2.0 * dt));
  const double diff = std::sqrt(std::max(0.0, f2 - 2.0 * dt));
  return {0.5 * (sum + diff), 0.5 * std::max(0.0, sum - diff)};
}

int rank(const Mat2& q) {
  const auto [s1, s2] = singular_values(q);
  if (!(s1 > 0.0)) return 0;
  return s2 <= kRankRelTol * s1 ? 1 : 2;
}

bool has_orthogonal_columns(const Mat2& q, double tol) {
  const Vec2 c0 = q.column(0);
  const Vec2 c1 = q.column(1);
  return std::abs(dot(c0, c1)) <= tol * (1.0 + dot(c0, c0) + dot(c1, c1));
}

std::optional<int> Polyline::convex_pieces() const {
  if (segment_marks.size() >= 2) return static_cast<int>(segment_marks.size()) - 1;
  return pieces;
}

std::size_t Polyline::segment_count() const {
  if (vertices.size() < 2) return 0;
  return closed ? vertices.size() : vertices.size() - 1;
}

std::array<Vec2, 2> Polyline::segment(std::size_t i) const {
  const std::size_t j = (i + 1 == vertices.size()) ? 0 : i + 1;
  return {vertices[i], vertices[j]};
}

double polyline_length(const Polyline& curve) {
  double total = 0.0;
  const std::size_t segs = curve.segment_count();
  for (std::size_t i = 0; i < segs; ++i) {
    const auto [p, q] = curve.segment(i);
    total += norm(q - p);
  }
  return total;
}

Polyline transform_polyline(const Mat2& a, const Polyline& curve) {
  Polyline out = curve;
  for (Vec2& v : out.vertices) v = a * v;
  return out;
}

double rank1_projected_length(const Mat2& a, const Polyline& curve) {
  const int r = rank(a);
  if (r != 1) {
    throw RankError("rank1_projected_length requires a rank-1 matrix, got rank " +
                    std::to_string(r));
  }
  // For rank 1 the rows are parallel and span ker(A)^perp.
  const Vec2 r0{a.a, a.b};
  const Vec2 r1{a.c, a.d};
  Vec2 v = norm(r0) >= norm(r1) ? r0 : r1;
  v = (1.0 / norm(v)) * v;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Vec2 p : curve.vertices) {
    const double s = dot(p, v);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  if (curve.vertices.empty()) return 0.0;
  return norm(a * v) * (hi - lo);
}

}  // namespace capdisc
