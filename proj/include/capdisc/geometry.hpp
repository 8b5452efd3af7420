#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace capdisc {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

double dot(Vec2 a, Vec2 b);
double norm(Vec2 a);

// Row-major 2x2 matrix (a b; c d).
struct Mat2 {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 scaled(double s) { return {s, 0.0, 0.0, s}; }
  // Q(x) = (x -1; 1 x), an orthogonal-column family.
  static constexpr Mat2 orthogonal_family(double x) { return {x, -1.0, 1.0, x}; }

  constexpr Vec2 column(int j) const { return j == 0 ? Vec2{a, c} : Vec2{b, d}; }

  friend constexpr Vec2 operator*(const Mat2& m, Vec2 v) {
    return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
  }
  friend constexpr Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend constexpr Mat2 operator*(double s, const Mat2& m) {
    return {s * m.a, s * m.b, s * m.c, s * m.d};
  }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

double det(const Mat2& q);
double frobenius(const Mat2& q);

// |det| <= kSingularRelTol * frobenius^2 declares q singular.
inline constexpr double kSingularRelTol = 1e-12;
// sigma_2 <= kRankRelTol * sigma_1 declares rank deficiency.
inline constexpr double kRankRelTol = 1e-10;

bool is_singular(const Mat2& q);
// Throws SingularMatrix when is_singular(q).
Mat2 inverse(const Mat2& q);
// Singular values, largest first, from the closed form of the 2x2 case.
std::array<double, 2> singular_values(const Mat2& q);
int rank(const Mat2& q);
bool has_orthogonal_columns(const Mat2& q, double tol = 1e-12);

// An ordered planar curve. Closure is implicit: a closed polyline does not
// repeat its first vertex. segment_marks holds vertex indices t_0 < ... < t_n
// bounding the convex pieces; when absent, `pieces` may declare n directly.
struct Polyline {
  std::vector<Vec2> vertices;
  bool closed = false;
  std::vector<std::size_t> segment_marks;
  std::optional<int> pieces;
  int self_intersections = 0;

  // n, from segment_marks when present, otherwise from `pieces`.
  std::optional<int> convex_pieces() const;
  std::size_t segment_count() const;
  std::array<Vec2, 2> segment(std::size_t i) const;
};

double polyline_length(const Polyline& curve);

// Vertex-wise image; convexity metadata is carried over unchanged.
Polyline transform_polyline(const Mat2& a, const Polyline& curve);

// ||A v|| * (max <beta, v> - min <beta, v>) with v the unit vector orthogonal
// to ker(A). Equals the length of A*beta when beta is traversed monotonically
// along v and lower-bounds it otherwise. Throws RankError unless rank(A) == 1.
double rank1_projected_length(const Mat2& a, const Polyline& curve);

}  // namespace capdisc
