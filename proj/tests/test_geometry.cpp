#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "capdisc/error.hpp"
#include "capdisc/geometry.hpp"
#include "support.hpp"

using namespace capdisc;
using capdisc::testing::circle_polygon;
using capdisc::testing::segment;
using doctest::Approx;

namespace {
const double phi = std::numbers::phi;
}

TEST_CASE("det") {
  CHECK(det(Mat2::identity()) == 1.0);
  CHECK(det(Mat2::orthogonal_family(phi)) == Approx(phi * phi + 1.0).epsilon(1e-15));
  CHECK(det(Mat2::orthogonal_family(phi)) == Approx(3.618034).epsilon(1e-6));
  CHECK(det(Mat2{2, 0, 0, 0}) == 0.0);
}

TEST_CASE("inverse") {
  CHECK(inverse(Mat2::identity()) == Mat2::identity());
  for (double x : {0.0, 0.5, phi, -3.0}) {
    const Mat2 qi = inverse(Mat2::orthogonal_family(x));
    const double s = 1.0 / (x * x + 1.0);
    CHECK(qi.a == Approx(s * x));
    CHECK(qi.b == Approx(s));
    CHECK(qi.c == Approx(-s));
    CHECK(qi.d == Approx(s * x));
  }
  CHECK_THROWS_AS(inverse(Mat2{1, 1, 0, 0}), SingularMatrix);

  std::mt19937_64 g(11);
  for (int i = 0; i < 200; ++i) {
    const Mat2 q = capdisc::testing::random_matrix(g, 50.0);
    const Mat2 p = q * inverse(q);
    CHECK(std::abs(p.a - 1.0) < 1e-12);
    CHECK(std::abs(p.b) < 1e-12);
    CHECK(std::abs(p.c) < 1e-12);
    CHECK(std::abs(p.d - 1.0) < 1e-12);
  }
}

TEST_CASE("singularity tolerance is scale invariant") {
  CHECK(is_singular(Mat2{1, 1, 1, 1 + 1e-14}));
  CHECK_FALSE(is_singular(Mat2{1e-8, 0, 0, 1e-8}));
  CHECK_FALSE(is_singular(Mat2{1e8, 0, 0, 1e8}));
}

TEST_CASE("frobenius") {
  CHECK(frobenius(Mat2::identity()) == Approx(std::sqrt(2.0)));
  CHECK(frobenius(Mat2::scaled(2.0)) == Approx(2.0 * std::sqrt(2.0)));
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const Mat2 q{u(g), u(g), u(g), u(g)};
    CHECK(frobenius(q) >= std::sqrt(2.0) * std::sqrt(std::abs(det(q))) - 1e-12);
  }
}

TEST_CASE("singular values and rank") {
  const auto s = singular_values(Mat2{3, 0, 0, -4});
  CHECK(s[0] == Approx(4.0));
  CHECK(s[1] == Approx(3.0));
  CHECK(rank(Mat2::identity()) == 2);
  CHECK(rank(Mat2{1, 1, 1, 1}) == 1);
  CHECK(rank(Mat2{0, 0, 0, 0}) == 0);
  CHECK(has_orthogonal_columns(Mat2::orthogonal_family(2.0)));
  CHECK_FALSE(has_orthogonal_columns(Mat2{1, 1, 0, 1}));
}

TEST_CASE("polyline length") {
  Polyline square;
  square.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  square.closed = true;
  CHECK(polyline_length(square) == Approx(4.0));

  const Polyline c = circle_polygon({0, 0}, 1.0, 256);
  CHECK(polyline_length(c) == Approx(2.0 * 256 * std::sin(std::numbers::pi / 256)).epsilon(1e-12));
  CHECK(std::abs(polyline_length(c) - 2 * std::numbers::pi) / (2 * std::numbers::pi) < 3e-4);

  CHECK(polyline_length(segment({0.3, 0.3}, {0.3, 0.3})) == 0.0);
}

TEST_CASE("convex pieces come from marks, else the declared count") {
  Polyline p;
  p.vertices = {{0, 0}, {1, 0}, {2, 1}, {3, 0}};
  CHECK_FALSE(p.convex_pieces().has_value());
  p.pieces = 4;
  CHECK(p.convex_pieces() == 4);
  p.segment_marks = {0, 2, 3};
  CHECK(p.convex_pieces() == 2);
}

TEST_CASE("transform polyline") {
  const Polyline c = circle_polygon({0, 0}, 1.0, 256);
  const Polyline same = transform_polyline(Mat2::identity(), c);
  CHECK(same.vertices == c.vertices);
  CHECK(std::abs(polyline_length(transform_polyline(Mat2::scaled(2.0), c)) - 4 * std::numbers::pi) <
        3e-4 * 4 * std::numbers::pi);
  CHECK(polyline_length(transform_polyline(Mat2{0, -1, 1, 0}, c)) ==
        Approx(polyline_length(c)).epsilon(1e-12));

  Polyline marked = c;
  marked.segment_marks = {0, 100, 255};
  marked.self_intersections = 2;
  const Polyline t = transform_polyline(Mat2{2, 1, 0, 1}, marked);
  CHECK(t.segment_marks == marked.segment_marks);
  CHECK(t.self_intersections == 2);
  CHECK(t.closed);
}

TEST_CASE("rank-1 projected length") {
  const Polyline c = circle_polygon({0, 0}, 1.0, 256);
  CHECK(std::abs(rank1_projected_length(Mat2{1, 0, 0, 0}, c) - 2.0) < 3e-4);
  CHECK(rank1_projected_length(Mat2{0, 0, 0, 3}, segment({0, 0}, {1, 1})) == Approx(3.0));
  CHECK(rank1_projected_length(Mat2{1, 1, 1, 1}, segment({0, 0}, {1, -1})) == Approx(0.0));
  CHECK_THROWS_AS(rank1_projected_length(Mat2::identity(), c), RankError);
  CHECK_THROWS_AS(rank1_projected_length(Mat2{0, 0, 0, 0}, c), RankError);
}

TEST_CASE("length transformation under random matrices") {
  std::mt19937_64 g(2024);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 300; ++trial) {
    Polyline beta;
    const int nv = 2 + trial % 40;
    for (int i = 0; i < nv; ++i) beta.vertices.push_back({u(g), u(g)});
    beta.closed = trial % 2 == 0;
    const double lb = polyline_length(beta);

    const Mat2 a{u(g), u(g), u(g), u(g)};
    CHECK(polyline_length(transform_polyline(a, beta)) <= frobenius(a) * lb + 1e-9);

    // orthogonal columns: rotation times diag
    const double th = u(g), s1 = std::abs(u(g)) + 0.1, s2 = std::abs(u(g)) + 0.1;
    const Mat2 rot{std::cos(th), -std::sin(th), std::sin(th), std::cos(th)};
    const Mat2 o = rot * Mat2{s1, 0, 0, s2};
    REQUIRE(has_orthogonal_columns(o));
    const double lo = polyline_length(transform_polyline(o, beta));
    CHECK(std::min(s1, s2) * lb - 1e-9 <= lo);
    CHECK(lo <= std::max(s1, s2) * lb + 1e-9);
  }
}
