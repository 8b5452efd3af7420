#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "capdisc/error.hpp"
#include "capdisc/lambert.hpp"
#include "support.hpp"

using namespace capdisc;
using capdisc::testing::random_unit;
using doctest::Approx;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("forward map examples") {
  const Vec3 a = lambert_forward({0.0, 0.5});
  CHECK(a.x == Approx(1.0));
  CHECK(std::abs(a.y) < 1e-15);
  CHECK(std::abs(a.z) < 1e-15);
  const Vec3 b = lambert_forward({0.25, 0.5});
  CHECK(std::abs(b.x) < 1e-15);
  CHECK(b.y == Approx(1.0));
  const Vec3 c = lambert_forward({0.3, 0.1});
  CHECK(c.z == 1.0 - 2.0 * 0.1);
  CHECK(std::abs(norm(c) - 1.0) < 1e-12);
  CHECK_THROWS_AS(lambert_forward({1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(lambert_forward({0.5, 0.0}), DomainError);
  CHECK_THROWS_AS(lambert_forward({0.5, 1.0}), DomainError);
}

TEST_CASE("inverse map examples") {
  const Vec2 a = lambert_inverse({0, 1, 0});
  CHECK(a.x == Approx(0.25));
  CHECK(a.y == Approx(0.5));
  const Vec2 b = lambert_inverse({1, 0, 0});
  CHECK(b.x == 0.0);
  CHECK(b.y == Approx(0.5));
  CHECK(lambert_inverse({0, -1, 0}).x == Approx(0.75));
  CHECK_THROWS_AS(lambert_inverse({0, 0, 1}), PoleError);
  CHECK_THROWS_AS(lambert_inverse({0, 0, -1}), PoleError);
}

TEST_CASE("round trip and unit norm") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const Vec2 p{u(g), u(g)};
    if (p.y == 0.0) continue;
    const Vec3 s = lambert_forward(p);
    CHECK(std::abs(norm(s) - 1.0) < 1e-12);
    const Vec2 q = lambert_inverse(s);
    CHECK(std::abs(q.x - p.x) < 1e-12);
    CHECK(std::abs(q.y - p.y) < 1e-12);
  }
}

TEST_CASE("cap containment and measure") {
  const Cap closed{{0, 0, 1}, 0.5, true};
  const Cap open{{0, 0, 1}, 0.5, false};
  const Vec3 rim{std::sqrt(0.75), 0.0, 0.5};
  CHECK(closed.contains(rim));
  CHECK_FALSE(open.contains(rim));
  CHECK(closed.measure() == 0.25);
}

TEST_CASE("preimage of a polar cap is one horizontal loop") {
  const CapPreimage pre = cap_preimage({{0, 0, 1}, 0.5, true}, 64);
  REQUIRE(pre.components.size() == 1);
  const Polyline& c = pre.components[0];
  for (Vec2 v : c.vertices) CHECK(v.y == Approx(0.25).epsilon(1e-12));
  CHECK(total_length(pre) == Approx(1.0).epsilon(1e-9));
  CHECK(c.convex_pieces() == kPreimageConvexPieces);
}

TEST_CASE("preimage of a meridian great circle is two vertical segments") {
  const CapPreimage pre = cap_preimage({{1, 0, 0}, 0.0, true}, 256);
  REQUIRE(pre.components.size() == 2);
  for (const Polyline& c : pre.components) {
    const double x0 = c.vertices.front().x;
    CHECK((std::abs(x0 - 0.25) < 1e-9 || std::abs(x0 - 0.75) < 1e-9));
    for (Vec2 v : c.vertices) CHECK(std::abs(v.x - x0) < 1e-9);
  }
  CHECK(std::abs(total_length(pre) - 2.0) < 1e-3);
}

TEST_CASE("random cap preimages") {
  std::mt19937_64 g(8);
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  for (int i = 0; i < 1000; ++i) {
    const Cap cap{random_unit(g), u(g), true};
    const CapPreimage pre = cap_preimage(cap, 32);
    CHECK(pre.components.size() >= 1);
    CHECK(pre.components.size() <= 3);
    for (const Polyline& c : pre.components) {
      CHECK(c.vertices.size() >= 2);
      for (Vec2 v : c.vertices) {
        CHECK(v.x >= -1e-12);
        CHECK(v.x <= 1.0 + 1e-12);
        CHECK(v.y >= 0.0);
        CHECK(v.y <= 1.0);
      }
    }
  }
}

TEST_CASE("preimage vertices map back onto the cap boundary") {
  std::mt19937_64 g(81);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int i = 0; i < 50; ++i) {
    const Cap cap{random_unit(g), u(g), true};
    for (const Polyline& c : cap_preimage(cap, 64).components) {
      for (Vec2 v : c.vertices) {
        if (v.y <= kPoleClip * 2 || v.y >= 1 - kPoleClip * 2) continue;
        const Vec2 p{v.x >= 1.0 ? v.x - 1.0 : v.x, v.y};
        CHECK(std::abs(dot(lambert_forward(p), cap.w) - cap.t) < 1e-9);
      }
    }
  }
}

TEST_CASE("degenerate caps are rejected") {
  CHECK_THROWS_AS(cap_preimage({{0, 0, 1}, 1.0, true}, 64), DegenerateCap);
  CHECK_THROWS_AS(cap_preimage({{0, 0, 1}, -1.0, true}, 64), DegenerateCap);
  CHECK_THROWS_AS(cap_preimage({{0, 0, 1}, 0.0, true}, 8), InvalidConfig);
}

TEST_CASE("polar family integrand") {
  for (double eps : {0.3, 0.1, 0.01}) {
    const double c = 1.0 / std::tan(pi / 2 - eps);
    CHECK(polar_cap_length_integrand(pi / 2, eps) == Approx(std::sqrt(c * c / (pi * pi) + 1.0)));
  }
  // against the printed form away from the endpoints
  const double eps = 0.2;
  for (double th : {0.3, 0.7, 1.2, 2.0, 2.8}) {
    const double ct = 1.0 / std::tan(th), ce = 1.0 / std::tan(pi / 2 - eps), st = std::sin(th);
    const double printed =
        std::sqrt(1.0 / (1.0 - ct * ct * ce * ce) * (ce * ce / (pi * pi * st * st * st * st)) + st * st);
    CHECK(polar_cap_length_integrand(th, eps) == Approx(printed).epsilon(1e-12));
  }
  CHECK_THROWS_AS(polar_cap_length_integrand(0.1, 0.1), DomainError);
  CHECK_THROWS_AS(polar_cap_length_integrand(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(polar_cap_length_integrand(1.0, pi / 2), DomainError);
}

TEST_CASE("quadrature agrees with the sampled preimage") {
  for (double eps : {0.3, 0.1}) {
    const double integral = polar_cap_length(eps);
    const double sampled = total_length(cap_preimage(polar_family_cap(eps), 4096));
    CHECK(std::abs(integral - sampled) < 1e-3);
  }
}

TEST_CASE("polar family lengths grow towards 3") {
  double last = 0.0;
  for (double eps : {0.1, 0.05, 0.01, 0.001}) {
    const double len = polar_cap_length(eps);
    CHECK(len > last);
    CHECK(len <= 3.0 + 1e-3);
    last = len;
  }
}

TEST_CASE("spiral points") {
  const auto pts = spiral_points(100);
  REQUIRE(pts.size() == 100);
  for (const Vec3& p : pts) CHECK(std::abs(norm(p) - 1.0) < 1e-12);
}

TEST_CASE("clq estimate") {
  const double base = clq_estimate(Mat2::identity(), 16, 8, 64);
  CHECK(base >= 2.0);
  CHECK(base <= 3.0 + 1e-6);
  CHECK(clq_estimate(Mat2::scaled(2.0), 16, 8, 64) == Approx(base / 2).epsilon(1e-9));
  const double a = 0.7;
  const Mat2 rot{std::cos(a), -std::sin(a), std::sin(a), std::cos(a)};
  CHECK(std::abs(clq_estimate(rot, 16, 8, 64) - base) < 1e-2);
  CHECK(clq_estimate(Mat2::identity(), 32, 8, 64) >= base);
  CHECK(clq_estimate(Mat2::identity(), 16, 16, 64) >= base);
  CHECK(clq_estimate(Mat2::identity(), 16, 8, 128) >= base);
  CHECK_THROWS_AS(clq_estimate(Mat2::identity(), 4, 8, 64), InvalidConfig);
  CHECK_THROWS_AS(clq_estimate(Mat2{1, 1, 1, 1}, 16, 8, 64), SingularMatrix);
}
