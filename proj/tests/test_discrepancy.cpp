#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "capdisc/discrepancy.hpp"
#include "capdisc/error.hpp"
#include "support.hpp"

using namespace capdisc;
using capdisc::testing::random_unit;
using doctest::Approx;

namespace {

SpherePointSet random_set(std::mt19937_64& g, int n) {
  SpherePointSet s;
  for (int i = 0; i < n; ++i) s.points.push_back(random_unit(g));
  return s;
}

// max over t of the deviation for a fixed centre, written independently of the library
double centre_value(const SpherePointSet& s, Vec3 w) {
  std::vector<double> h;
  for (const Vec3& p : s.points) h.push_back(dot(w, p));
  std::sort(h.begin(), h.end());
  const double n = static_cast<double>(h.size());
  double best = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double t = h[i];
    const double ge = static_cast<double>(h.end() - std::lower_bound(h.begin(), h.end(), t));
    const double gt = static_cast<double>(h.end() - std::upper_bound(h.begin(), h.end(), t));
    const double area = 0.5 * (1.0 - t);
    best = std::max({best, std::abs(ge / n - area), std::abs(gt / n - area)});
  }
  return best;
}

// Random restarts plus shrinking random steps from the best starts: a lower
// bound of the supremum that never consults the library's candidate family.
double hill_climb(const SpherePointSet& s, std::mt19937_64& g) {
  std::vector<std::pair<double, Vec3>> starts;
  for (int i = 0; i < 4000; ++i) {
    const Vec3 c = random_unit(g);
    starts.push_back({centre_value(s, c), c});
  }
  std::sort(starts.begin(), starts.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::normal_distribution<double> nd;
  double best = 0.0;
  for (int k = 0; k < 40; ++k) {
    auto [value, w] = starts[k];
    for (double step = 0.2; step > 1e-11; step *= 0.8) {
      for (int i = 0; i < 40; ++i) {
        const Vec3 c = normalized(w + step * Vec3{nd(g), nd(g), nd(g)});
        const double v = centre_value(s, c);
        if (v > value) value = v, w = c;
      }
    }
    best = std::max(best, value);
  }
  return best;
}

}  // namespace

TEST_CASE("cap count") {
  std::mt19937_64 g(1);
  const SpherePointSet s = random_set(g, 20);
  CHECK(cap_count(s, {{0, 0, 1}, -1.0, true}) == 20);
  SpherePointSet pole;
  pole.points = {{0, 0, 1}};
  CHECK(cap_count(pole, {{0, 0, 1}, 0.5, true}) == 1);
  SpherePointSet anti;
  anti.points = {{0, 0, 1}, {0, 0, -1}};
  CHECK(cap_count(anti, {{1, 0, 0}, 0.0, true}) == 2);
  CHECK(cap_count(anti, {{1, 0, 0}, 0.0, false}) == 0);
  CHECK(cap_count(anti, {{0, 0, 1}, 0.0, true}) == 1);
}

TEST_CASE("exact discrepancy of tiny sets") {
  SpherePointSet one;
  one.points = {normalized(Vec3{0.2, -0.4, 0.7})};
  CHECK(exact_discrepancy(one).value == Approx(1.0));

  SpherePointSet anti;
  anti.points = {{0, 0, 1}, {0, 0, -1}};
  CHECK(exact_discrepancy(anti).value == Approx(0.5).epsilon(1e-12));
  // a centre at height h against the pair scores max(h, 1 - h) / 2, so random
  // centres approach 1/2 without reaching it
  const double est = estimate_discrepancy(anti, 1000, 3).value;
  CHECK(est <= 0.5);
  CHECK(est > 0.5 - 1e-3);

  SpherePointSet empty;
  CHECK_THROWS_AS(exact_discrepancy(empty), TooFew);
  std::mt19937_64 g(2);
  CHECK_THROWS_AS(exact_discrepancy(random_set(g, 50), 40), TooLarge);
}

TEST_CASE("coincident points are valid input") {
  SpherePointSet s;
  s.points = {{1, 0, 0}, {1, 0, 0}, {1, 0, 0}};
  CHECK(exact_discrepancy(s).value == Approx(1.0));
}

TEST_CASE("witness consistency") {
  std::mt19937_64 g(3);
  for (int n : {1, 2, 5, 17, 40}) {
    const SpherePointSet s = random_set(g, n);
    for (const DiscrepancyReport& r : {exact_discrepancy(s), estimate_discrepancy(s, 500, n)}) {
      CHECK(r.n == s.size());
      CHECK(cap_count(s, r.witness) == r.points_in_witness);
      const double v = std::abs(static_cast<double>(r.points_in_witness) / n - r.witness.measure());
      CHECK(std::abs(v - r.value) <= 1e-12);
    }
  }
}

TEST_CASE("lattice image stays within the sandwich") {
  LatticeConfig cfg;
  cfg.k = 8;
  const DiscrepancyReport r = exact_discrepancy(lambert_image(build_point_set(cfg)));
  CHECK(r.value >= 1.0 / 32 - 1e-12);
  CHECK(r.value <= std::sqrt(18.0) / 8 + 1e-12);
}

TEST_CASE("estimate is dominated by the exact value") {
  std::mt19937_64 g(4);
  for (int i = 0; i < 20; ++i) {
    const SpherePointSet s = random_set(g, 2 + i * 2);
    CHECK(estimate_discrepancy(s, 2000, i).value <= exact_discrepancy(s).value + 1e-12);
  }
}

TEST_CASE("estimate is a running maximum") {
  std::mt19937_64 g(5);
  const SpherePointSet s = random_set(g, 30);
  double last = 0.0;
  for (std::uint64_t trials : {1, 10, 100, 1000, 10000}) {
    const double v = estimate_discrepancy(s, trials, 77).value;
    CHECK(v >= last);
    last = v;
  }
  CHECK(estimate_discrepancy(s, 1000, 77).value == estimate_discrepancy(s, 1000, 77).value);
}

TEST_CASE("candidate family is complete against a local search") {
  std::mt19937_64 g(6);
  for (int i = 0; i < 12; ++i) {
    const SpherePointSet s = random_set(g, 3 + i % 10);
    const double exact = exact_discrepancy(s).value;
    const double climbed = hill_climb(s, g);
    CHECK(climbed <= exact + 1e-12);
    CHECK(exact - climbed < 1e-6);
  }
}

TEST_CASE("rotation invariance") {
  std::mt19937_64 g(7);
  for (int i = 0; i < 20; ++i) {
    const SpherePointSet s = random_set(g, 5 + i);
    // random rotation from a normalised quaternion
    std::normal_distribution<double> nd;
    double a = nd(g), b = nd(g), c = nd(g), d = nd(g);
    const double len = std::sqrt(a * a + b * b + c * c + d * d);
    a /= len, b /= len, c /= len, d /= len;
    auto rotate = [&](Vec3 p) {
      return Vec3{(a * a + b * b - c * c - d * d) * p.x + 2 * (b * c - a * d) * p.y + 2 * (b * d + a * c) * p.z,
                  2 * (b * c + a * d) * p.x + (a * a - b * b + c * c - d * d) * p.y + 2 * (c * d - a * b) * p.z,
                  2 * (b * d - a * c) * p.x + 2 * (c * d + a * b) * p.y + (a * a - b * b - c * c + d * d) * p.z};
    };
    SpherePointSet r;
    for (const Vec3& p : s.points) r.points.push_back(normalized(rotate(p)));
    CHECK(std::abs(exact_discrepancy(s).value - exact_discrepancy(r).value) < 1e-9);
  }
}

TEST_CASE("exact result does not depend on the thread count") {
  std::mt19937_64 g(8);
  const SpherePointSet s = random_set(g, 25);
  const DiscrepancyReport a = exact_discrepancy(s);
  const DiscrepancyReport b = exact_discrepancy(s);
  CHECK(a.value == b.value);
  CHECK(a.witness.w == b.witness.w);
  CHECK(a.witness.t == b.witness.t);
}

TEST_CASE("polar certificate") {
  for (int k : {1, 10, 50}) {
    const DiscrepancyReport r = polar_certificate(k);
    CHECK(r.method == DiscrepancyMethod::Certificate);
    CHECK(r.points_in_witness == 0);
    CHECK(r.n == static_cast<std::size_t>(k) * k);
    CHECK(r.value >= 1.0 / (4.0 * k) - 1e-9);
  }
  CHECK(std::sqrt(2500.0) * polar_certificate(50).value >= 0.25 - 5e-8);
}

TEST_CASE("separation distance") {
  SpherePointSet anti;
  anti.points = {{0, 0, 1}, {0, 0, -1}};
  CHECK(separation_distance(anti) == Approx(2.0));

  const double s = 1.0 / std::sqrt(3.0);
  SpherePointSet tet;
  tet.points = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  CHECK(std::abs(separation_distance(tet) - std::sqrt(8.0 / 3.0)) < 1e-12);

  SpherePointSet one;
  one.points = {{1, 0, 0}};
  CHECK_THROWS_AS(separation_distance(one), TooFew);

  std::mt19937_64 g(9);
  const SpherePointSet r = random_set(g, 300);
  double brute = 4.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = i + 1; j < r.size(); ++j) brute = std::min(brute, norm(r.points[i] - r.points[j]));
  }
  CHECK(separation_distance(r) == brute);
}

TEST_CASE("separation of the standard lattice image") {
  LatticeConfig cfg;
  cfg.k = 50;
  const double sep = separation_distance(lambert_image(build_point_set(cfg)));
  const double scaled = sep * std::pow(2500.0, 0.75);
  CHECK(scaled >= 4.0);
  CHECK(scaled <= 13.0);
}
