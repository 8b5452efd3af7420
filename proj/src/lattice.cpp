#include "capdisc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <tuple>

#include "capdisc/error.hpp"

namespace capdisc {
namespace {

std::int64_t snapped_floor(double u) {
  const double r = std::nearbyint(u);
  if (std::abs(u - r) <= 1e-12 * std::max(1.0, std::abs(u))) {
    return static_cast<std::int64_t>(r);
  }
  return static_cast<std::int64_t>(std::floor(u));
}

// Per-cell generator: the offset of cell p depends only on (seed, p), not on
// the scan range.
Vec2 random_offset(std::uint64_t seed, LatticeIndex p) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(p.i), static_cast<std::uint32_t>(p.i >> 32),
                    static_cast<std::uint32_t>(p.j), static_cast<std::uint32_t>(p.j >> 32)};
  std::mt19937_64 gen(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double ux = unit(gen);
  const double uy = unit(gen);
  return {ux, uy};
}

Vec2 cell_offset(const Perturbation& rule, LatticeIndex p) {
  switch (rule.kind) {
    case Perturbation::Kind::CellCenter:
      return {0.5, 0.5};
    case Perturbation::Kind::LatticePoint:
      return {0.0, 0.0};
    case Perturbation::Kind::UniformRandom:
      return random_offset(rule.seed, p);
    case Perturbation::Kind::CustomOffset:
      return rule.offset;
  }
  return {0.5, 0.5};
}

double boundary_distance(Vec2 x) {
  return std::min({x.x, 1.0 - x.x, x.y, 1.0 - x.y});
}

void sort_by_provenance(PlanarPointSet& set) {
  std::vector<std::size_t> order(set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return std::tie(set.provenance[l], set.points[l].x, set.points[l].y) <
           std::tie(set.provenance[r], set.points[r].x, set.points[r].y);
  });
  PlanarPointSet sorted;
  sorted.config = set.config;
  sorted.modified = set.modified;
  for (std::size_t idx : order) {
    sorted.points.push_back(set.points[idx]);
    sorted.provenance.push_back(set.provenance[idx]);
  }
  set = std::move(sorted);
}

}  // namespace

bool in_unit_square(Vec2 x) { return x.x >= 0.0 && x.x < 1.0 && x.y > 0.0 && x.y < 1.0; }

void validate(const LatticeConfig& cfg) {
  if (cfg.k < 1) throw InvalidConfig("K must be a positive integer");
  if (is_singular(cfg.q)) throw SingularMatrix("lattice matrix Q is singular");
  if (!std::isfinite(cfg.v.x) || !std::isfinite(cfg.v.y)) {
    throw InvalidConfig("tiling offset must be finite");
  }
  if (cfg.perturbation.kind == Perturbation::Kind::CustomOffset) {
    const Vec2 u = cfg.perturbation.offset;
    if (!(u.x >= 0.0 && u.x < 1.0 && u.y >= 0.0 && u.y < 1.0)) {
      throw InvalidConfig("custom offset must lie in [0,1)^2");
    }
  }
}

LatticeIndex cell_index(const Mat2& q, int k, Vec2 v, Vec2 x) {
  const Mat2 qi = inverse(q);
  const Vec2 u = qi * (static_cast<double>(k) * x - v);
  return {snapped_floor(u.x), snapped_floor(u.y)};
}

PlanarPointSet build_point_set(const LatticeConfig& cfg) {
  validate(cfg);
  const Mat2& q = cfg.q;
  const Mat2 qi = inverse(q);
  const double kd = static_cast<double>(cfg.k);

  // Scan the preimage of [-c, 1+c]^2, c = longest cell edge, so no cell
  // touching the unit square is missed.
  const double c = std::max(norm(q.column(0)), norm(q.column(1))) / kd;
  double lo_i = INFINITY, hi_i = -INFINITY, lo_j = INFINITY, hi_j = -INFINITY;
  for (double cx : {-c, 1.0 + c}) {
    for (double cy : {-c, 1.0 + c}) {
      const Vec2 u = qi * (kd * Vec2{cx, cy} - cfg.v);
      lo_i = std::min(lo_i, u.x);
      hi_i = std::max(hi_i, u.x);
      lo_j = std::min(lo_j, u.y);
      hi_j = std::max(hi_j, u.y);
    }
  }
  const auto i0 = static_cast<std::int64_t>(std::floor(lo_i)) - 1;
  const auto i1 = static_cast<std::int64_t>(std::floor(hi_i)) + 1;
  const auto j0 = static_cast<std::int64_t>(std::floor(lo_j)) - 1;
  const auto j1 = static_cast<std::int64_t>(std::floor(hi_j)) + 1;

  PlanarPointSet set;
  set.config = cfg;
  for (std::int64_t i = i0; i <= i1; ++i) {
    for (std::int64_t j = j0; j <= j1; ++j) {
      const LatticeIndex p{i, j};
      const Vec2 u = cell_offset(cfg.perturbation, p);
      const Vec2 local{static_cast<double>(i) + u.x, static_cast<double>(j) + u.y};
      const Vec2 z = (1.0 / kd) * (q * local + cfg.v);
      if (!in_unit_square(z)) continue;
      if (cell_index(q, cfg.k, cfg.v, z) != p) {
        throw InvalidConfig("perturbation produced a point outside its own cell");
      }
      set.points.push_back(z);
      set.provenance.push_back(p);
    }
  }
  // Loop order is already lexicographic in (i, j).
  return set;
}

double count_deviation(const PlanarPointSet& set) {
  const double kd = static_cast<double>(set.config.k);
  const double expected = kd * kd / std::abs(det(set.config.q));
  return std::abs(static_cast<double>(set.size()) - expected) / kd;
}

std::size_t target_count(const Mat2& q, int k) {
  const double kd = static_cast<double>(k);
  return static_cast<std::size_t>(std::llround(kd * kd / std::abs(det(q))));
}

PlanarPointSet modified_point_set(const LatticeConfig& cfg) {
  PlanarPointSet set = build_point_set(cfg);
  set.modified = true;
  const std::size_t target = target_count(cfg.q, cfg.k);
  const std::size_t n = set.size();

  if (n > target) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
      const Vec2 a = set.points[l];
      const Vec2 b = set.points[r];
      return std::make_tuple(boundary_distance(a), a.x, a.y) <
             std::make_tuple(boundary_distance(b), b.x, b.y);
    });
    std::vector<bool> drop(n, false);
    for (std::size_t r = 0; r < n - target; ++r) drop[order[r]] = true;
    PlanarPointSet kept;
    kept.config = set.config;
    kept.modified = true;
    for (std::size_t idx = 0; idx < n; ++idx) {
      if (drop[idx]) continue;
      kept.points.push_back(set.points[idx]);
      kept.provenance.push_back(set.provenance[idx]);
    }
    return kept;
  }

  if (n < target) {
    const std::size_t missing = target - n;
    const double md = static_cast<double>(missing);
    const double kd = static_cast<double>(cfg.k);
    const double y = 1.0 / (2.0 * kd);
    const double nudge = 1.0 / (4.0 * kd * md);
    auto collides = [&](Vec2 z) {
      return std::any_of(set.points.begin(), set.points.end(), [&](Vec2 e) {
        return std::abs(e.x - z.x) <= 1e-12 && std::abs(e.y - z.y) <= 1e-12;
      });
    };
    for (std::size_t i = 0; i < missing; ++i) {
      Vec2 z{(static_cast<double>(i) + 0.5) / md, y};
      while (collides(z)) z.x += nudge;
      if (!in_unit_square(z)) {
        throw InvalidConfig("cannot place inserted boundary point inside the unit square");
      }
      set.points.push_back(z);
      set.provenance.push_back(cell_index(cfg.q, cfg.k, cfg.v, z));
    }
    sort_by_provenance(set);
  }
  return set;
}

}  // namespace capdisc
