#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "capdisc/geometry.hpp"

namespace capdisc {

// How the representative z_K^p is chosen inside its cell T_K(p). Cells are
// parametrised as (Q (p + u) + v) / K with u in [0,1)^2.
struct Perturbation {
  enum class Kind { CellCenter, LatticePoint, UniformRandom, CustomOffset };

  Kind kind = Kind::CellCenter;
  std::uint64_t seed = 0;
  Vec2 offset{0.5, 0.5};  // used by CustomOffset

  static Perturbation cell_center() { return {}; }
  static Perturbation lattice_point() { return {Kind::LatticePoint, 0, {0.0, 0.0}}; }
  static Perturbation uniform_random(std::uint64_t seed) {
    return {Kind::UniformRandom, seed, {0.0, 0.0}};
  }
  static Perturbation custom_offset(Vec2 u) { return {Kind::CustomOffset, 0, u}; }
};

struct LatticeConfig {
  Mat2 q = Mat2::identity();
  int k = 1;
  Vec2 v{0.0, 0.0};
  Perturbation perturbation{};
};

// Integer coordinates of a lattice point p = Q * (i, j).
struct LatticeIndex {
  std::int64_t i = 0;
  std::int64_t j = 0;
  friend constexpr auto operator<=>(const LatticeIndex&, const LatticeIndex&) = default;
};

struct PlanarPointSet {
  std::vector<Vec2> points;
  std::vector<LatticeIndex> provenance;
  LatticeConfig config;
  // Set by modified_point_set; inserted points carry the index of the cell
  // they fall in, so provenance may repeat.
  bool modified = false;

  std::size_t size() const { return points.size(); }
};

// I^2 = [0,1) x (0,1).
bool in_unit_square(Vec2 x);

// Throws InvalidConfig for K < 1 or a custom offset outside [0,1)^2, and
// SingularMatrix for singular Q.
void validate(const LatticeConfig& cfg);

// One point per cell of the tiling, kept when it lands in I^2, ordered by
// provenance. Throws InvalidConfig if a produced point fails the containment
// check against its own cell.
PlanarPointSet build_point_set(const LatticeConfig& cfg);

// The p with x in (Q [0,1)^2 + v) / K + Q p / K, i.e. floor(K Q^-1 (x - v/K)).
// Coordinates within 1e-12 (relative) of an integer snap to it, so points
// constructed on a cell corner index back to that cell.
LatticeIndex cell_index(const Mat2& q, int k, Vec2 v, Vec2 x);

// d^Q(K) = |N - K^2 / |det Q|| / K.
double count_deviation(const PlanarPointSet& set);

// Rebalances build_point_set near the boundary of I^2 so that the count is
// exactly round(K^2 / |det Q|): surplus points closest to the boundary are
// dropped (ties by lexicographic point order); missing points are inserted on
// y = 1/(2K) at x = (i + 1/2)/D, nudged by 1/(4KD) on collision.
PlanarPointSet modified_point_set(const LatticeConfig& cfg);

std::size_t target_count(const Mat2& q, int k);

}  // namespace capdisc
