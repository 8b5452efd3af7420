#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>

#include "capdisc/geometry.hpp"
#include "capdisc/lattice.hpp"

namespace capdisc {

struct IntersectionReport {
  std::size_t count = 0;
  double bound = 0.0;
  double transformed_length = 0.0;
  int n = 0;
  int m = 0;
  int resolution = 0;
  // True when `count` changed between the last two refinement levels of a
  // sampled curve; for polylines taken as-is this is always false.
  bool refinement_changed_count = false;
};

// Cells of the tiling (Q [0,1)^2 + v) / K + Q p / K touched by the polyline.
// Works in the coordinates u = K Q^-1 (x - v/K), where cells are the unit
// squares [p, p + 1), and enumerates every integer-line crossing of every
// segment. Exact for polylines; throws SingularMatrix, InvalidConfig (K < 1).
std::set<LatticeIndex> visited_cells(const Polyline& curve, const Mat2& q, int k, Vec2 v = {});

std::size_t intersection_number(const Polyline& curve, const Mat2& q, int k, Vec2 v = {});

// sqrt(2) K length(Q^-1 beta) + 19 n - m + 1. Throws MissingConvexityData when
// the curve has no declared n.
double lemma_bound(const Polyline& curve, const Mat2& q, int k);

IntersectionReport intersection_report(const Polyline& curve, const Mat2& q, int k, Vec2 v = {});

// A parametrised curve gamma: [t0, t1] -> R^2 with caller-declared convexity.
struct SampledCurve {
  std::function<Vec2(double)> gamma;
  double t0 = 0.0;
  double t1 = 1.0;
  bool closed = false;
  int n = 1;
  int m = 0;
};

// Samples `curve` with 2^r * initial_samples segments for r = 0, 1, ... and
// stops once the count is unchanged by a doubling or after max_doublings.
// `resolution` is the final r; refinement_changed_count is set when the last
// doubling still changed the count.
IntersectionReport sampled_intersection_report(const SampledCurve& curve, const Mat2& q, int k,
                                               Vec2 v = {}, int initial_samples = 64,
                                               int max_doublings = 12);

Polyline sample_curve(const SampledCurve& curve, int segments);

}  // namespace capdisc
