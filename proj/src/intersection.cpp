#include "capdisc/intersection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "capdisc/error.hpp"

namespace capdisc {
namespace {

LatticeIndex floor_cell(Vec2 u) {
  return {static_cast<std::int64_t>(std::floor(u.x)), static_cast<std::int64_t>(std::floor(u.y))};
}

// Appends the parameters in (0, 1) where a + t (b - a) crosses an integer
// line of one coordinate.
void axis_crossings(double a, double b, std::vector<double>& params) {
  if (a == b) return;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  for (double k = std::ceil(lo); k <= hi; k += 1.0) {
    const double t = (k - a) / (b - a);
    if (t > 0.0 && t < 1.0) params.push_back(t);
  }
}

// Cells entered by the open segment pieces between consecutive crossings. A
// curve that only touches a cell at a single point (a corner pass or an
// endpoint on a cell edge) does not count that cell.
void walk_segment(Vec2 a, Vec2 b, std::set<LatticeIndex>& cells) {
  std::vector<double> params{0.0, 1.0};
  axis_crossings(a.x, b.x, params);
  axis_crossings(a.y, b.y, params);
  std::sort(params.begin(), params.end());
  for (std::size_t i = 0; i + 1 < params.size(); ++i) {
    if (!(params[i + 1] > params[i])) continue;
    const double mid = 0.5 * (params[i] + params[i + 1]);
    cells.insert(floor_cell(a + mid * (b - a)));
  }
}

}  // namespace

std::set<LatticeIndex> visited_cells(const Polyline& curve, const Mat2& q, int k, Vec2 v) {
  if (k < 1) throw InvalidConfig("K must be a positive integer");
  const Mat2 qi = inverse(q);
  const double kd = static_cast<double>(k);
  std::vector<Vec2> u;
  u.reserve(curve.vertices.size());
  for (Vec2 x : curve.vertices) u.push_back(qi * (kd * x - v));

  std::set<LatticeIndex> cells;
  if (u.empty()) return cells;
  const std::size_t segs = curve.segment_count();
  for (std::size_t i = 0; i < segs; ++i) {
    const std::size_t j = (i + 1 == u.size()) ? 0 : i + 1;
    if (u[i] == u[j]) continue;
    walk_segment(u[i], u[j], cells);
  }
  if (cells.empty()) cells.insert(floor_cell(u.front()));
  return cells;
}

std::size_t intersection_number(const Polyline& curve, const Mat2& q, int k, Vec2 v) {
  return visited_cells(curve, q, k, v).size();
}

double lemma_bound(const Polyline& curve, const Mat2& q, int k) {
  const auto n = curve.convex_pieces();
  if (!n) throw MissingConvexityData("curve has no declared convexity (n)");
  const double length = polyline_length(transform_polyline(inverse(q), curve));
  return std::numbers::sqrt2 * k * length + 19.0 * *n - curve.self_intersections + 1.0;
}

IntersectionReport intersection_report(const Polyline& curve, const Mat2& q, int k, Vec2 v) {
  IntersectionReport report;
  report.count = intersection_number(curve, q, k, v);
  report.transformed_length = polyline_length(transform_polyline(inverse(q), curve));
  report.n = curve.convex_pieces().value_or(0);
  report.m = curve.self_intersections;
  report.bound = lemma_bound(curve, q, k);
  return report;
}

Polyline sample_curve(const SampledCurve& curve, int segments) {
  Polyline line;
  line.closed = curve.closed;
  line.pieces = curve.n;
  line.self_intersections = curve.m;
  const int count = curve.closed ? segments : segments + 1;
  line.vertices.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double s = curve.t0 + (curve.t1 - curve.t0) * (static_cast<double>(i) / segments);
    line.vertices.push_back(curve.gamma(s));
  }
  return line;
}

IntersectionReport sampled_intersection_report(const SampledCurve& curve, const Mat2& q, int k,
                                               Vec2 v, int initial_samples, int max_doublings) {
  if (initial_samples < 2) throw InvalidConfig("need at least 2 initial samples");
  IntersectionReport report = intersection_report(sample_curve(curve, initial_samples), q, k, v);
  for (int r = 1; r <= max_doublings; ++r) {
    IntersectionReport next = intersection_report(sample_curve(curve, initial_samples << r), q, k, v);
    next.resolution = r;
    next.refinement_changed_count = next.count != report.count;
    report = next;
    if (!report.refinement_changed_count) break;
  }
  return report;
}

}  // namespace capdisc
