#include "capdisc/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <tuple>

#include "capdisc/error.hpp"
#include "capdisc/parallel.hpp"

namespace capdisc {

SpherePointSet lambert_image(const PlanarPointSet& planar) {
  SpherePointSet out;
  out.points.reserve(planar.size());
  for (Vec2 p : planar.points) out.points.push_back(lambert_forward(p));
  out.origin = planar;
  return out;
}

std::string_view to_string(DiscrepancyMethod method) {
  switch (method) {
    case DiscrepancyMethod::Exact:
      return "exact";
    case DiscrepancyMethod::Estimate:
      return "estimate";
    case DiscrepancyMethod::Certificate:
      return "certificate";
  }
  return "exact";
}

std::size_t cap_count(const SpherePointSet& points, const Cap& cap) {
  return static_cast<std::size_t>(
      std::count_if(points.points.begin(), points.points.end(), [&](Vec3 p) { return cap.contains(p); }));
}

namespace {

auto witness_key(const Cap& c) { return std::make_tuple(c.w.x, c.w.y, c.w.z, c.t, c.closed); }

// Running best deviation with a total order (value desc, then smallest key),
// so merging partial results in any order gives the same answer.
struct Best {
  double value = -1.0;
  Cap witness;
  std::size_t count = 0;

  void offer(Vec3 w, double t, bool closed, std::size_t count_in, double inv_n) {
    const double v = std::abs(static_cast<double>(count_in) * inv_n - 0.5 * (1.0 - t));
    if (v < value) return;
    const Cap cap{w, t, closed};
    if (v == value && !(witness_key(cap) < witness_key(witness))) return;
    value = v;
    witness = cap;
    count = count_in;
  }

  void merge(const Best& other) {
    if (other.value < 0.0) return;
    if (other.value > value ||
        (other.value == value && witness_key(other.witness) < witness_key(witness))) {
      *this = other;
    }
  }
};

// Evaluates every threshold height of centre w and of -w.
class CentreScanner {
 public:
  explicit CentreScanner(const std::vector<Vec3>& pts)
      : pts_(pts), heights_(pts.size()), inv_n_(1.0 / static_cast<double>(pts.size())) {}

  void scan(Vec3 w, Best& best) {
    const std::size_t n = pts_.size();
    for (std::size_t i = 0; i < n; ++i) heights_[i] = dot(w, pts_[i]);
    std::sort(heights_.begin(), heights_.end());
    const Vec3 mw = -w;
    std::size_t lo = 0;
    while (lo < n) {
      const double h = heights_[lo];
      std::size_t hi = lo + 1;
      while (hi < n && heights_[hi] == h) ++hi;
      // Caps around w: closed {>= h} holds n - lo, open {> h} holds n - hi.
      best.offer(w, h, true, n - lo, inv_n_);
      best.offer(w, h, false, n - hi, inv_n_);
      // Caps around -w at height -h: closed {<= h} holds hi, open {< h} holds lo.
      best.offer(mw, -h, true, hi, inv_n_);
      best.offer(mw, -h, false, lo, inv_n_);
      lo = hi;
    }
    // Degenerate heights t = 1 (closed) and t = -1 (open) on both sides.
    std::size_t top_w = 0, top_mw = 0, open_w = 0, open_mw = 0;
    for (double h : heights_) {
      top_w += h >= 1.0;
      top_mw += -h >= 1.0;
      open_w += h > -1.0;
      open_mw += -h > -1.0;
    }
    best.offer(w, 1.0, true, top_w, inv_n_);
    best.offer(w, -1.0, false, open_w, inv_n_);
    best.offer(mw, 1.0, true, top_mw, inv_n_);
    best.offer(mw, -1.0, false, open_mw, inv_n_);
  }

 private:
  const std::vector<Vec3>& pts_;
  std::vector<double> heights_;
  double inv_n_;
};

DiscrepancyReport to_report(const Best& best, DiscrepancyMethod method, std::size_t n) {
  DiscrepancyReport r;
  r.value = best.value;
  r.witness = best.witness;
  r.method = method;
  r.points_in_witness = best.count;
  r.n = n;
  return r;
}

}  // namespace

DiscrepancyReport exact_discrepancy(const SpherePointSet& points, std::size_t max_points) {
  const std::vector<Vec3>& p = points.points;
  const std::size_t n = p.size();
  if (n == 0) throw TooFew("discrepancy of an empty point set");
  if (n > max_points) {
    throw TooLarge("exact discrepancy limited to " + std::to_string(max_points) + " points, got " +
                   std::to_string(n));
  }

  std::vector<Best> partial(thread_count());
  const std::size_t chunks = parallel_chunks(n, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    CentreScanner scanner(p);
    Best& best = partial[chunk];
    for (std::size_t i = begin; i < end; ++i) {
      scanner.scan(p[i], best);
      for (std::size_t j = i + 1; j < n; ++j) {
        const Vec3 mid = p[i] + p[j];
        if (norm(mid) > 1e-12) scanner.scan(normalized(mid), best);
        const Vec3 eij = p[j] - p[i];
        for (std::size_t k = j + 1; k < n; ++k) {
          const Vec3 normal = cross(eij, p[k] - p[i]);
          if (norm(normal) <= 1e-12) continue;
          scanner.scan(normalized(normal), best);
        }
      }
    }
  });
  Best best;
  for (std::size_t c = 0; c < chunks; ++c) best.merge(partial[c]);
  return to_report(best, DiscrepancyMethod::Exact, n);
}

DiscrepancyReport estimate_discrepancy(const SpherePointSet& points, std::uint64_t trials,
                                       std::uint64_t seed) {
  const std::size_t n = points.size();
  if (n == 0) throw TooFew("discrepancy of an empty point set");
  if (trials < 1) throw InvalidConfig("estimate needs at least one trial");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss;
  CentreScanner scanner(points.points);
  Best best;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Vec3 w;
    do {
      w = {gauss(gen), gauss(gen), gauss(gen)};
    } while (norm(w) < 1e-12);
    scanner.scan(normalized(w), best);
  }
  return to_report(best, DiscrepancyMethod::Estimate, n);
}

DiscrepancyReport polar_certificate(int k) {
  if (k < 1) throw InvalidConfig("K must be a positive integer");
  LatticeConfig cfg;
  cfg.k = k;
  const SpherePointSet sphere = lambert_image(build_point_set(cfg));
  const double kd = static_cast<double>(k);
  const Cap cap{{0.0, 0.0, 1.0}, 1.0 - 1.0 / (2.0 * kd) + kCertificateShift, true};
  DiscrepancyReport r;
  r.witness = cap;
  r.method = DiscrepancyMethod::Certificate;
  r.n = sphere.size();
  r.points_in_witness = cap_count(sphere, cap);
  r.value = std::abs(static_cast<double>(r.points_in_witness) / static_cast<double>(r.n) -
                     cap.measure());
  return r;
}

double separation_distance(const SpherePointSet& points) {
  const std::size_t n = points.size();
  if (n < 2) throw TooFew("separation distance needs at least two points");
  std::vector<Vec3> sorted = points.points;
  std::sort(sorted.begin(), sorted.end(),
            [](Vec3 a, Vec3 b) { return std::tie(a.z, a.x, a.y) < std::tie(b.z, b.x, b.y); });
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n && sorted[j].z - sorted[i].z < best; ++j) {
      best = std::min(best, norm(sorted[j] - sorted[i]));
    }
  }
  return best;
}

}  // namespace capdisc
