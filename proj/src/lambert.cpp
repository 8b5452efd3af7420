#include "capdisc/lambert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "capdisc/error.hpp"

namespace capdisc {

using std::numbers::pi;

double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

Vec3 normalized(Vec3 a) { return (1.0 / norm(a)) * a; }

bool is_pole(Vec3 s) { return std::abs(1.0 - std::abs(s.z)) <= kUnitTol; }

bool Cap::contains(Vec3 x) const {
  const double h = dot(w, x);
  return closed ? h >= t : h > t;
}

Vec3 lambert_forward(Vec2 p) {
  if (!(p.x >= 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0)) {
    throw DomainError("Lambert map is defined on [0,1) x (0,1)");
  }
  const double r = 2.0 * std::sqrt(p.y * (1.0 - p.y));
  const double phi = 2.0 * pi * p.x;
  return {r * std::cos(phi), r * std::sin(phi), 1.0 - 2.0 * p.y};
}

Vec2 lambert_inverse(Vec3 s) {
  if (is_pole(s)) throw PoleError("inverse Lambert map is undefined at the poles");
  double phi = std::atan2(s.y, s.x);
  if (phi < 0.0) phi += 2.0 * pi;
  double x = phi / (2.0 * pi);
  if (x >= 1.0) x = 0.0;
  return {x, 0.5 * (1.0 - s.z)};
}

namespace {

// Boundary circle c(s) = t w + r (u1 cos s + u2 sin s).
struct Circle {
  Vec3 w, u1, u2;
  double t = 0.0;
  double r = 0.0;

  explicit Circle(const Cap& cap) : w(normalized(cap.w)), t(cap.t), r(std::sqrt(1.0 - cap.t * cap.t)) {
    const double ax = std::abs(w.x), ay = std::abs(w.y), az = std::abs(w.z);
    Vec3 e{1.0, 0.0, 0.0};
    if (ay <= ax && ay <= az) e = {0.0, 1.0, 0.0};
    else if (az <= ax && az <= ay) e = {0.0, 0.0, 1.0};
    u1 = normalized(e - dot(e, w) * w);
    u2 = cross(w, u1);
  }

  Vec3 at(double s) const { return t * w + r * (std::cos(s) * u1 + std::sin(s) * u2); }
  double dy(double s) const { return r * (-u1.y * std::sin(s) + u2.y * std::cos(s)); }
};

enum class EndKind { Free, Seam, Pole };

struct Break {
  double s = 0.0;
  EndKind kind = EndKind::Free;
  // Seams only: true when c_y increases through zero, so phi jumps 2 pi -> 0.
  bool rising = false;
};

double wrap_two_pi(double s) {
  s = std::fmod(s, 2.0 * pi);
  return s < 0.0 ? s + 2.0 * pi : s;
}

double wrapped_distance(Vec2 a, Vec2 b) {
  double dx = std::abs(a.x - b.x);
  dx = std::min(dx, 1.0 - dx);
  return std::hypot(dx, a.y - b.y);
}

std::vector<Break> find_breaks(const Circle& c) {
  std::vector<Break> breaks;
  for (double sign : {1.0, -1.0}) {
    const Vec3 pole{0.0, 0.0, sign};
    if (std::abs(dot(c.w, pole) - c.t) <= kUnitTol) {
      const Vec3 rel = pole - c.t * c.w;
      breaks.push_back({wrap_two_pi(std::atan2(dot(rel, c.u2), dot(rel, c.u1))), EndKind::Pole});
    }
  }
  const double amp = c.r * std::hypot(c.u1.y, c.u2.y);
  if (amp > 1e-14) {
    const double rhs = -c.t * c.w.y / amp;
    if (std::abs(rhs) < 1.0 - 1e-14) {
      const double alpha = std::atan2(c.u2.y, c.u1.y);
      const double delta = std::acos(rhs);
      for (double s : {alpha - delta, alpha + delta}) {
        s = wrap_two_pi(s);
        const Vec3 p = c.at(s);
        if (!(p.x > 1e-12)) continue;
        const bool near_pole = std::any_of(breaks.begin(), breaks.end(), [&](const Break& b) {
          if (b.kind != EndKind::Pole) return false;
          const double gap = std::abs(b.s - s);
          return std::min(gap, 2.0 * pi - gap) < 1e-6;
        });
        if (near_pole) continue;
        breaks.push_back({s, EndKind::Seam, c.dy(s) > 0.0});
      }
    }
  }
  std::sort(breaks.begin(), breaks.end(), [](const Break& a, const Break& b) { return a.s < b.s; });
  return breaks;
}

class ArcSampler {
 public:
  ArcSampler(const Circle& c, int samples) : c_(c), samples_(samples), spacing_(1.0 / samples) {}

  // Samples s in [s0, s1]; `seam_start` / `seam_end` pin the planar x of the
  // corresponding endpoint to 0 or 1.
  std::optional<Polyline> arc(double s0, double s1, std::optional<double> seam_start_x,
                              std::optional<double> seam_end_x, bool closed) const {
    if (!(s1 > s0)) return std::nullopt;
    std::vector<double> params;
    std::vector<Vec2> raw;
    auto emit = [&](double s, Vec2 p) {
      params.push_back(s);
      raw.push_back(p);
    };
    const double span = s1 - s0;
    Vec2 prev = eval(s0);
    emit(s0, prev);
    for (int i = 1; i <= samples_; ++i) {
      const double s = i == samples_ ? s1 : s0 + span * (static_cast<double>(i) / samples_);
      const Vec2 cur = eval(s);
      refine(params.back(), prev, s, cur, 0, emit);
      emit(s, cur);
      prev = cur;
    }

    // Unwrap phi along the arc so that rounding near the seam cannot throw a
    // vertex to the wrong side, then pin seam endpoints.
    std::vector<double> phi(raw.size());
    phi[0] = seam_start_x ? *seam_start_x * 2.0 * pi : raw[0].x * 2.0 * pi;
    for (std::size_t i = 1; i < raw.size(); ++i) {
      double d = raw[i].x * 2.0 * pi - phi[i - 1];
      d = std::remainder(d, 2.0 * pi);
      phi[i] = std::clamp(phi[i - 1] + d, 0.0, 2.0 * pi);
    }
    if (seam_end_x) phi.back() = *seam_end_x * 2.0 * pi;

    Polyline line;
    line.closed = closed;
    line.pieces = kPreimageConvexPieces;
    line.vertices.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      line.vertices.push_back({phi[i] / (2.0 * pi), raw[i].y});
    }
    if (closed && line.vertices.size() > 1) line.vertices.pop_back();
    return line;
  }

 private:
  Vec2 eval(double s) const {
    const Vec3 p = c_.at(s);
    double phi = std::atan2(p.y, p.x);
    if (phi < 0.0) phi += 2.0 * pi;
    return {phi / (2.0 * pi), 0.5 * (1.0 - p.z)};
  }

  template <class Emit>
  void refine(double sa, Vec2 pa, double sb, Vec2 pb, int depth, Emit& emit) const {
    if (wrapped_distance(pa, pb) <= spacing_ || sb - sa <= 1e-12 || depth >= 64) return;
    const double sm = 0.5 * (sa + sb);
    const Vec2 pm = eval(sm);
    refine(sa, pa, sm, pm, depth + 1, emit);
    emit(sm, pm);
    refine(sm, pm, sb, pb, depth + 1, emit);
  }

  const Circle& c_;
  int samples_;
  double spacing_;
};

}  // namespace

CapPreimage cap_preimage(const Cap& cap, int samples_per_component) {
  if (!(std::abs(cap.t) < 1.0)) throw DegenerateCap("cap height must satisfy |t| < 1");
  if (samples_per_component < 16) throw InvalidConfig("at least 16 samples per component");
  const Circle circle(cap);
  const ArcSampler sampler(circle, samples_per_component);
  const std::vector<Break> breaks = find_breaks(circle);

  CapPreimage out;
  if (breaks.empty()) {
    if (auto line = sampler.arc(0.0, 2.0 * pi, std::nullopt, std::nullopt, true)) {
      out.components.push_back(std::move(*line));
    }
    return out;
  }

  // Parameter offset that places a clipped pole endpoint at y = kPoleClip.
  const double pole_gap = 2.0 * std::asin(std::sqrt(kPoleClip)) / circle.r;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const Break& a = breaks[i];
    const Break& b = breaks[(i + 1) % breaks.size()];
    double s0 = a.s;
    double s1 = b.s;
    if (s1 <= s0) s1 += 2.0 * pi;
    std::optional<double> start_x, end_x;
    if (a.kind == EndKind::Pole) s0 += pole_gap;
    if (b.kind == EndKind::Pole) s1 -= pole_gap;
    if (a.kind == EndKind::Seam) start_x = a.rising ? 0.0 : 1.0;
    if (b.kind == EndKind::Seam) end_x = b.rising ? 1.0 : 0.0;
    if (auto line = sampler.arc(s0, s1, start_x, end_x, false)) {
      out.components.push_back(std::move(*line));
    }
  }
  return out;
}

double total_length(const CapPreimage& preimage) {
  double total = 0.0;
  for (const Polyline& c : preimage.components) total += polyline_length(c);
  return total;
}

double total_length(const Mat2& transform, const CapPreimage& preimage) {
  double total = 0.0;
  for (const Polyline& c : preimage.components) {
    total += polyline_length(transform_polyline(transform, c));
  }
  return total;
}

Cap polar_family_cap(double eps) {
  return {{std::sin(pi / 2 - eps), 0.0, std::cos(pi / 2 - eps)}, 0.0, true};
}

namespace {

// Integrand at theta = eps + offset, in the cancellation-free form
// sin(eps)^2 / (pi^2 sin^2(theta) sin(theta + eps) sin(theta - eps)) + sin^2(theta).
double integrand_at_offset(double offset, double eps) {
  const double theta = eps + offset;
  const double s = std::sin(theta);
  const double se = std::sin(eps);
  const double lead = se * se / (pi * pi * s * s * std::sin(theta + eps) * std::sin(offset));
  return std::sqrt(lead + s * s);
}

}  // namespace

double polar_cap_length_integrand(double theta, double eps) {
  if (!(eps > 0.0 && eps < pi / 2)) throw DomainError("eps must lie in (0, pi/2)");
  if (!(theta > eps && theta < pi - eps)) throw DomainError("theta must lie in (eps, pi - eps)");
  if (theta <= pi / 2) return integrand_at_offset(theta - eps, eps);
  // Symmetric about pi/2.
  return integrand_at_offset((pi - theta) - eps, eps);
}

double polar_cap_length(double eps) {
  if (!(eps > 0.0 && eps < pi / 2)) throw DomainError("eps must lie in (0, pi/2)");
  // Symmetry about pi/2 halves the range; theta = eps + u^2 removes the
  // inverse square-root singularity at theta = eps.
  auto f = [eps](double u) { return 2.0 * u * integrand_at_offset(u * u, eps); };
  const double upper = std::sqrt(pi / 2 - eps);
  using boost::math::quadrature::gauss_kronrod;
  const double half = gauss_kronrod<double, 31>::integrate(f, 0.0, upper, 30, 1e-13);
  return 2.0 * half;
}

std::vector<Vec3> spiral_points(int n) {
  std::vector<Vec3> pts;
  if (n <= 0) return pts;
  if (n == 1) return {{0.0, 0.0, 1.0}};
  pts.reserve(static_cast<std::size_t>(n));
  const double step = 3.6 / std::sqrt(static_cast<double>(n));
  double phi = 0.0;
  for (int k = 0; k < n; ++k) {
    const double h = -1.0 + 2.0 * k / (n - 1);
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - h * h));
    if (k == 0 || k == n - 1) {
      phi = 0.0;
    } else {
      phi = std::fmod(phi + step / sin_theta, 2.0 * pi);
    }
    pts.push_back({sin_theta * std::cos(phi), sin_theta * std::sin(phi), h});
  }
  return pts;
}

double clq_estimate(const Mat2& q, int center_count, int height_count, int samples) {
  const Mat2 qi = inverse(q);
  if (center_count < 8 || height_count < 8 || samples < 8) {
    throw InvalidConfig("clq_estimate grids must be >= 8");
  }
  const int per_component = std::max(samples, 16);
  auto length_of = [&](const Cap& cap) {
    return total_length(qi, cap_preimage(cap, per_component));
  };

  double best = 0.0;
  for (int n = center_count; n >= 8; n /= 2) {
    for (const Vec3& w : spiral_points(n)) {
      for (int j = 1; j < height_count; ++j) {
        const double t = -1.0 + 2.0 * j / height_count;
        best = std::max(best, length_of({w, t, true}));
      }
    }
  }
  for (int k = 1; k <= 20; ++k) {
    best = std::max(best, length_of(polar_family_cap(std::ldexp(1.0, -k))));
  }
  return best;
}

}  // namespace capdisc
