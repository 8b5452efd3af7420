#pragma once

#include <vector>

#include "capdisc/geometry.hpp"

namespace capdisc {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr bool operator==(Vec3, Vec3) = default;
};

double dot(Vec3 a, Vec3 b);
Vec3 cross(Vec3 a, Vec3 b);
double norm(Vec3 a);
Vec3 normalized(Vec3 a);

// Tolerance for unit length and for the pole predicate |z| = 1.
inline constexpr double kUnitTol = 1e-12;

bool is_pole(Vec3 s);

// C(w, t) = {x : <w, x> >= t}, or > t when !closed. Normalised area (1 - t)/2.
struct Cap {
  Vec3 w{0.0, 0.0, 1.0};
  double t = 0.0;
  bool closed = true;

  double measure() const { return 0.5 * (1.0 - t); }
  bool contains(Vec3 x) const;
};

// L(x, y) = (2 sqrt(y - y^2) cos 2 pi x, 2 sqrt(y - y^2) sin 2 pi x, 1 - 2y).
// Throws DomainError outside I^2.
Vec3 lambert_forward(Vec2 p);

// (phi / 2 pi, (1 - z) / 2) with phi in [0, 2 pi). Throws PoleError at the poles.
Vec2 lambert_inverse(Vec3 s);

// Planar preimage of a cap boundary. Each component carries the declared
// convexity n = 7 and no self-intersections.
struct CapPreimage {
  std::vector<Polyline> components;
};

// Poles are clipped at y in {delta, 1 - delta}.
inline constexpr double kPoleClip = 1e-9;
inline constexpr int kPreimageConvexPieces = 7;

// Samples the boundary circle of `cap`, maps it through the inverse Lambert
// map and splits it at seam crossings (x wrapping between 1 and 0) and at
// exact pole passages. Sampling is refined by bisection until consecutive
// vertices are closer than 1 / samples_per_component (x distance taken
// modulo 1). Throws DegenerateCap when |t| >= 1 and InvalidConfig when
// samples_per_component < 16.
CapPreimage cap_preimage(const Cap& cap, int samples_per_component);

double total_length(const CapPreimage& preimage);
double total_length(const Mat2& transform, const CapPreimage& preimage);

// The cap boundary that passes at angular distance eps from both poles:
// w = (sin(pi/2 - eps), 0, cos(pi/2 - eps)), t = 0.
Cap polar_family_cap(double eps);

// Arc-length integrand of the (doubled) preimage half-curve of
// polar_family_cap(eps), as a function of the polar angle theta. Throws
// DomainError unless 0 < eps < pi/2 and eps < theta < pi - eps.
double polar_cap_length_integrand(double theta, double eps);

// Integral of polar_cap_length_integrand over (eps, pi - eps). The integrand
// describes the half-curve scaled by two, so this is the length of the whole
// preimage of the cap boundary.
double polar_cap_length(double eps);

// Generalised spiral of n points on the sphere.
std::vector<Vec3> spiral_points(int n);

// Lower estimate of sup over caps of length(Q^-1 L^-1(boundary)). Centres are
// the union of spiral grids of sizes n, n/2, n/4, ... >= 8 so that doubling
// any resolution parameter never decreases the estimate; heights are
// -1 + 2j/height_count for 0 < j < height_count; the polar family with
// eps = 2^-k, k = 1..20 is always included. Throws SingularMatrix and
// InvalidConfig (grids < 8).
double clq_estimate(const Mat2& q, int center_count, int height_count, int samples);

}  // namespace capdisc
