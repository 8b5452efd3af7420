#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "capdisc/lambert.hpp"
#include "capdisc/lattice.hpp"

namespace capdisc {

struct SpherePointSet {
  std::vector<Vec3> points;
  std::optional<PlanarPointSet> origin;

  std::size_t size() const { return points.size(); }
};

// Lambert image of a planar set; keeps the planar set as origin.
SpherePointSet lambert_image(const PlanarPointSet& planar);

enum class DiscrepancyMethod { Exact, Estimate, Certificate };
std::string_view to_string(DiscrepancyMethod method);

// value = |points_in_witness / N - (1 - witness.t) / 2|.
struct DiscrepancyReport {
  double value = 0.0;
  Cap witness;
  DiscrepancyMethod method = DiscrepancyMethod::Exact;
  std::size_t points_in_witness = 0;
  std::size_t n = 0;
};

std::size_t cap_count(const SpherePointSet& points, const Cap& cap);

inline constexpr std::size_t kDefaultExactLimit = 600;

// Supremum over caps, evaluated on the centres {+-p_i}, {+-(p_i + p_j)/|.|}
// and {+-normal of the plane through p_i, p_j, p_k}, each scanned over every
// point height with both open and closed counts (plus t = -1 and t = 1).
// Ties resolve to the lexicographically smallest (w, t, closed). Throws
// TooLarge above max_points and TooFew for an empty set.
DiscrepancyReport exact_discrepancy(const SpherePointSet& points,
                                    std::size_t max_points = kDefaultExactLimit);

// Running maximum over `trials` random centres (normalised Gaussian triples
// from a generator seeded with `seed`), each scanned exactly in t. Trial i
// draws the same centre whatever the total trial count.
DiscrepancyReport estimate_discrepancy(const SpherePointSet& points, std::uint64_t trials,
                                       std::uint64_t seed);

// North-pole cap just above the first ring of the centred standard lattice,
// t = 1 - 1/(2K) + 1e-9, evaluated on L(P(K)) with Q = identity.
DiscrepancyReport polar_certificate(int k);
inline constexpr double kCertificateShift = 1e-9;

// Minimum pairwise Euclidean distance (z-sorted sweep). Throws TooFew for
// fewer than two points.
double separation_distance(const SpherePointSet& points);

}  // namespace capdisc
