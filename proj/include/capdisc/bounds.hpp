#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "capdisc/geometry.hpp"
#include "capdisc/lattice.hpp"

namespace capdisc {

// Leading term (d + sqrt(2) clq) sqrt|det Q| / sqrt(N) of the discrepancy
// upper bound. The O(1/N) remainder has no explicit constant and is left out.
double theorem_bound(const Mat2& q, std::size_t n, double d, double clq);

// (||Q||_F / sqrt|det Q|) (4 + 3 sqrt 2) / sqrt(N), leading term only.
double corollary_bound(const Mat2& q, std::size_t n);

// 2 sqrt 2 (||Q^-1 e1|| + ||Q^-1 e2||) + 20/K.
double d_lemma_bound(const Mat2& q, int k);
// 4 ||Q||_F / |det Q| + 20/K; never smaller than d_lemma_bound.
double d_lemma_bound_weak(const Mat2& q, int k);
// d_lemma_bound without the 20/K term, which is O(1/N) after scaling.
double d_lemma_bound_leading(const Mat2& q);

// s_K in sqrt(1 / (|det Q| N)) = 1/K + s_K.
double s_k(const Mat2& q, int k, std::size_t n);

enum class ClqSource { Analytic3, CertifiedUpper, NumericEstimate };
std::string_view to_string(ClqSource source);

inline constexpr double kClqIdentity = 3.0;

// 3 for the identity, 3 ||Q^-1||_F otherwise.
ClqSource default_clq_source(const Mat2& q);
double certified_clq(const Mat2& q);

struct BoundReport {
  double theorem_leading = 0.0;     // with the measured d
  double theorem_leading_d0 = 0.0;  // with d = 0, as for a count-corrected set
  double corollary_leading = 0.0;
  double d_value = 0.0;
  double d_lemma_bound = 0.0;
  double d_lemma_bound_weak = 0.0;
  double clq_used = 0.0;
  ClqSource clq_source = ClqSource::Analytic3;
  double s_k = 0.0;
  std::size_t n = 0;
  int k = 0;
  double det = 0.0;
  double frobenius = 0.0;
};

// Evaluates every bound for a constructed set. `numeric_clq` selects
// ClqSource::NumericEstimate; otherwise the default source is used.
BoundReport bound_report(const PlanarPointSet& set, std::optional<double> numeric_clq = std::nullopt);

}  // namespace capdisc
