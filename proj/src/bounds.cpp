#include "capdisc/bounds.hpp"

#include <cmath>
#include <numbers>

#include "capdisc/error.hpp"

namespace capdisc {

using std::numbers::sqrt2;

namespace {

double abs_det(const Mat2& q) {
  if (is_singular(q)) throw SingularMatrix("lattice matrix Q is singular");
  return std::abs(det(q));
}

void require_points(std::size_t n) {
  if (n < 1) throw InvalidConfig("N must be at least 1");
}

void require_k(int k) {
  if (k < 1) throw InvalidConfig("K must be a positive integer");
}

}  // namespace

double theorem_bound(const Mat2& q, std::size_t n, double d, double clq) {
  require_points(n);
  if (!(d >= 0.0)) throw InvalidConfig("d must be nonnegative");
  if (!(clq > 0.0)) throw InvalidConfig("C_L must be positive");
  return (d + sqrt2 * clq) * std::sqrt(abs_det(q)) / std::sqrt(static_cast<double>(n));
}

double corollary_bound(const Mat2& q, std::size_t n) {
  require_points(n);
  return frobenius(q) / std::sqrt(abs_det(q)) * (4.0 + 3.0 * sqrt2) /
         std::sqrt(static_cast<double>(n));
}

double d_lemma_bound_leading(const Mat2& q) {
  const Mat2 qi = inverse(q);
  return 2.0 * sqrt2 * (norm(qi.column(0)) + norm(qi.column(1)));
}

double d_lemma_bound(const Mat2& q, int k) {
  require_k(k);
  return d_lemma_bound_leading(q) + 20.0 / k;
}

double d_lemma_bound_weak(const Mat2& q, int k) {
  require_k(k);
  return 4.0 * frobenius(q) / abs_det(q) + 20.0 / k;
}

double s_k(const Mat2& q, int k, std::size_t n) {
  require_points(n);
  require_k(k);
  return std::sqrt(1.0 / (abs_det(q) * static_cast<double>(n))) - 1.0 / k;
}

std::string_view to_string(ClqSource source) {
  switch (source) {
    case ClqSource::Analytic3:
      return "analytic-3";
    case ClqSource::CertifiedUpper:
      return "certified-upper";
    case ClqSource::NumericEstimate:
      return "numeric-estimate";
  }
  return "analytic-3";
}

ClqSource default_clq_source(const Mat2& q) {
  return q == Mat2::identity() ? ClqSource::Analytic3 : ClqSource::CertifiedUpper;
}

double certified_clq(const Mat2& q) { return kClqIdentity * frobenius(inverse(q)); }

BoundReport bound_report(const PlanarPointSet& set, std::optional<double> numeric_clq) {
  const Mat2& q = set.config.q;
  const int k = set.config.k;
  BoundReport r;
  r.n = set.size();
  r.k = k;
  r.det = det(q);
  r.frobenius = frobenius(q);
  r.d_value = count_deviation(set);
  r.d_lemma_bound = d_lemma_bound(q, k);
  r.d_lemma_bound_weak = d_lemma_bound_weak(q, k);
  if (numeric_clq) {
    r.clq_source = ClqSource::NumericEstimate;
    r.clq_used = *numeric_clq;
  } else {
    r.clq_source = default_clq_source(q);
    r.clq_used = r.clq_source == ClqSource::Analytic3 ? kClqIdentity : certified_clq(q);
  }
  if (r.n > 0) {
    r.theorem_leading = theorem_bound(q, r.n, r.d_value, r.clq_used);
    r.theorem_leading_d0 = theorem_bound(q, r.n, 0.0, r.clq_used);
    r.corollary_leading = corollary_bound(q, r.n);
    r.s_k = s_k(q, k, r.n);
  }
  return r;
}

}  // namespace capdisc
