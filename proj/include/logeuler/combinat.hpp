#ifndef LOGEULER_COMBINAT_HPP
#define LOGEULER_COMBINAT_HPP

#include <vector>

#include "logeuler/rational.hpp"

namespace logeuler {

/// A natural-number tuple indexed by an arrangement's divisor labels.
using MonomialExponent = std::vector<unsigned>;

/// The canonical multiset of nonzero entries of a monomial exponent,
/// stored sorted descending. The delta and signed-count constants
/// depend only on this.
struct MonomialType {
  std::vector<unsigned> parts;

  /// Zero entries are dropped, the rest sorted descending; the type of
  /// (2,0,1) equals the type of (2,1).
  explicit MonomialType(const std::vector<unsigned>& entries);

  unsigned weight() const;  // |b|
  bool operator<(const MonomialType& rhs) const { return parts < rhs.parts; }
  bool operator==(const MonomialType& rhs) const { return parts == rhs.parts; }
  std::string to_string() const;
};

unsigned exponent_weight(const MonomialExponent& b);
bool is_mf(const MonomialExponent& b);
MonomialExponent tilde(const MonomialExponent& b);
MonomialExponent hat(const MonomialExponent& b);

/// delta constant: the coefficient of D^b in the truncated expansion of
/// prod_D D/(1 - e^{-D}) over fresh abstract divisors. Memoized by
/// monomial type behind an internal lock.
Rational delta_constant(const MonomialType& type);
Rational delta_constant(const MonomialExponent& b);

/// delta of the one-part type (k), with delta_(0) = 1.
Rational delta_single(unsigned k);

/// Independent route for delta: coefficient extraction from the
/// Riemann-Roch polynomial at elementary symmetric arguments,
/// Q_{|b|}(1; Delta_1, ..., Delta_{|b|}).
Rational delta_constant_via_q(const MonomialType& type);

/// All tuples (b_1, ..., b_k), k >= 1, with sum b, all |b_j| >= 1,
/// pairwise disjoint support, and b_1..b_{k-1} multiplicity free.
/// Disjoint support forces each index's full multiplicity into a single
/// part.
std::vector<std::vector<MonomialExponent>> ordered_factorizations(const MonomialExponent& b);

/// sum_k (-1)^{k+1} (number of length-k ordered factorizations),
/// computed combinatorially (binomials and Stirling numbers); memoized
/// by type.
Int signed_count(const MonomialExponent& b);
Int signed_count(const MonomialType& type);

/// Slow oracle for signed_count: raw tuple enumeration.
Int signed_count_enumerated(const MonomialExponent& b);

/// lambda constant: sum over ordered factorizations of
/// (-1)^{k+1} prod_j delta(b_j). The empty-tuple k = 0 convention gives
/// lambda = -1 on the zero exponent.
Rational lambda_constant(const MonomialExponent& b);

/// Enumerates every exponent tuple of the given length with
/// 1 <= total <= max_total (ascending by total, then lexicographic).
std::vector<MonomialExponent> enumerate_exponents(size_t length, unsigned max_total);

/// All monomial types of weight 1..max_weight.
std::vector<MonomialType> enumerate_types(unsigned max_weight);

/// Parses "2,1" or "2, 1" into an exponent tuple.
MonomialExponent parse_exponent(const std::string& text);
std::string exponent_to_string(const MonomialExponent& b);

}  // namespace logeuler

#endif
