#ifndef LOGEULER_COVER_HPP
#define LOGEULER_COVER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logeuler/geometry.hpp"

namespace logeuler {

/// A finite cover presented as a ring pullback plus branch and
/// ramification arrangements with ramification indices. Ramification
/// indices are input data; components of the preimage that are not
/// actually ramified carry e = 1 and stay in the ramification
/// arrangement.
struct CoverData {
  std::string name;
  ModelPtr domain;    // X
  ModelPtr codomain;  // Y
  Int degree = 1;     // mu
  std::map<std::string, std::string> pullback_images;  // Y generator -> X polynomial text
  Arrangement branch;  // on Y
  Arrangement ram;     // on X
  std::map<std::string, std::string> assignment;  // ram label -> branch label
  std::map<std::string, Int> ram_index;           // ram label -> e >= 1
  std::optional<std::map<std::string, Int>> component_degrees;

  Int ram_index_of(size_t ram_position) const;
  int branch_position_of(size_t ram_position) const;

  /// E_{R^a} = prod_i e_i^{a_i} over the ramification labels.
  Int ramification_product(const MonomialExponent& a) const;

  /// Image exponent under the cover: b_j = sum_{assignment(i)=j} a_i.
  MonomialExponent push_exponent(const MonomialExponent& a) const;
};

struct ValidationIssue {
  std::string check;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

/// Structural and arithmetic validation: the pullback respects the
/// codomain presentation and scales top-degree integrals by mu, branch
/// labels are covered, pullback of each branch class equals
/// sum e_i R_i, same-assignment ramification divisors pairwise
/// annihilate wherever the ring can certify it, and supplied component
/// degrees satisfy sum mu_Z e_Z = mu.
ValidationReport validate_cover(const CoverData& cover);

/// Ring-morphism extension of the generator images.
GradedElement pullback(const CoverData& cover, const GradedElement& e);
SheafClass pullback_sheaf(const CoverData& cover, const SheafClass& s);

/// pi^*(c_i(log branch)) == c_i(log ram) for all i <= n. On failure the
/// optional diagnostics receive a per-degree diff.
bool check_log_pullback(const CoverData& cover, std::string* diagnostics = nullptr);

/// chi_log(X, ram, pi^* F) == mu * chi_log(Y, branch, F).
bool check_log_chi(const CoverData& cover, const SheafClass& s,
                   std::string* diagnostics = nullptr);

/// chi(X, pi^* F) - mu chi(Y, F), both sides in the literal convention
/// and computed independently of any Riemann-Hurwitz formula.
Rational rh_lhs(const CoverData& cover, const SheafClass& s);

/// One evaluated term of the ramification-side sum.
struct RhTerm {
  MonomialExponent a;
  bool mf = true;
  Rational delta;        // delta_a
  Int ram_product = 1;   // E_{R^a}
  Rational coefficient;  // full signed coefficient (before the global sign)
  Rational stratum_chi;
  Rational value;  // coefficient * stratum_chi * global sign
};

/// Theorem-form right side: global_sign * sum over 1 <= |a| <= n of
/// (-1)^{|a|} delta_a (E_{R^a} - 1) chi_stratum_log(a).
Rational rh_rhs_theorem(const CoverData& cover, const SheafClass& s, int global_sign,
                        std::vector<RhTerm>* terms = nullptr);

/// Corollary-form right side: multiplicity-free exponents take the
/// closed coefficient delta_a prod (1 - e_i) against plain stratum
/// values, the rest take delta_a (E_a - E_{hat a}) against logarithmic
/// ones. Every closed coefficient is cross-checked against the raw
/// double-sum before use; a mismatch throws math_error.
Rational rh_rhs_corollary(const CoverData& cover, const SheafClass& s, int global_sign,
                          std::vector<RhTerm>* terms = nullptr);

/// The unique global sign making the theorem right side match the
/// independently computed left side on every supplied cover (with the
/// structure sheaf and any extra sheaves). Throws math_error when no
/// sign or both signs validate.
int determine_sign(const std::vector<CoverData>& covers,
                   const std::vector<std::pair<size_t, SheafClass>>& extra_sheaves = {});

}  // namespace logeuler

#endif
