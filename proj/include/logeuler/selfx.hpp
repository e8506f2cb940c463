#ifndef LOGEULER_SELFX_HPP
#define LOGEULER_SELFX_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logeuler/geometry.hpp"

namespace logeuler {

/// An ordered rewrite system over divisor labels. Rules for one label
/// are consumed in declaration order (the lists I_{j,0}, I_{j,1}, ...);
/// every right-hand label must be globally fresh: distinct from the
/// arrangement labels and from every other right-hand label.
struct RewriteRule {
  struct Entry {
    Rational u;
    std::string label;
    std::optional<std::string> class_text;  // required for evaluation, not for formal runs
  };
  std::string lhs;
  std::vector<Entry> rhs;
};

class RewriteRuleSet {
public:
  RewriteRuleSet(std::vector<RewriteRule> rules, const std::vector<std::string>& base_labels);

  const std::vector<RewriteRule>& rules() const { return rules_; }

  /// Rule indices applicable to a label, in declaration order.
  const std::vector<size_t>& lists_for(const std::string& label) const;
  bool has_rules_for(const std::string& label) const;

  /// Introducing rule entry of a fresh label.
  const RewriteRule::Entry& introducer(const std::string& label) const;
  bool is_fresh_label(const std::string& label) const;

  std::vector<std::string> fresh_labels() const;  // in introduction order

private:
  std::vector<RewriteRule> rules_;
  std::map<std::string, std::vector<size_t>> by_label_;
  std::map<std::string, std::pair<size_t, size_t>> introducer_;  // label -> (rule, entry)
  static const std::vector<size_t> kNoRules;
};

/// One summand of the rewriting of a self-intersecting stratum term.
/// Exponent entries cover both the original labels and the introduced
/// ones; in fully expanded output every entry is <= 1 on fresh labels.
struct ExpansionTerm {
  std::map<std::string, unsigned> exponent;
  Rational coefficient = 1;
  int residual_q = 0;  // the subscript m of the residual functional
  std::map<std::string, unsigned> used_rules;

  std::map<std::string, unsigned> base_part(const std::vector<std::string>& originals) const;
  std::map<std::string, unsigned> fresh_part(const std::vector<std::string>& originals) const;
  std::string exponent_key() const;
};

class Expander {
public:
  /// original_labels come from the arrangement; budget is the total
  /// degree available (the ambient dimension in evaluation runs).
  Expander(std::vector<std::string> original_labels, RewriteRuleSet rules, int budget);

  const std::vector<std::string>& original_labels() const { return originals_; }
  const RewriteRuleSet& rule_set() const { return rules_; }
  int budget() const { return budget_; }

  ExpansionTerm initial_term(const MonomialExponent& a) const;

  /// Rewrites one power of the first label carrying multiplicity >= 2,
  /// through that label's next unused rule. Terms are indexed by the
  /// rule entries and by the entering power k = 1..m+1 with coefficient
  /// u (-1)^{k-1} delta_{(k-1)}.
  std::vector<ExpansionTerm> expand_once(const ExpansionTerm& term) const;

  /// Fixed point of expand_once under the first-unused-rule policy; the
  /// (residual degree, self-intersection count) pair decreases
  /// lexicographically at every step. Output is sorted by exponent.
  std::vector<ExpansionTerm> expand_full(const MonomialExponent& a) const;

  /// Signed coefficient of a fully expanded term from its fresh support
  /// alone: (-1)^{sum y_j} prod_j u_j delta_{(y_j)} with y_j the number
  /// of label j's rules hit.
  Rational term_coefficient(const std::map<std::string, unsigned>& fresh) const;

  /// The fresh supports reachable by the ordered policy, enumerated
  /// directly from the rule lists (no expansion).
  std::vector<std::map<std::string, unsigned>> admissible_terms(const MonomialExponent& a) const;

private:
  std::optional<std::string> first_self_intersecting(const ExpansionTerm& term) const;

  std::vector<std::string> originals_;
  RewriteRuleSet rules_;
  int budget_;
};

/// Evaluates an expansion term as an ambient stratum value: the
/// exponent's class against ch(s) Todd(log classes of the arrangement
/// extended by the term's fresh labels). Rule entries used by the term
/// must carry classes.
Rational evaluate_expansion_term(const Arrangement& arr, const Expander& expander,
                                 const ExpansionTerm& term, const SheafClass& s);

/// Sum of evaluated terms; equal to chi_stratum_log of the original
/// exponent whenever the rules are true relations in the model.
Rational evaluate_expansion(const Arrangement& arr, const Expander& expander,
                            const std::vector<ExpansionTerm>& terms, const SheafClass& s);

}  // namespace logeuler

#endif
