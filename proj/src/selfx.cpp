#include "logeuler/selfx.hpp"

#include <algorithm>

namespace logeuler {

const std::vector<size_t> RewriteRuleSet::kNoRules{};

RewriteRuleSet::RewriteRuleSet(std::vector<RewriteRule> rules,
                               const std::vector<std::string>& base_labels)
    : rules_(std::move(rules)) {
  for (size_t r = 0; r < rules_.size(); ++r) {
    if (rules_[r].rhs.empty())
      throw input_error("rewrite rule for '" + rules_[r].lhs + "' has an empty right side");
    by_label_[rules_[r].lhs].push_back(r);
    for (size_t e = 0; e < rules_[r].rhs.size(); ++e) {
      const std::string& label = rules_[r].rhs[e].label;
      if (std::find(base_labels.begin(), base_labels.end(), label) != base_labels.end())
        throw input_error("rewrite label '" + label + "' collides with the arrangement");
      if (!introducer_.emplace(label, std::make_pair(r, e)).second)
        throw input_error("rewrite label '" + label + "' appears on two right sides");
    }
  }
  for (const auto& [label, position] : introducer_) {
    (void)position;
    if (std::find(base_labels.begin(), base_labels.end(), label) != base_labels.end())
      throw input_error("rewrite label '" + label + "' collides with the arrangement");
  }
}

const std::vector<size_t>& RewriteRuleSet::lists_for(const std::string& label) const {
  auto it = by_label_.find(label);
  return it == by_label_.end() ? kNoRules : it->second;
}

bool RewriteRuleSet::has_rules_for(const std::string& label) const {
  return by_label_.count(label) > 0;
}

const RewriteRule::Entry& RewriteRuleSet::introducer(const std::string& label) const {
  auto it = introducer_.find(label);
  if (it == introducer_.end())
    throw input_error("label '" + label + "' is not introduced by any rule");
  return rules_[it->second.first].rhs[it->second.second];
}

bool RewriteRuleSet::is_fresh_label(const std::string& label) const {
  return introducer_.count(label) > 0;
}

std::vector<std::string> RewriteRuleSet::fresh_labels() const {
  std::vector<std::pair<std::pair<size_t, size_t>, std::string>> ordered;
  for (const auto& [label, position] : introducer_) ordered.emplace_back(position, label);
  std::sort(ordered.begin(), ordered.end());
  std::vector<std::string> out;
  for (auto& [position, label] : ordered) out.push_back(std::move(label));
  return out;
}

// ---------------------------------------------------------------------------
// ExpansionTerm

std::map<std::string, unsigned> ExpansionTerm::base_part(
    const std::vector<std::string>& originals) const {
  std::map<std::string, unsigned> out;
  for (const auto& [label, power] : exponent)
    if (std::find(originals.begin(), originals.end(), label) != originals.end())
      out.emplace(label, power);
  return out;
}

std::map<std::string, unsigned> ExpansionTerm::fresh_part(
    const std::vector<std::string>& originals) const {
  std::map<std::string, unsigned> out;
  for (const auto& [label, power] : exponent)
    if (std::find(originals.begin(), originals.end(), label) == originals.end())
      out.emplace(label, power);
  return out;
}

std::string ExpansionTerm::exponent_key() const {
  std::string out;
  for (const auto& [label, power] : exponent) {
    if (power == 0) continue;
    if (!out.empty()) out += "*";
    out += label;
    if (power > 1) out += "^" + std::to_string(power);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// Expander

Expander::Expander(std::vector<std::string> original_labels, RewriteRuleSet rules, int budget)
    : originals_(std::move(original_labels)), rules_(std::move(rules)), budget_(budget) {
  if (budget_ < 0) throw input_error("negative expansion budget");
}

ExpansionTerm Expander::initial_term(const MonomialExponent& a) const {
  if (a.size() != originals_.size())
    throw input_error("exponent length does not match the arrangement");
  const int weight = static_cast<int>(exponent_weight(a));
  if (weight < 1) throw input_error("expansion needs |a| >= 1");
  if (weight > budget_)
    throw input_error("exponent weight exceeds the degree budget");
  ExpansionTerm term;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0) term.exponent.emplace(originals_[i], a[i]);
  term.coefficient = 1;
  term.residual_q = budget_ - weight;
  return term;
}

std::optional<std::string> Expander::first_self_intersecting(const ExpansionTerm& term) const {
  // Originals in arrangement order first, then fresh labels in
  // introduction order; the final term set is order-independent, this
  // only fixes the traversal.
  for (const auto& label : originals_) {
    auto it = term.exponent.find(label);
    if (it != term.exponent.end() && it->second >= 2) return label;
  }
  for (const auto& label : rules_.fresh_labels()) {
    auto it = term.exponent.find(label);
    if (it != term.exponent.end() && it->second >= 2) return label;
  }
  return std::nullopt;
}

std::vector<ExpansionTerm> Expander::expand_once(const ExpansionTerm& term) const {
  const auto target = first_self_intersecting(term);
  if (!target)
    throw input_error("expand_once needs a label with multiplicity >= 2");
  const std::string& label = *target;
  const auto& lists = rules_.lists_for(label);
  unsigned used = 0;
  if (auto it = term.used_rules.find(label); it != term.used_rules.end()) used = it->second;
  if (used >= lists.size())
    throw input_error("expansion stuck: no unused rule left for label '" + label + "'");
  const RewriteRule& rule = rules_.rules()[lists[used]];

  std::vector<ExpansionTerm> out;
  const int m = term.residual_q;
  for (const auto& entry : rule.rhs) {
    for (int k = 1; k <= m + 1; ++k) {
      ExpansionTerm next = term;
      next.used_rules[label] = used + 1;
      if (--next.exponent.at(label) == 0) next.exponent.erase(label);
      next.exponent[entry.label] += static_cast<unsigned>(k);
      next.residual_q = m - k + 1;
      Rational factor = entry.u * delta_single(static_cast<unsigned>(k - 1));
      if (k % 2 == 0) factor = -factor;
      next.coefficient = term.coefficient * factor;
      if (next.coefficient == 0) continue;
      out.push_back(std::move(next));
    }
  }
  return out;
}

namespace {

int self_intersection_count(const ExpansionTerm& term) {
  int count = 0;
  for (const auto& [label, power] : term.exponent)
    if (power >= 2) count += static_cast<int>(power) - 1;
  return count;
}

}  // namespace

std::vector<ExpansionTerm> Expander::expand_full(const MonomialExponent& a) const {
  std::vector<ExpansionTerm> done;
  std::vector<ExpansionTerm> work{initial_term(a)};
  while (!work.empty()) {
    ExpansionTerm term = std::move(work.back());
    work.pop_back();
    if (!first_self_intersecting(term)) {
      done.push_back(std::move(term));
      continue;
    }
    const int before_q = term.residual_q;
    const int before_self = self_intersection_count(term);
    for (auto& next : expand_once(term)) {
      const bool decreased =
          next.residual_q < before_q ||
          (next.residual_q == before_q && self_intersection_count(next) < before_self);
      if (!decreased)
        throw math_error("expansion step failed to decrease the termination measure");
      work.push_back(std::move(next));
    }
  }
  std::sort(done.begin(), done.end(), [](const ExpansionTerm& x, const ExpansionTerm& y) {
    return x.exponent < y.exponent;
  });
  return done;
}

Rational Expander::term_coefficient(const std::map<std::string, unsigned>& fresh) const {
  Rational out(1);
  unsigned total_hits = 0;
  for (const auto& [label, power] : fresh) {
    if (power == 0) continue;
    if (power > 1) throw input_error("term_coefficient needs a multiplicity-free support");
    out *= rules_.introducer(label).u;  // throws when the label is unknown
    unsigned hits = 0;
    for (size_t rule_index : rules_.lists_for(label)) {
      const RewriteRule& rule = rules_.rules()[rule_index];
      for (const auto& entry : rule.rhs)
        if (fresh.count(entry.label) && fresh.at(entry.label) > 0) {
          ++hits;
          break;
        }
    }
    total_hits += hits;
    out *= delta_single(hits);
  }
  if (total_hits % 2 == 1) out = -out;
  return out;
}

std::vector<std::map<std::string, unsigned>> Expander::admissible_terms(
    const MonomialExponent& a) const {
  if (a.size() != originals_.size())
    throw input_error("exponent length does not match the arrangement");
  const unsigned tilde_weight = exponent_weight(tilde(a));
  if (static_cast<int>(tilde_weight) > budget_) return {};
  const unsigned max_fresh = static_cast<unsigned>(budget_) - tilde_weight;

  std::vector<std::map<std::string, unsigned>> out;
  std::map<std::string, unsigned> current;

  // pending: labels still owing rule usages, as (label, usages left).
  auto recurse = [&](auto&& self, std::vector<std::pair<std::string, unsigned>> pending,
                     unsigned fresh_count) -> void {
    // Every owed usage will add at least one fresh label.
    unsigned owed = 0;
    for (const auto& [label, left] : pending) owed += left;
    if (fresh_count + owed > max_fresh) return;
    if (pending.empty()) {
      out.push_back(current);
      return;
    }
    auto [label, left] = pending.back();
    if (left == 0) {
      pending.pop_back();
      self(self, std::move(pending), fresh_count);
      return;
    }
    const auto& lists = rules_.lists_for(label);
    const unsigned already = [&] {
      unsigned used = 0;
      for (size_t rule_index : lists) {
        const RewriteRule& rule = rules_.rules()[rule_index];
        for (const auto& entry : rule.rhs)
          if (current.count(entry.label)) {
            ++used;
            break;
          }
      }
      return used;
    }();
    if (already >= lists.size()) return;  // out of rules for this label
    const RewriteRule& rule = rules_.rules()[lists[already]];
    pending.back().second = left - 1;
    for (const auto& entry : rule.rhs) {
      current.emplace(entry.label, 1);
      // The new label may consume 0..(number of its rules) usages.
      const size_t entry_rules = rules_.lists_for(entry.label).size();
      for (unsigned h = 0; h <= entry_rules; ++h) {
        auto next = pending;
        if (h > 0) next.emplace_back(entry.label, h);
        self(self, std::move(next), fresh_count + 1);
      }
      current.erase(entry.label);
    }
  };

  std::vector<std::pair<std::string, unsigned>> pending;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] >= 2) pending.emplace_back(originals_[i], a[i] - 1);
  recurse(recurse, std::move(pending), 0);

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// evaluation

Rational evaluate_expansion_term(const Arrangement& arr, const Expander& expander,
                                 const ExpansionTerm& term, const SheafClass& s) {
  const ModelPtr& model = arr.model;
  std::vector<Divisor> divisors = arr.divisors;
  GradedElement stratum = model->one();
  for (const auto& [label, power] : term.exponent) {
    const int idx = arr.label_index(label);
    GradedElement cls = model->zero();
    if (idx >= 0) {
      cls = arr.divisors[static_cast<size_t>(idx)].cls;
    } else {
      const RewriteRule::Entry& entry = expander.rule_set().introducer(label);
      if (!entry.class_text)
        throw input_error("label '" + label + "' has no class; formal rules cannot be evaluated");
      cls = model->parse(*entry.class_text);
      if (!cls.is_pure_degree(1))
        throw input_error("class of rewrite label '" + label + "' is not of degree 1");
      divisors.push_back({label, cls});
    }
    stratum = stratum * cls.pow(power);
  }
  const Arrangement extended(model, std::move(divisors));
  const GradedElement density =
      chern_character(s, model) * todd_series(log_cotangent(extended), model);
  return term.coefficient * model->integrate(stratum * density);
}

Rational evaluate_expansion(const Arrangement& arr, const Expander& expander,
                            const std::vector<ExpansionTerm>& terms, const SheafClass& s) {
  Rational total(0);
  for (const auto& term : terms) total += evaluate_expansion_term(arr, expander, term, s);
  return total;
}

}  // namespace logeuler
