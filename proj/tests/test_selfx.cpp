#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "logeuler/builtins.hpp"
#include "logeuler/random_gen.hpp"
#include "logeuler/selfx.hpp"

using namespace logeuler;

namespace {

Expander scenario_expander(const ExpandScenario& scenario) {
  std::vector<std::string> labels;
  for (const auto& d : scenario.arrangement.divisors) labels.push_back(d.label);
  return Expander(labels, RewriteRuleSet(scenario.rules, labels), scenario.budget);
}

RewriteRule formal_rule(std::string lhs, std::vector<std::pair<std::string, std::string>> rhs) {
  RewriteRule rule;
  rule.lhs = std::move(lhs);
  for (auto& [u, label] : rhs) rule.rhs.push_back({parse_rational(u), label, std::nullopt});
  return rule;
}

}  // namespace

TEST_CASE("rule set validation") {
  const std::vector<std::string> base = {"D"};
  CHECK_THROWS_WITH_AS(RewriteRuleSet({formal_rule("D", {{"1", "D"}})}, base),
                       doctest::Contains("collides"), input_error);
  CHECK_THROWS_WITH_AS(
      RewriteRuleSet({formal_rule("D", {{"1", "E1"}}), formal_rule("D", {{"1", "E1"}})}, base),
      doctest::Contains("two right sides"), input_error);
  const RewriteRuleSet ok({formal_rule("D", {{"1", "E1"}, {"2", "E2"}}),
                           formal_rule("E1", {{"1", "E3"}})},
                          base);
  CHECK(ok.lists_for("D").size() == 1);
  CHECK(ok.lists_for("E1").size() == 1);
  CHECK(ok.is_fresh_label("E3"));
  CHECK_FALSE(ok.is_fresh_label("D"));
  CHECK(ok.introducer("E2").u == 2);
  CHECK_THROWS_AS(static_cast<void>(ok.introducer("X")), input_error);
}

TEST_CASE("expand_once structure") {
  // l = 2, m = 2, rule D ~ E1 + E2: six terms, entering powers 1..3.
  const std::vector<std::string> base = {"D"};
  const Expander expander(base, RewriteRuleSet({formal_rule("D", {{"1", "E1"}, {"1", "E2"}})},
                                               base),
                          4);
  const ExpansionTerm start = expander.initial_term({2});
  CHECK(start.residual_q == 2);
  const auto once = expander.expand_once(start);
  REQUIRE(once.size() == 6);
  std::map<std::string, Rational> coefficients;
  for (const auto& term : once) coefficients[term.exponent_key()] = term.coefficient;
  // k = 1 keeps the coefficient u; k = 2 and 3 carry -delta_(1), +delta_(2).
  CHECK(coefficients.at("D*E1") == 1);
  CHECK(coefficients.at("D*E1^2") == frac(-1, 2));
  CHECK(coefficients.at("D*E1^3") == frac(1, 12));
  CHECK(coefficients.at("D*E2") == 1);
  CHECK(coefficients.at("D*E2^2") == frac(-1, 2));
  CHECK(coefficients.at("D*E2^3") == frac(1, 12));
  for (const auto& term : once)
    if (term.exponent_key() == "D*E1")
      CHECK(term.residual_q == 2);
}

TEST_CASE("expand_once needs a self-intersection and an unused rule") {
  const std::vector<std::string> base = {"D"};
  const Expander expander(base, RewriteRuleSet({formal_rule("D", {{"1", "E1"}})}, base), 3);
  CHECK_THROWS_AS(static_cast<void>(expander.expand_once(expander.initial_term({1}))),
                  input_error);
  // A second self-intersection power with only one rule gets stuck,
  // and the report names the exhausted label.
  const Expander narrow(base, RewriteRuleSet({formal_rule("D", {{"1", "E1"}})}, base), 4);
  CHECK_THROWS_WITH_AS(static_cast<void>(narrow.expand_full({3})),
                       doctest::Contains("no unused rule left for label 'D'"), input_error);
}

TEST_CASE("the worked depth-three cascade") {
  const ExpandScenario scenario = builtin_expand_scenario("sec6-example");
  const Expander expander = scenario_expander(scenario);
  const auto terms = expander.expand_full(scenario.exponent);
  REQUIRE(terms.size() == 8);

  const std::map<std::string, Rational> expected = {
      {"D*E1", frac(1, 1)},       {"D*E1*E3", frac(-1, 2)},
      {"D*E1*E3*E7", frac(1, 4)}, {"D*E1*E3*E4", frac(1, 12)},
      {"D*E2", frac(1, 1)},       {"D*E2*E5", frac(-1, 2)},
      {"D*E2*E5*E8", frac(1, 4)}, {"D*E2*E5*E6", frac(1, 12)},
  };
  std::map<std::string, Rational> actual;
  for (const auto& term : terms) {
    actual[term.exponent_key()] = term.coefficient;
    // Every fresh exponent is multiplicity free and the original label
    // is reduced to its support.
    for (const auto& [label, power] : term.fresh_part(expander.original_labels()))
      CHECK(power <= 1);
    CHECK(term.base_part(expander.original_labels()) ==
          std::map<std::string, unsigned>{{"D", 1}});
  }
  CHECK(actual == expected);

  // Residual degrees: Q_2 on the depth-one terms, then Q_1, Q_0.
  for (const auto& term : terms) {
    const size_t fresh = term.fresh_part(expander.original_labels()).size();
    CHECK(term.residual_q == 3 - static_cast<int>(fresh));
  }
}

TEST_CASE("already multiplicity-free exponents pass through") {
  const ExpandScenario scenario = builtin_expand_scenario("sec6-example");
  const Expander expander = scenario_expander(scenario);
  const auto terms = expander.expand_full({1});
  REQUIRE(terms.size() == 1);
  CHECK(terms[0].coefficient == 1);
  CHECK(terms[0].fresh_part(expander.original_labels()).empty());
}

TEST_CASE("zero rule weights annihilate the fresh terms") {
  const std::vector<std::string> base = {"D"};
  const Expander expander(base, RewriteRuleSet({formal_rule("D", {{"0", "E1"}})}, base), 3);
  CHECK(expander.expand_full({2}).empty());
}

TEST_CASE("term coefficients from the fresh support alone") {
  const ExpandScenario scenario = builtin_expand_scenario("sec6-example");
  const Expander expander = scenario_expander(scenario);
  CHECK(expander.term_coefficient({{"E1", 1}, {"E3", 1}, {"E7", 1}}) == frac(1, 4));
  CHECK(expander.term_coefficient({{"E1", 1}, {"E3", 1}, {"E4", 1}}) == frac(1, 12));
  CHECK(expander.term_coefficient({{"E1", 1}}) == 1);
  CHECK(expander.term_coefficient({}) == 1);
  CHECK_THROWS_AS(static_cast<void>(expander.term_coefficient({{"X", 1}})), input_error);
}

TEST_CASE("admissible terms of the worked cascade") {
  const ExpandScenario scenario = builtin_expand_scenario("sec6-example");
  const Expander expander = scenario_expander(scenario);
  const auto admissible = expander.admissible_terms(scenario.exponent);
  std::set<std::string> keys;
  for (const auto& fresh : admissible) {
    std::string key;
    for (const auto& [label, power] : fresh) key += label + "|";
    keys.insert(key);
  }
  CHECK(keys == std::set<std::string>{"E1|", "E1|E3|", "E1|E3|E7|", "E1|E3|E4|", "E2|",
                                      "E2|E5|", "E2|E5|E8|", "E2|E5|E6|"});
  // A multiplicity-free exponent admits only the empty support.
  const auto only_empty = expander.admissible_terms({1});
  REQUIRE(only_empty.size() == 1);
  CHECK(only_empty[0].empty());
}

TEST_CASE("budget cuts the admissible supports") {
  // With a tight budget the depth-three branches disappear.
  ExpandScenario scenario = builtin_expand_scenario("sec6-example");
  std::vector<std::string> labels;
  for (const auto& d : scenario.arrangement.divisors) labels.push_back(d.label);
  const Expander tight(labels, RewriteRuleSet(scenario.rules, labels), 3);
  const auto admissible = tight.admissible_terms(scenario.exponent);
  for (const auto& fresh : admissible) CHECK(fresh.size() <= 2);
  CHECK(admissible.size() == 4);  // E1; E1 E3; E2; E2 E5
}

TEST_CASE("expansion equals admissible terms with their coefficients on random rule sets") {
  RandomGen rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    // Random cascade over one or two original labels, depth <= 3.
    const int originals = 1 + static_cast<int>(rng.range(0, 1));
    std::vector<std::string> base;
    for (int i = 0; i < originals; ++i) base.push_back("D" + std::to_string(i));
    std::vector<RewriteRule> rules;
    int fresh_counter = 0;
    std::vector<std::string> expandable = base;
    for (int depth = 0; depth < 3; ++depth) {
      std::vector<std::string> next_layer;
      for (const auto& label : expandable) {
        const int rule_count = static_cast<int>(rng.range(depth == 0 ? 1 : 0, 2));
        for (int r = 0; r < rule_count; ++r) {
          RewriteRule rule;
          rule.lhs = label;
          const int width = static_cast<int>(rng.range(1, 2));
          for (int w = 0; w < width; ++w) {
            std::string fresh = "E" + std::to_string(fresh_counter++);
            Rational u = rng.rational(3, 2);
            if (u == 0) u = 1;
            rule.rhs.push_back({u, fresh, std::nullopt});
            next_layer.push_back(std::move(fresh));
          }
          rules.push_back(std::move(rule));
        }
      }
      expandable = next_layer;
    }
    const int budget = static_cast<int>(rng.range(2, 4));
    const Expander expander(base, RewriteRuleSet(rules, base), budget);
    MonomialExponent a(base.size(), 0);
    a[0] = static_cast<unsigned>(rng.range(2, 3));
    for (size_t i = 1; i < a.size(); ++i) a[i] = static_cast<unsigned>(rng.range(0, 1));
    if (static_cast<int>(exponent_weight(a)) > budget) a[0] = 2;
    if (static_cast<int>(exponent_weight(a)) > budget) continue;

    std::vector<ExpansionTerm> terms;
    try {
      terms = expander.expand_full(a);
    } catch (const input_error&) {
      continue;  // stuck cascades are a reported error, not a result
    }
    const auto admissible = expander.admissible_terms(a);

    std::map<std::map<std::string, unsigned>, Rational> by_fresh;
    for (const auto& term : terms)
      by_fresh[term.fresh_part(expander.original_labels())] = term.coefficient;
    CHECK(by_fresh.size() == terms.size());  // each support arises once
    // Nonzero admissible coefficients match the expansion exactly.
    size_t nonzero = 0;
    for (const auto& fresh : admissible) {
      const Rational coefficient = expander.term_coefficient(fresh);
      if (coefficient == 0) continue;
      ++nonzero;
      auto it = by_fresh.find(fresh);
      REQUIRE(it != by_fresh.end());
      CHECK(it->second == coefficient);
    }
    CHECK(nonzero == by_fresh.size());
  }
}

TEST_CASE("expand_once at residual degree zero keeps the entering-power-one terms") {
  // k runs to m + 1, so m = 0 still yields one term per rule entry;
  // dropping them would break conservation (the plane scenario has
  // m = 0 and a nonzero unexpanded value).
  const ExpandScenario scenario = builtin_expand_scenario("p2-conservation");
  const Expander expander = scenario_expander(scenario);
  const ExpansionTerm start = expander.initial_term(scenario.exponent);
  CHECK(start.residual_q == 0);
  const auto once = expander.expand_once(start);
  CHECK(once.size() == 2);
  for (const auto& term : once) CHECK(term.residual_q == 0);
}

TEST_CASE("conservation under true relations") {
  for (const char* name : {"p2-conservation", "p3-conservation", "sec6-example"}) {
    const ExpandScenario scenario = builtin_expand_scenario(name);
    const Expander expander = scenario_expander(scenario);
    const SheafClass o = SheafClass::trivial(scenario.arrangement.model);
    const auto terms = expander.expand_full(scenario.exponent);
    const Rational expanded = evaluate_expansion(scenario.arrangement, expander, terms, o);
    const Rational direct = chi_stratum_log(scenario.arrangement, scenario.exponent, o);
    INFO(name);
    CHECK(expanded == direct);
  }
}

TEST_CASE("conservation pins the alternating sign") {
  // Flipping the k = 2 sign (as the printed example displays it) breaks
  // conservation in the plane-with-depth scenario.
  const ExpandScenario scenario = builtin_expand_scenario("p3-conservation");
  const Expander expander = scenario_expander(scenario);
  const SheafClass o = SheafClass::trivial(scenario.arrangement.model);
  const auto terms = expander.expand_full(scenario.exponent);
  Rational flipped(0);
  for (const auto& term : terms) {
    ExpansionTerm t = term;
    if (t.coefficient < 0) t.coefficient = -t.coefficient;  // the printed display
    flipped += evaluate_expansion_term(scenario.arrangement, expander, t, o);
  }
  const Rational direct = chi_stratum_log(scenario.arrangement, scenario.exponent, o);
  CHECK(flipped != direct);
}

TEST_CASE("formal rules cannot be evaluated") {
  const std::vector<std::string> base = {"D"};
  const Expander expander(base, RewriteRuleSet({formal_rule("D", {{"1", "E1"}})}, base), 2);
  const ModelPtr p2 = builtin_model("p2");
  const Arrangement arr(p2, {{"D", p2->parse("H")}});
  const auto terms = expander.expand_full({2});
  CHECK_THROWS_WITH_AS(
      static_cast<void>(evaluate_expansion(arr, expander, terms, SheafClass::trivial(p2))),
      doctest::Contains("no class"), input_error);
}
