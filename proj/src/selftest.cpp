#include "logeuler/selftest.hpp"

#include <chrono>
#include <set>

#include "logeuler/builtins.hpp"
#include "logeuler/json_io.hpp"
#include "logeuler/random_gen.hpp"

namespace logeuler {

bool RunReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

size_t RunReport::failures() const {
  size_t count = 0;
  for (const auto& c : checks)
    if (!c.pass) ++count;
  return count;
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e;
    e["name"] = c.name;
    e["lhs"] = c.lhs;
    e["rhs"] = c.rhs;
    e["pass"] = c.pass;
    e["note"] = c.note;
    e["criterion"] = c.criterion;
    j["checks"].push_back(std::move(e));
  }
  j["determined_sign"] = determined_sign;
  j["total"] = checks.size();
  j["failures"] = failures();
  j["all_pass"] = all_pass();
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

std::string RunReport::to_text(bool verbose) const {
  std::string out;
  for (const auto& c : checks) {
    if (!verbose && c.pass) continue;
    out += std::string(c.pass ? "[ok]   " : "[FAIL] ") + c.name + ": " + c.lhs +
           (c.pass ? " == " : " != ") + c.rhs;
    if (!c.note.empty()) out += "  (" + c.note + ")";
    out += "\n";
  }
  out += "checks: " + std::to_string(checks.size()) + ", failures: " +
         std::to_string(failures());
  if (determined_sign != 0)
    out += ", theorem sign: " + std::string(determined_sign > 0 ? "+1" : "-1");
  out += ", elapsed: " + std::to_string(elapsed_ms) + " ms\n";
  return out;
}

namespace {

class Suite {
public:
  Suite(RunReport& report, const SelftestOptions& options)
      : report_(report), options_(options) {}

  void equal(const std::string& name, const Rational& lhs, const Rational& rhs, int criterion,
             const std::string& note = "") {
    report_.checks.push_back(
        {name, to_string(lhs), to_string(rhs), lhs == rhs, note, criterion});
  }

  void equal_int(const std::string& name, const Int& lhs, const Int& rhs, int criterion,
                 const std::string& note = "") {
    report_.checks.push_back({name, lhs.str(), rhs.str(), lhs == rhs, note, criterion});
  }

  void holds(const std::string& name, bool condition, int criterion,
             const std::string& note = "") {
    report_.checks.push_back(
        {name, condition ? "true" : "false", "true", condition, note, criterion});
  }

  void failure(const std::string& name, const std::string& what, int criterion) {
    report_.checks.push_back({name, what, "no exception", false, "", criterion});
  }

  template <typename Fn>
  void guarded(const std::string& name, int criterion, Fn&& fn) {
    try {
      fn();
    } catch (const std::exception& err) {
      failure(name, err.what(), criterion);
    }
  }

  RunReport& report_;
  const SelftestOptions& options_;
};

MonomialType type_of(std::vector<unsigned> parts) { return MonomialType(std::move(parts)); }

// --- criterion 1: constant tables -------------------------------------------

void check_constant_tables(Suite& suite) {
  struct DeltaGolden {
    std::vector<unsigned> parts;
    Rational value;
  };
  std::vector<DeltaGolden> delta_golden = {
      {{}, frac(1, 1)},      {{1}, frac(1, 2)},     {{2}, frac(1, 12)},
      {{1, 1}, frac(1, 4)},  {{3}, frac(0, 1)},     {{2, 1}, frac(1, 24)},
      {{1, 1, 1}, frac(1, 8)},
  };
  if (suite.options_.corrupt_delta) delta_golden[5].value = frac(1, 23);  // fault injection
  for (const auto& g : delta_golden) {
    const MonomialType type = type_of(g.parts);
    suite.equal("constants/delta" + type.to_string(), delta_constant(type), g.value, 1);
  }

  struct LambdaGolden {
    MonomialExponent exponent;
    Rational value;
  };
  const std::vector<LambdaGolden> lambda_golden = {
      {{0}, frac(-1, 1)},   {{1}, frac(1, 2)},      {{1, 1}, frac(-1, 4)},
      {{2}, frac(1, 12)},   {{2, 1}, frac(0, 1)},   {{3}, frac(0, 1)},
      {{1, 1, 1}, frac(1, 8)},
  };
  for (const auto& g : lambda_golden) {
    suite.equal("constants/lambda(" + exponent_to_string(g.exponent) + ")",
                lambda_constant(g.exponent), g.value, 1);
  }
}

// --- criterion 2: printed Riemann-Roch polynomials --------------------------

void check_q_polynomials(Suite& suite) {
  using Golden = std::map<std::string, Rational>;
  const Golden q0 = {{"x0", frac(1, 1)}};
  const Golden q1 = {{"x0*y1", frac(1, 2)}, {"x1", frac(1, 1)}};
  const Golden q2 = {{"x0*y1^2", frac(1, 12)}, {"x0*y2", frac(1, 12)}, {"x1*y1", frac(1, 2)},
                     {"x1^2", frac(1, 2)},     {"x2", frac(-1, 1)}};
  const Golden q3 = {{"x0*y1*y2", frac(1, 24)}, {"x1*y1^2", frac(1, 12)},
                     {"x1*y2", frac(1, 12)},    {"x1^2*y1", frac(1, 4)},
                     {"x2*y1", frac(-1, 2)},    {"x1^3", frac(1, 6)},
                     {"x1*x2", frac(-1, 2)},    {"x3", frac(1, 2)}};
  const std::vector<std::pair<int, Golden>> full = {{0, q0}, {1, q1}, {2, q2}, {3, q3}};
  for (const auto& [n, golden] : full) {
    const QPolynomial q = q_polynomial_report(n);
    const bool match = q.terms == golden;
    suite.holds("qpoly/Q" + std::to_string(n) + "-term-for-term", match, 2,
                match ? "" : q.to_string());
  }
  // The degree-4 table is printed only through its rank part and the
  // first mixed term.
  const QPolynomial q4 = q_polynomial_report(4);
  const Golden q4_partial = {{"x0*y1^4", frac(-1, 720)}, {"x0*y1^2*y2", frac(1, 180)},
                             {"x0*y1*y3", frac(1, 720)}, {"x0*y2^2", frac(1, 240)},
                             {"x0*y4", frac(-1, 720)},   {"x1*y1*y2", frac(1, 24)}};
  for (const auto& [key, value] : q4_partial) {
    auto it = q4.terms.find(key);
    suite.equal("qpoly/Q4[" + key + "]", it == q4.terms.end() ? Rational(0) : it->second,
                value, 2);
  }
  const bool no_other_x0 = [&] {
    for (const auto& [key, value] : q4.terms)
      if (key.rfind("x0", 0) == 0 && !q4_partial.count(key)) return false;
    return true;
  }();
  suite.holds("qpoly/Q4-rank-part-complete", no_other_x0, 2);
}

// --- criterion 3: factorization oracle --------------------------------------

void check_factorization_oracle(Suite& suite) {
  const unsigned max_weight = suite.options_.factorization_weight;
  bool nmf_all_zero = true, mf_pattern = true, routes_agree = true;
  std::string detail;
  for (const auto& type : enumerate_types(max_weight)) {
    const MonomialExponent exponent(type.parts.begin(), type.parts.end());
    const Int fast = signed_count(type);
    const Int slow = signed_count_enumerated(exponent);
    if (fast != slow) {
      routes_agree = false;
      detail = "disagreement at " + type.to_string();
    }
    const MonomialExponent h = hat(exponent);
    if (!is_mf(exponent) && exponent_weight(h) >= 1 && fast != 0) {
      nmf_all_zero = false;
      detail = "nonzero at NMF " + type.to_string();
    }
    if (is_mf(exponent)) {
      const Int expected = (type.weight() % 2 == 1) ? 1 : -1;
      if (fast != expected) {
        mf_pattern = false;
        detail = "MF pattern broken at " + type.to_string();
      }
    }
  }
  suite.holds("factorizations/fast-equals-enumeration", routes_agree, 3, detail);
  suite.holds("factorizations/nmf-hat-vanishing", nmf_all_zero, 3, detail);
  suite.holds("factorizations/mf-alternation", mf_pattern, 3,
              "signed count on MF b is (-1)^{|b|+1}; the printed proposition says (-1)^{|b|}, "
              "the constant tables and the enumeration fix the former");
  // Type invariance on padded exponents.
  suite.equal_int("factorizations/type-invariance", signed_count_enumerated({1, 0, 2, 0}),
                  signed_count_enumerated({2, 1}), 3);
  // Pinned counts for the worked tuples.
  suite.equal_int("factorizations/count(1,1)",
                  Int(ordered_factorizations({1, 1}).size()), Int(3), 3);
  suite.equal_int("factorizations/count(1,1,1)",
                  Int(ordered_factorizations({1, 1, 1}).size()), Int(13), 3);
  suite.equal_int("factorizations/count(2,1)",
                  Int(ordered_factorizations({2, 1}).size()), Int(2), 3);
  // lambda = delta * signed count, the second printed form.
  bool lambda_form = true;
  for (const auto& type : enumerate_types(max_weight)) {
    const MonomialExponent exponent(type.parts.begin(), type.parts.end());
    if (lambda_constant(exponent) != delta_constant(type) * Rational(signed_count(type)))
      lambda_form = false;
  }
  suite.holds("factorizations/lambda-two-forms", lambda_form, 3);
  // |lambda| = delta_(1)^{|b|} on MF exponents.
  bool mf_magnitude = true;
  for (unsigned w = 1; w <= max_weight; ++w) {
    const MonomialExponent exponent(w, 1);
    Rational lam = lambda_constant(exponent);
    if (lam < 0) lam = -lam;
    if (lam != rational_pow(frac(1, 2), w)) mf_magnitude = false;
  }
  suite.holds("factorizations/mf-lambda-magnitude", mf_magnitude, 3);
}

// --- criterion 4: delta multiplicativity ------------------------------------

void check_delta_multiplicativity(Suite& suite) {
  const unsigned max_weight = 7;
  bool series_vs_q = true;
  std::string detail;
  for (const auto& type : enumerate_types(std::min(max_weight, 6u))) {
    if (delta_constant(type) != delta_constant_via_q(type)) {
      series_vs_q = false;
      detail = "mismatch at " + type.to_string();
    }
  }
  suite.holds("delta/series-equals-q-extraction", series_vs_q, 4, detail);

  bool multiplicative = true;
  const auto types = enumerate_types(max_weight - 1);
  for (const auto& a : types) {
    for (const auto& b : types) {
      if (a.weight() + b.weight() > max_weight) continue;
      std::vector<unsigned> merged = a.parts;
      merged.insert(merged.end(), b.parts.begin(), b.parts.end());
      if (delta_constant(type_of(merged)) != delta_constant(a) * delta_constant(b)) {
        multiplicative = false;
        detail = "failure at " + a.to_string() + " + " + b.to_string();
      }
    }
  }
  suite.holds("delta/disjoint-multiplicativity", multiplicative, 4, detail);
}

// --- criterion 5: Euler vs logarithmic Euler --------------------------------

void check_euler_identities(Suite& suite) {
  RandomGen rng(suite.options_.seed);
  const std::vector<std::string> model_names = {"p1",     "p2",     "p3",     "p1xp1",
                                                "curve0", "curve1", "curve2", "curve3",
                                                "curve4", "curve5", "p1xp1xp1"};
  for (const auto& model_name : model_names) {
    const ModelPtr model = builtin_model(model_name);
    for (const auto& arr_name : builtin_arrangement_names(model_name)) {
      const Arrangement arr = builtin_arrangement(model, arr_name);
      const bool square_free = has_square_free_classes(arr);
      std::vector<SheafClass> sheaves{SheafClass::trivial(model)};
      for (unsigned i = 1; i < suite.options_.random_sheaves; ++i)
        sheaves.push_back(rng.sheaf(model));
      bool theorem_ok = true, plain_ok = true, mixed_ok = true;
      std::string detail;
      for (const auto& s : sheaves) {
        const Rational difference = chi(model, s) - chi_log(arr, s);
        if (difference != euler_vs_log_rhs(arr, s)) {
          theorem_ok = false;
          detail = "theorem form";
        }
        if (square_free && difference != euler_vs_log_rhs_plain(arr, s)) {
          plain_ok = false;
          detail = "square-free form";
        }
        if (difference != euler_vs_log_rhs_mixed(arr, s)) {
          mixed_ok = false;
          detail = "mixed form";
        }
      }
      const std::string tag = model_name + "/" + arr_name;
      suite.holds("euler-vs-log/" + tag, theorem_ok, 5, detail);
      if (square_free) suite.holds("euler-vs-log-plain/" + tag, plain_ok, 5, detail);
      suite.holds("euler-vs-log-mixed/" + tag, mixed_ok, 5, detail);
    }
  }
  // Convention cross-checks on the structure sheaf.
  for (int n = 1; n <= 4; ++n) {
    const ModelPtr pn = builtin_model("p" + std::to_string(n));
    suite.equal("chi/twisted-P" + std::to_string(n),
                chi(pn, SheafClass::trivial(pn), ChiConvention::Twisted), 1, 5);
  }
  const ModelPtr p1 = builtin_model("p1");
  suite.equal("chi/literal-P1", chi(p1, SheafClass::trivial(p1)), -1, 5);
}

// --- criterion 6: cover functoriality ----------------------------------------

void check_cover_functoriality(Suite& suite) {
  RandomGen rng(suite.options_.seed + 1);
  for (const auto& name : builtin_cover_names()) {
    const CoverData cover = builtin_cover(name);
    const ValidationReport validation = validate_cover(cover);
    suite.holds("cover-valid/" + name, validation.ok(), 6, validation.to_string());
    std::string diag;
    suite.holds("pullback-log/" + name, check_log_pullback(cover, &diag), 6, diag);
    std::vector<SheafClass> sheaves{SheafClass::trivial(cover.codomain)};
    sheaves.push_back(rng.sheaf(cover.codomain));
    sheaves.push_back(rng.sheaf(cover.codomain));
    bool chi_ok = true;
    for (const auto& s : sheaves)
      if (!check_log_chi(cover, s, &diag)) chi_ok = false;
    suite.holds("pullback-log-chi/" + name, chi_ok, 6, chi_ok ? "" : diag);
  }
}

// --- criterion 7: Riemann-Hurwitz --------------------------------------------

void check_riemann_hurwitz(Suite& suite, RunReport& report) {
  RandomGen rng(suite.options_.seed + 2);
  std::vector<CoverData> sign_covers;
  for (const auto& name : builtin_sign_cover_names())
    sign_covers.push_back(builtin_cover(name));

  int sign = 0;
  try {
    sign = determine_sign(sign_covers);
    report.determined_sign = sign;
    suite.holds("rh/unique-sign", true, 7,
                std::string("validated sign ") + (sign > 0 ? "+1" : "-1") +
                    "; the printed theorem carries (E - 1), the validated sign flips it");
  } catch (const std::exception& err) {
    suite.failure("rh/unique-sign", err.what(), 7);
    return;
  }

  for (const auto& cover : sign_covers) {
    std::vector<SheafClass> sheaves{SheafClass::trivial(cover.codomain),
                                    rng.sheaf(cover.codomain)};
    for (size_t i = 0; i < sheaves.size(); ++i) {
      const std::string tag = cover.name + (i == 0 ? "" : "/random-sheaf");
      const Rational lhs = rh_lhs(cover, sheaves[i]);
      suite.equal("rh-theorem/" + tag, rh_rhs_theorem(cover, sheaves[i], sign), lhs, 7);
      suite.guarded("rh-corollary/" + tag, 7, [&] {
        suite.equal("rh-corollary/" + tag, rh_rhs_corollary(cover, sheaves[i], sign), lhs, 7);
      });
    }
  }

  // Etale case: both sides vanish identically.
  for (const std::string name : {"etale", "identity-p2"}) {
    const CoverData cover = builtin_cover(name);
    const SheafClass s = SheafClass::trivial(cover.codomain);
    suite.equal("rh-etale-lhs/" + name, rh_lhs(cover, s), 0, 7);
    suite.equal("rh-etale-rhs/" + name, rh_rhs_theorem(cover, s, sign), 0, 7);
    suite.equal("rh-etale-corollary/" + name, rh_rhs_corollary(cover, s, sign), 0, 7);
  }

  // Shadow of the intersection lemma: exponents whose type changes
  // under the cover correspond to vanishing stratum classes.
  for (const std::string name : {"squaring-ext", "component-squaring-ext"}) {
    const CoverData cover = builtin_cover(name);
    bool shadow = true;
    for (const auto& a : enumerate_exponents(cover.ram.size(), 2)) {
      const MonomialExponent b = cover.push_exponent(a);
      if (MonomialType(a) == MonomialType(b)) continue;
      if (!cover.ram.monomial_class(a).is_zero()) shadow = false;
    }
    suite.holds("rh-type-shadow/" + name, shadow, 7);
  }
}

// --- criterion 8: self-intersection expansion --------------------------------

void check_self_intersection(Suite& suite) {
  // The depth-three worked cascade, instantiated on true relations.
  const ExpandScenario scenario = builtin_expand_scenario("sec6-example");
  std::vector<std::string> labels;
  for (const auto& d : scenario.arrangement.divisors) labels.push_back(d.label);
  const Expander expander(labels, RewriteRuleSet(scenario.rules, labels), scenario.budget);
  const auto terms = expander.expand_full(scenario.exponent);
  suite.equal_int("selfx/term-count", Int(terms.size()), 8, 8);

  const std::map<std::string, Rational> expected = {
      {"D*E1", frac(1, 1)},          {"D*E1*E3", frac(-1, 2)},
      {"D*E1*E3*E7", frac(1, 4)},    {"D*E1*E3*E4", frac(1, 12)},
      {"D*E2", frac(1, 1)},          {"D*E2*E5", frac(-1, 2)},
      {"D*E2*E5*E8", frac(1, 4)},    {"D*E2*E5*E6", frac(1, 12)},
  };
  std::map<std::string, Rational> actual;
  for (const auto& term : terms) actual[term.exponent_key()] = term.coefficient;
  suite.holds("selfx/printed-label-sets", actual.size() == expected.size() && [&] {
    for (const auto& [key, value] : expected)
      if (!actual.count(key)) return false;
    return true;
  }(), 8);
  for (const auto& [key, value] : expected) {
    auto it = actual.find(key);
    const Rational got = it == actual.end() ? Rational(0) : it->second;
    std::string note;
    if (key == "D*E1*E3" || key == "D*E2*E5")
      note = "printed example displays +1/2; the lemma's (-1)^{k-1} delta_{(k-1)} and the "
             "conservation test force -1/2";
    suite.equal("selfx/coefficient[" + key + "]", got, value, 8, note);
  }
  // Magnitudes match the printed example exactly.
  std::set<Rational> magnitudes;
  for (const auto& [key, value] : actual) magnitudes.insert(value < 0 ? Rational(-value) : value);
  suite.holds("selfx/printed-magnitudes",
              magnitudes == std::set<Rational>{frac(1, 1), frac(1, 2), frac(1, 4), frac(1, 12)},
              8);

  // expand_full against the direct description of the admissible terms.
  const auto admissible = expander.admissible_terms(scenario.exponent);
  bool admissible_match = admissible.size() == terms.size();
  for (const auto& fresh : admissible) {
    bool found = false;
    for (const auto& term : terms) {
      if (term.fresh_part(labels) != fresh) continue;
      found = true;
      if (term.coefficient != expander.term_coefficient(fresh)) admissible_match = false;
    }
    if (!found) admissible_match = false;
  }
  suite.holds("selfx/admissible-terms-match", admissible_match, 8);

  // Conservation under true relations, in the plane and in higher
  // dimension (the latter pins the sign at k = 2).
  for (const std::string name : {"p2-conservation", "p3-conservation", "sec6-example"}) {
    suite.guarded("selfx/conservation/" + name, 8, [&] {
      const ExpandScenario sc = builtin_expand_scenario(name);
      std::vector<std::string> sc_labels;
      for (const auto& d : sc.arrangement.divisors) sc_labels.push_back(d.label);
      const Expander sc_expander(sc_labels, RewriteRuleSet(sc.rules, sc_labels), sc.budget);
      const SheafClass s = SheafClass::trivial(sc.arrangement.model);
      const Rational expanded = evaluate_expansion(
          sc.arrangement, sc_expander, sc_expander.expand_full(sc.exponent), s);
      const Rational direct = chi_stratum_log(sc.arrangement, sc.exponent, s);
      suite.equal("selfx/conservation/" + name, expanded, direct, 8);
    });
  }
}

// --- serialization round-trips ------------------------------------------------

void check_round_trips(Suite& suite) {
  for (const auto& name : builtin_model_names()) {
    suite.guarded("roundtrip/model/" + name, 0, [&] {
      const ModelPtr model = builtin_model(name);
      const ModelPtr reloaded = load_model_json(model_spec_to_json(model->to_spec()));
      suite.holds("roundtrip/model/" + name, models_equivalent(model, reloaded), 0);
    });
  }
  for (const auto& name : builtin_cover_names()) {
    suite.guarded("roundtrip/cover/" + name, 0, [&] {
      const CoverData cover = builtin_cover(name);
      const CoverData reloaded = cover_from_json(cover_to_json(cover));
      suite.holds("roundtrip/cover/" + name, covers_equivalent(cover, reloaded), 0);
    });
  }
}

// --- supplementary algebra properties ----------------------------------------

void check_algebra_properties(Suite& suite) {
  RandomGen rng(suite.options_.seed + 3);
  for (const auto& name : builtin_model_names()) {
    const ModelPtr model = builtin_model(name);
    bool inverse_ok = true;
    for (int i = 0; i < 100; ++i) {
      const GradedElement u = rng.unit(model);
      if (invert_unit(u) * u != model->one()) inverse_ok = false;
    }
    suite.holds("ring/invert-unit/" + name, inverse_ok, 0);
  }
  for (const auto& name : {"p2", "p3", "p1xp1"}) {
    const ModelPtr model = builtin_model(name);
    bool todd_multiplicative = true;
    for (int i = 0; i < 10; ++i) {
      std::vector<GradedElement> u, v, merged;
      GradedElement tu = model->one(), tv = model->one();
      for (int d = 1; d <= model->dimension(); ++d) {
        u.push_back(rng.pure_class(model, d));
        v.push_back(rng.pure_class(model, d));
        tu = tu + u.back();
        tv = tv + v.back();
      }
      const GradedElement product = tu * tv;
      for (int d = 1; d <= model->dimension(); ++d) merged.push_back(product.degree_part(d));
      if (todd_series(merged, model) != todd_series(u, model) * todd_series(v, model))
        todd_multiplicative = false;
    }
    suite.holds(std::string("charclass/todd-multiplicative/") + name, todd_multiplicative, 0);
  }
}

}  // namespace

RunReport run_selftest(const SelftestOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  Suite suite(report, options);
  suite.guarded("constants", 1, [&] { check_constant_tables(suite); });
  suite.guarded("qpoly", 2, [&] { check_q_polynomials(suite); });
  suite.guarded("factorizations", 3, [&] { check_factorization_oracle(suite); });
  suite.guarded("delta", 4, [&] { check_delta_multiplicativity(suite); });
  suite.guarded("euler-vs-log", 5, [&] { check_euler_identities(suite); });
  suite.guarded("covers", 6, [&] { check_cover_functoriality(suite); });
  suite.guarded("riemann-hurwitz", 7, [&] { check_riemann_hurwitz(suite, report); });
  suite.guarded("selfx", 8, [&] { check_self_intersection(suite); });
  suite.guarded("roundtrip", 0, [&] { check_round_trips(suite); });
  suite.guarded("algebra", 0, [&] { check_algebra_properties(suite); });
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

}  // namespace logeuler
