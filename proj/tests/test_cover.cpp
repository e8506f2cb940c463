#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "logeuler/builtins.hpp"
#include "logeuler/cover.hpp"
#include "logeuler/random_gen.hpp"

using namespace logeuler;

TEST_CASE("every builtin cover validates") {
  for (const auto& name : builtin_cover_names()) {
    const CoverData cover = builtin_cover(name);
    const ValidationReport report = validate_cover(cover);
    INFO(name, ": ", report.to_string());
    CHECK(report.ok());
  }
}

TEST_CASE("pullback is the ring morphism extension") {
  const CoverData squaring = builtin_cover("squaring");
  const GradedElement h = squaring.codomain->generator_element(0);
  CHECK(pullback(squaring, h) == squaring.domain->parse("2*p"));
  CHECK(pullback(squaring, squaring.codomain->one()) == squaring.domain->one());
  CHECK(squaring.domain->integrate(pullback(squaring, h)) == 2);

  const CoverData conic = builtin_cover("conic");
  CHECK(pullback(conic, conic.codomain->parse("H^2")) == conic.domain->parse("2*h1*h2"));
  CHECK_THROWS_AS(static_cast<void>(pullback(conic, squaring.codomain->one())), input_error);
}

TEST_CASE("validation catches broken covers") {
  // Wrong pullback image: the degree scaling fails.
  CoverData bad = builtin_cover("squaring");
  bad.pullback_images["H"] = "3*p";
  const ValidationReport degree_report = validate_cover(bad);
  CHECK_FALSE(degree_report.ok());

  // Wrong ramification index: the divisor decomposition fails.
  bad = builtin_cover("squaring");
  bad.ram_index["R0"] = 3;
  const ValidationReport decomposition_report = validate_cover(bad);
  CHECK_FALSE(decomposition_report.ok());
  bool names_offender = false;
  for (const auto& issue : decomposition_report.issues)
    if (issue.message.find("B0") != std::string::npos) names_offender = true;
  CHECK(names_offender);

  // Missing preimage for one branch label.
  bad = builtin_cover("squaring");
  bad.assignment["Rinf"] = "B0";
  CHECK_FALSE(validate_cover(bad).ok());

  // Component degrees that do not sum to the covering degree.
  bad = builtin_cover("squaring");
  (*bad.component_degrees)["R0"] = 5;
  CHECK_FALSE(validate_cover(bad).ok());

  // Intersecting components over one branch divisor: the certifiable
  // shadow of the crossing lemma rejects them.
  bad = builtin_cover("conic");
  std::vector<Divisor> rams = bad.ram.divisors;
  rams.push_back({"R2", bad.domain->parse("h1 + h2")});
  bad.ram = Arrangement(bad.domain, std::move(rams));
  bad.assignment["R2"] = "B";
  bad.ram_index["R2"] = 1;
  (*bad.component_degrees)["R2"] = 0;
  const ValidationReport shadow_report = validate_cover(bad);
  CHECK_FALSE(shadow_report.ok());
  bool shadow_issue = false;
  for (const auto& issue : shadow_report.issues)
    if (issue.check == "snc-shadow") shadow_issue = true;
  CHECK(shadow_issue);
}

TEST_CASE("logarithmic classes pull back on every builtin cover") {
  for (const auto& name : builtin_cover_names()) {
    const CoverData cover = builtin_cover(name);
    std::string diag;
    const bool ok = check_log_pullback(cover, &diag);
    INFO(name, ": ", diag);
    CHECK(ok);
  }
  // The conic double cover in explicit numbers.
  const CoverData conic = builtin_cover("conic");
  const auto branch_log = log_cotangent(conic.branch);
  CHECK(branch_log[0] == conic.codomain->parse("-H"));
  CHECK(pullback(conic, branch_log[0]) == conic.domain->parse("-h1 - h2"));
  CHECK(log_cotangent(conic.ram)[0] == conic.domain->parse("-h1 - h2"));
}

TEST_CASE("logarithmic chi scales by the degree") {
  RandomGen rng(59);
  for (const auto& name : builtin_cover_names()) {
    const CoverData cover = builtin_cover(name);
    CHECK(check_log_chi(cover, SheafClass::trivial(cover.codomain)));
    for (int trial = 0; trial < 3; ++trial)
      CHECK(check_log_chi(cover, rng.sheaf(cover.codomain)));
  }
  // Hyperelliptic in closed form: chi_log(Y) = g, chi_log(X) = 2g.
  const CoverData hyper = builtin_cover("hyperelliptic3");
  CHECK(chi_log(hyper.branch, SheafClass::trivial(hyper.codomain)) == 3);
  CHECK(chi_log(hyper.ram, SheafClass::trivial(hyper.domain)) == 6);
}

TEST_CASE("riemann-hurwitz left sides") {
  const CoverData squaring = builtin_cover("squaring");
  CHECK(rh_lhs(squaring, SheafClass::trivial(squaring.codomain)) == 1);
  const CoverData identity = builtin_cover("identity-p2");
  CHECK(rh_lhs(identity, SheafClass::trivial(identity.codomain)) == 0);
  for (int g = 2; g <= 5; ++g) {
    const CoverData hyper = builtin_cover("hyperelliptic" + std::to_string(g));
    CHECK(rh_lhs(hyper, SheafClass::trivial(hyper.codomain)) == g + 1);
  }
  const CoverData conic = builtin_cover("conic");
  CHECK(rh_lhs(conic, SheafClass::trivial(conic.codomain)) == -1);
  const CoverData component = builtin_cover("component-squaring");
  CHECK(rh_lhs(component, SheafClass::trivial(component.codomain)) == -3);
}

TEST_CASE("theorem and corollary right sides match at the validated sign") {
  RandomGen rng(61);
  for (const auto& name : builtin_sign_cover_names()) {
    const CoverData cover = builtin_cover(name);
    for (int trial = 0; trial < 3; ++trial) {
      const SheafClass s =
          trial == 0 ? SheafClass::trivial(cover.codomain) : rng.sheaf(cover.codomain);
      const Rational lhs = rh_lhs(cover, s);
      CHECK(rh_rhs_theorem(cover, s, -1) == lhs);
      CHECK(rh_rhs_corollary(cover, s, -1) == lhs);
    }
  }
}

TEST_CASE("the conic cover includes the non-multiplicity-free term") {
  const CoverData conic = builtin_cover("conic");
  std::vector<RhTerm> terms;
  rh_rhs_theorem(conic, SheafClass::trivial(conic.codomain), -1, &terms);
  bool found_nmf = false;
  for (const auto& term : terms) {
    if (term.a == MonomialExponent{2}) {
      found_nmf = true;
      CHECK_FALSE(term.mf);
      CHECK(term.ram_product == 4);
      CHECK(term.delta == frac(1, 12));
      CHECK(term.stratum_chi == 2);  // (h1+h2)^2 integrates to 2
    }
  }
  CHECK(found_nmf);
}

TEST_CASE("corollary closed forms in small cases") {
  // Single ramification divisor with index e: the multiplicity-free
  // coefficient is delta_(1) (1 - e).
  const CoverData squaring = builtin_cover("squaring");
  std::vector<RhTerm> terms;
  rh_rhs_corollary(squaring, SheafClass::trivial(squaring.codomain), +1, &terms);
  for (const auto& term : terms)
    if (term.a == MonomialExponent{1, 0} || term.a == MonomialExponent{0, 1})
      CHECK(term.coefficient == frac(1, 2) * (Rational(1) - Rational(2)));

  // a = (2): delta_(2) (e^2 - 1) with the empty hat part meaning 1.
  const CoverData conic = builtin_cover("conic");
  terms.clear();
  rh_rhs_corollary(conic, SheafClass::trivial(conic.codomain), +1, &terms);
  bool found = false;
  for (const auto& term : terms)
    if (term.a == MonomialExponent{2}) {
      found = true;
      CHECK(term.coefficient == frac(1, 12) * Rational(4 - 1));
    }
  CHECK(found);
}

TEST_CASE("etale covers yield zero on both sides") {
  // With or without marked unramified divisors: every index 1 makes
  // each side vanish for either sign.
  for (const char* name : {"etale", "etale-marked", "identity-p2"}) {
    const CoverData cover = builtin_cover(name);
    const SheafClass s = SheafClass::trivial(cover.codomain);
    CHECK(rh_lhs(cover, s) == 0);
    CHECK(rh_rhs_theorem(cover, s, +1) == 0);
    CHECK(rh_rhs_theorem(cover, s, -1) == 0);
    CHECK(rh_rhs_corollary(cover, s, -1) == 0);
  }
}

TEST_CASE("determine_sign finds the unique global sign") {
  std::vector<CoverData> covers;
  for (const auto& name : builtin_sign_cover_names()) covers.push_back(builtin_cover(name));
  CHECK(determine_sign(covers) == -1);

  // A single informative cover suffices.
  CHECK(determine_sign({builtin_cover("squaring")}) == -1);

  // An etale cover alone cannot decide.
  CHECK_THROWS_WITH_AS(static_cast<void>(determine_sign({builtin_cover("etale")})),
                       doctest::Contains("ambiguous"), math_error);
}

TEST_CASE("exponent push-forward and the type shadow") {
  const CoverData cover = builtin_cover("squaring-ext");
  // R1a + R1b pushes to 2 B1: the types differ and the class vanishes.
  MonomialExponent a(cover.ram.size(), 0);
  a[cover.ram.label_index("R1a")] = 1;
  a[cover.ram.label_index("R1b")] = 1;
  const MonomialExponent b = cover.push_exponent(a);
  CHECK(MonomialType(a).parts == std::vector<unsigned>{1, 1});
  CHECK(MonomialType(b).parts == std::vector<unsigned>{2});
  CHECK(cover.ram.monomial_class(a).is_zero());

  // The surface variant certifies the vanishing through a ring rule.
  const CoverData surface = builtin_cover("component-squaring-ext");
  MonomialExponent c(surface.ram.size(), 0);
  c[surface.ram.label_index("R5a")] = 1;
  c[surface.ram.label_index("R5b")] = 1;
  CHECK(surface.ram.monomial_class(c).is_zero());
  CHECK(rh_lhs(surface, SheafClass::trivial(surface.codomain)) == -3);
  CHECK(rh_rhs_theorem(surface, SheafClass::trivial(surface.codomain), -1) == -3);
}

TEST_CASE("three-fold cover reaches the mixed coefficients") {
  const CoverData cover = builtin_cover("component-squaring-3d");
  const SheafClass o = SheafClass::trivial(cover.codomain);
  CHECK(rh_lhs(cover, o) == 7);  // (-1) - 8 (-1)
  CHECK(rh_rhs_theorem(cover, o, -1) == 7);
  // The corollary pass cross-checks every raw coefficient against its
  // closed form, including weight-3 exponents like (2,1) whose hat
  // part is nonempty.
  CHECK(rh_rhs_corollary(cover, o, -1) == 7);
  RandomGen rng(67);
  const SheafClass s = rng.sheaf(cover.codomain);
  const Rational lhs = rh_lhs(cover, s);
  CHECK(rh_rhs_theorem(cover, s, -1) == lhs);
  CHECK(rh_rhs_corollary(cover, s, -1) == lhs);
}

TEST_CASE("ramification products") {
  const CoverData cover = builtin_cover("component-squaring");
  CHECK(cover.ramification_product({1, 1, 0, 0}) == 4);
  CHECK(cover.ramification_product({2, 0, 0, 0}) == 4);
  CHECK(cover.ramification_product({0, 0, 0, 0}) == 1);
  CHECK(cover.ramification_product({1, 1, 1, 1}) == 16);
}
