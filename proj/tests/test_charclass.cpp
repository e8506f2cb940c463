#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "logeuler/builtins.hpp"
#include "logeuler/charclass.hpp"
#include "logeuler/geometry.hpp"
#include "logeuler/random_gen.hpp"

using namespace logeuler;

namespace {

std::vector<GradedElement> degree_parts(const GradedElement& total) {
  std::vector<GradedElement> out;
  for (int i = 1; i <= total.model()->dimension(); ++i) out.push_back(total.degree_part(i));
  return out;
}

}  // namespace

TEST_CASE("todd coefficients of a single degree-1 root") {
  // Coefficients of 1, D, D^2, D^3 are 1, 1/2, 1/12, 0.
  const ModelPtr m = ChowModel::create_free("one-root", 4, {{"D", 1}});
  const GradedElement d = m->generator_element(0);
  const GradedElement todd = todd_series(degree_parts(d), m);
  CHECK(todd.constant_term() == 1);
  CHECK(todd.degree_part(1) == d * frac(1, 2));
  CHECK(todd.degree_part(2) == d.pow(2) * frac(1, 12));
  CHECK(todd.degree_part(3).is_zero());
  CHECK(todd.degree_part(4) == d.pow(4) * frac(-1, 720));
}

TEST_CASE("todd of zero classes is one") {
  const ModelPtr p3 = build_projective_space(3);
  CHECK(todd_series({}, p3) == p3->one());
}

TEST_CASE("two disjoint roots give coefficient 1/4 on the mixed monomial") {
  const ModelPtr m = ChowModel::create_free("two-roots", 2, {{"D1", 1}, {"D2", 1}});
  const GradedElement d1 = m->generator_element(0), d2 = m->generator_element(1);
  // Chern classes of O(D1) + O(D2): e1 = D1 + D2, e2 = D1 D2.
  const GradedElement todd2 = todd_series({d1 + d2, d1 * d2}, m);
  auto it = todd2.terms().find(Exponents{1, 1});
  REQUIRE(it != todd2.terms().end());
  CHECK(it->second == frac(1, 4));
}

TEST_CASE("chern character expansions") {
  const ModelPtr p3 = build_projective_space(3);
  const GradedElement h = p3->generator_element(0);

  // Line bundle: exponential of the single root.
  const SheafClass line = SheafClass::line_bundle(h);
  const GradedElement ch = chern_character(line, p3);
  CHECK(ch == p3->one() + h + h.pow(2) * frac(1, 2) + h.pow(3) * frac(1, 6));

  // Trivial sheaf of rank r.
  CHECK(chern_character(SheafClass::trivial(p3, 5), p3) == p3->constant(5));

  // Rank 2 with c1, c2: degree-2 part is (c1^2 - 2 c2)/2.
  SheafClass rank2;
  rank2.rank = 2;
  rank2.chern = {h * 3, h.pow(2) * 7};
  const GradedElement ch2 = chern_character(rank2, p3);
  CHECK(ch2.degree_part(2) == (h.pow(2) * 9 - h.pow(2) * 14) * frac(1, 2));
}

TEST_CASE("q_value on the printed low-dimensional cases") {
  const ModelPtr p1 = build_projective_space(1);
  // n = 1, x0 = 1, x1 = 0, y1 = -2H: printed Q_1 gives -1.
  CHECK(q_value(SheafClass::trivial(p1), p1->cotangent(), p1) == -1);

  const ModelPtr p2 = build_projective_space(2);
  // (y1^2 + y2)/12 = (9 + 3)/12 = 1 on the structure sheaf.
  CHECK(q_value(SheafClass::trivial(p2), p2->cotangent(), p2) == 1);

  // Zero sheaf: linearity in ch.
  SheafClass zero;
  zero.rank = 0;
  CHECK(q_value(zero, p2->cotangent(), p2) == 0);
}

TEST_CASE("topological sequence evaluates the top class") {
  const ModelPtr p2 = build_projective_space(2);
  // c2(Omega) = 3 H^2 integrates to the topological Euler number 3.
  CHECK(q_value(SheafClass::trivial(p2), p2->cotangent(), p2, SequenceKind::Top) == 3);
  const ModelPtr p1 = build_projective_space(1);
  CHECK(q_value(SheafClass::trivial(p1), p1->cotangent(), p1, SequenceKind::Top) == -2);
  // The sign twist restores the classical value 2.
  std::vector<GradedElement> twisted = {-p1->cotangent()[0]};
  CHECK(q_value(SheafClass::trivial(p1), twisted, p1, SequenceKind::Top) == 2);
}

TEST_CASE("printed Q polynomials, term for term") {
  const QPolynomial q1 = q_polynomial_report(1);
  CHECK(q1.terms == std::map<std::string, Rational>{{"x0*y1", frac(1, 2)}, {"x1", frac(1, 1)}});

  const QPolynomial q3 = q_polynomial_report(3);
  CHECK(q3.terms.at("x0*y1*y2") == frac(1, 24));
  CHECK(q3.terms.at("x3") == frac(1, 2));
  CHECK(q3.terms.at("x1*x2") == frac(-1, 2));

  const QPolynomial q4 = q_polynomial_report(4);
  CHECK(q4.terms.at("x0*y1^4") == frac(-1, 720));
  CHECK(q4.terms.at("x0*y1^2*y2") == frac(1, 180));
  CHECK(q4.terms.at("x0*y1*y3") == frac(1, 720));
  CHECK(q4.terms.at("x0*y2^2") == frac(1, 240));
  CHECK(q4.terms.at("x0*y4") == frac(-1, 720));
  CHECK(q4.terms.at("x1*y1*y2") == frac(1, 24));

  CHECK(q_polynomial_report(0).to_string() == "x0");
  CHECK(q_polynomial_report(1).to_string() == "1/2*x0*y1 + x1");
}

TEST_CASE("the report stays usable beyond the printed range") {
  // chi(P5, O) = 1 exercises the degree-5 expansion end to end.
  const ModelPtr p5 = build_projective_space(5);
  CHECK(chi(p5, SheafClass::trivial(p5), ChiConvention::Twisted) == 1);
  const QPolynomial q5 = q_polynomial_report(5);
  CHECK(!q5.terms.empty());
  CHECK(q5.terms.count("x5"));
}

TEST_CASE("multiplicativity of the Todd expansion") {
  // With y assembled from u and v by total-class product,
  // Todd(y) = Todd(u) Todd(v) exactly.
  for (const char* name : {"p2", "p3", "p1xp1"}) {
    const ModelPtr m = builtin_model(name);
    RandomGen rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<GradedElement> u, v;
      GradedElement tu = m->one(), tv = m->one();
      for (int d = 1; d <= m->dimension(); ++d) {
        u.push_back(rng.pure_class(m, d));
        v.push_back(rng.pure_class(m, d));
        tu = tu + u.back();
        tv = tv + v.back();
      }
      const GradedElement product = tu * tv;
      CHECK(todd_series(degree_parts(product), m) ==
            todd_series(u, m) * todd_series(v, m));
    }
  }
}

TEST_CASE("multiplicativity transfers to the paired functional") {
  // deg_n(ch(x) Todd(u) Todd(v)) matches the convolution identity for
  // random sheaf data.
  const ModelPtr m = builtin_model("p1xp1");
  RandomGen rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const SheafClass s = rng.sheaf(m);
    std::vector<GradedElement> u, v;
    GradedElement tu = m->one(), tv = m->one();
    for (int d = 1; d <= m->dimension(); ++d) {
      u.push_back(rng.pure_class(m, d));
      v.push_back(rng.pure_class(m, d));
      tu = tu + u.back();
      tv = tv + v.back();
    }
    const GradedElement y_total = tu * tv;
    const Rational lhs = q_value(s, degree_parts(y_total), m);
    const Rational rhs =
        m->integrate(chern_character(s, m) * todd_series(u, m) * todd_series(v, m));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("graded argument validation") {
  const ModelPtr p2 = build_projective_space(2);
  const GradedElement h = p2->generator_element(0);
  CHECK_THROWS_AS(static_cast<void>(todd_series({h.pow(2)}, p2)), math_error);
  SheafClass bad;
  bad.rank = 1;
  bad.chern = {h + p2->one()};  // mixed degree
  CHECK_THROWS_AS(static_cast<void>(chern_character(bad, p2)), math_error);
}
