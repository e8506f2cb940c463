#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "logeuler/combinat.hpp"

using namespace logeuler;

namespace {
MonomialType type_of(std::vector<unsigned> parts) { return MonomialType(parts); }
}  // namespace

TEST_CASE("tilde and hat operators") {
  CHECK(tilde({1, 2, 3}) == MonomialExponent{1, 1, 1});
  CHECK(hat({2, 1, 3}) == MonomialExponent{0, 1, 0});
  const MonomialExponent mf = {1, 0, 1};
  CHECK(hat(mf) == mf);
  CHECK(tilde(mf) == mf);
  CHECK(is_mf(mf));
  CHECK_FALSE(is_mf({2, 1}));
  CHECK(exponent_weight({2, 0, 1}) == 3);
}

TEST_CASE("monomial type is order-independent") {
  CHECK(type_of({2, 0, 1}).parts == std::vector<unsigned>{2, 1});
  CHECK(MonomialType(MonomialExponent{1, 2, 0}) == MonomialType(MonomialExponent{2, 1}));
  CHECK(type_of({}).weight() == 0);
  CHECK(type_of({2, 1}).to_string() == "(2,1)");
}

TEST_CASE("delta table") {
  CHECK(delta_constant(type_of({})) == 1);
  CHECK(delta_constant(type_of({1})) == frac(1, 2));
  CHECK(delta_constant(type_of({2})) == frac(1, 12));
  CHECK(delta_constant(type_of({1, 1})) == frac(1, 4));
  CHECK(delta_constant(type_of({3})) == 0);
  CHECK(delta_constant(type_of({2, 1})) == frac(1, 24));
  CHECK(delta_constant(type_of({1, 1, 1})) == frac(1, 8));
  CHECK(delta_single(0) == 1);
  CHECK(delta_single(4) == frac(-1, 720));
}

TEST_CASE("delta via series equals delta via Q extraction up to weight 6") {
  for (const auto& type : enumerate_types(6))
    CHECK(delta_constant(type) == delta_constant_via_q(type));
}

TEST_CASE("delta multiplicativity over disjoint supports") {
  const auto types = enumerate_types(6);
  for (const auto& a : types)
    for (const auto& b : types) {
      if (a.weight() + b.weight() > 7) continue;
      std::vector<unsigned> merged = a.parts;
      merged.insert(merged.end(), b.parts.begin(), b.parts.end());
      CHECK(delta_constant(type_of(merged)) == delta_constant(a) * delta_constant(b));
    }
}

TEST_CASE("ordered factorizations of the worked exponents") {
  const auto f11 = ordered_factorizations({1, 1});
  REQUIRE(f11.size() == 3);
  const std::set<std::vector<MonomialExponent>> expected11 = {
      {{1, 1}},
      {{1, 0}, {0, 1}},
      {{0, 1}, {1, 0}},
  };
  CHECK(std::set<std::vector<MonomialExponent>>(f11.begin(), f11.end()) == expected11);

  // 1 singleton + 6 ordered pairs + 6 ordered triples.
  const auto f111 = ordered_factorizations({1, 1, 1});
  CHECK(f111.size() == 13);
  size_t singles = 0, pairs = 0, triples = 0;
  for (const auto& tuple : f111) {
    if (tuple.size() == 1) ++singles;
    if (tuple.size() == 2) ++pairs;
    if (tuple.size() == 3) ++triples;
  }
  CHECK(singles == 1);
  CHECK(pairs == 6);
  CHECK(triples == 6);

  const auto f21 = ordered_factorizations({2, 1});
  REQUIRE(f21.size() == 2);
  const std::set<std::vector<MonomialExponent>> expected21 = {
      {{2, 1}},
      {{0, 1}, {2, 0}},
  };
  CHECK(std::set<std::vector<MonomialExponent>>(f21.begin(), f21.end()) == expected21);

  // Parts of every factorization have disjoint support, full
  // multiplicity in one part, and a multiplicity-free prefix.
  for (const auto& tuple : ordered_factorizations({2, 1, 1})) {
    MonomialExponent sum(3, 0);
    for (size_t j = 0; j < tuple.size(); ++j) {
      for (size_t i = 0; i < 3; ++i) {
        if (tuple[j][i] == 0) continue;
        CHECK(sum[i] == 0);  // disjoint support
        sum[i] += tuple[j][i];
      }
      if (j + 1 < tuple.size()) CHECK(is_mf(tuple[j]));
      CHECK(exponent_weight(tuple[j]) >= 1);
    }
    CHECK(sum == MonomialExponent{2, 1, 1});
  }
}

TEST_CASE("signed counts") {
  CHECK(signed_count(MonomialExponent{1}) == 1);
  CHECK(signed_count(MonomialExponent{1, 1}) == -1);
  CHECK(signed_count(MonomialExponent{2, 1}) == 0);
  CHECK(signed_count(MonomialExponent{2}) == 1);
  CHECK_THROWS_AS(static_cast<void>(signed_count(MonomialExponent{0, 0})), input_error);
}

TEST_CASE("signed count: fast formula equals raw enumeration up to weight 7") {
  for (const auto& type : enumerate_types(7)) {
    const MonomialExponent exponent(type.parts.begin(), type.parts.end());
    CHECK(signed_count(type) == signed_count_enumerated(exponent));
  }
}

TEST_CASE("signed count properties up to weight 7") {
  for (const auto& type : enumerate_types(7)) {
    const MonomialExponent exponent(type.parts.begin(), type.parts.end());
    const Int value = signed_count(type);
    if (is_mf(exponent)) {
      // In {+1,-1}, +1 at weight 1, alternating with the weight. The
      // printed proposition says (-1)^{|b|}; the lambda table and this
      // enumeration give (-1)^{|b|+1}.
      CHECK(value == ((type.weight() % 2 == 1) ? 1 : -1));
    } else if (exponent_weight(hat(exponent)) >= 1) {
      CHECK(value == 0);
    }
  }
  // Depends only on the type: padded zeros change nothing.
  CHECK(signed_count_enumerated({0, 1, 0, 1}) == signed_count_enumerated({1, 1}));
  CHECK(signed_count_enumerated({3, 0, 2}) == signed_count_enumerated({2, 3}));
}

TEST_CASE("lambda table") {
  CHECK(lambda_constant({0}) == -1);
  CHECK(lambda_constant({}) == -1);
  CHECK(lambda_constant({1}) == frac(1, 2));
  CHECK(lambda_constant({1, 1}) == frac(-1, 4));
  CHECK(lambda_constant({2}) == frac(1, 12));
  CHECK(lambda_constant({2, 1}) == 0);
  CHECK(lambda_constant({3}) == 0);
  CHECK(lambda_constant({1, 1, 1}) == frac(1, 8));
}

TEST_CASE("lambda equals delta times the signed count up to weight 7") {
  for (const auto& type : enumerate_types(7)) {
    const MonomialExponent exponent(type.parts.begin(), type.parts.end());
    CHECK(lambda_constant(exponent) == delta_constant(type) * Rational(signed_count(type)));
  }
}

TEST_CASE("on multiplicity-free exponents |lambda| is delta_(1)^|b|") {
  for (unsigned w = 1; w <= 7; ++w) {
    const MonomialExponent exponent(w, 1);
    Rational lam = lambda_constant(exponent);
    if (lam < 0) lam = -lam;
    CHECK(lam == rational_pow(frac(1, 2), w));
  }
}

TEST_CASE("exponent parsing") {
  CHECK(parse_exponent("2,1") == MonomialExponent{2, 1});
  CHECK(parse_exponent(" 1, 0, 2 ") == MonomialExponent{1, 0, 2});
  CHECK(exponent_to_string({1, 0, 2}) == "1,0,2");
  CHECK_THROWS_AS(parse_exponent("1,,2"), input_error);
  CHECK_THROWS_AS(parse_exponent("a"), input_error);
}

TEST_CASE("exponent enumeration covers the simplex") {
  const auto exps = enumerate_exponents(2, 2);
  // (1,0),(0,1),(2,0),(1,1),(0,2)
  CHECK(exps.size() == 5);
  for (const auto& e : exps) {
    CHECK(exponent_weight(e) >= 1);
    CHECK(exponent_weight(e) <= 2);
  }
  CHECK(enumerate_types(3).size() == 6);  // (1),(2),(1,1),(3),(2,1),(1,1,1)
}
