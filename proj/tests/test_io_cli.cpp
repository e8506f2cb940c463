#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "logeuler/builtins.hpp"
#include "logeuler/json_io.hpp"
#include "logeuler/random_gen.hpp"
#include "logeuler/selftest.hpp"

using namespace logeuler;

namespace {

std::string write_temp(const std::string& name, const std::string& contents) {
  const std::string path = std::string("/tmp/logeuler-test-") + name;
  std::ofstream out(path);
  out << contents;
  return path;
}

}  // namespace

TEST_CASE("model files load per the documented schema") {
  const std::string path = write_temp("model.json", R"({
    "name": "quadric-surface",
    "dimension": 2,
    "generators": [{"name": "h1", "degree": 1}, {"name": "h2", "degree": 1}],
    "rules": [{"lhs": "h1^2", "rhs": "0"}, {"lhs": "h2^2", "rhs": "0"}],
    "integrals": [{"monomial": "h1*h2", "value": "1"}],
    "cotangent": ["-2*h1 - 2*h2", "4*h1*h2"]
  })");
  const ModelPtr model = load_model_file(path);
  CHECK(model->dimension() == 2);
  CHECK(models_equivalent(model, builtin_model("p1xp1")));
  std::remove(path.c_str());
}

TEST_CASE("a presented ring with a non-monomial relation works end to end") {
  // The plane blown up at a point: H E = 0 and E^2 = -H^2.
  const std::string path = write_temp("blowup.json", R"({
    "name": "blown-up-plane",
    "dimension": 2,
    "generators": [{"name": "H", "degree": 1}, {"name": "E", "degree": 1}],
    "rules": [{"lhs": "H*E", "rhs": "0"}, {"lhs": "E^2", "rhs": "-H^2"}],
    "integrals": [{"monomial": "H^2", "value": "1"}],
    "cotangent": ["-3*H + E", "4*H^2"]
  })");
  const ModelPtr blowup = load_model_file(path);
  std::remove(path.c_str());

  CHECK(blowup->parse("E^2") == blowup->parse("-H^2"));
  CHECK(blowup->parse("H*E").is_zero());
  CHECK(blowup->integrate(blowup->parse("E^2")) == -1);
  CHECK(blowup->integrate(blowup->parse("3*H^2 - 2*E^2")) == 5);

  // Both conventions give 1 in even dimension.
  const SheafClass o = SheafClass::trivial(blowup);
  CHECK(chi(blowup, o, ChiConvention::Literal) == 1);
  CHECK(chi(blowup, o, ChiConvention::Twisted) == 1);
  // Topological Euler number of the blown-up plane.
  CHECK(q_value(o, blowup->cotangent(), blowup, SequenceKind::Top) == 4);

  // The comparison identities hold on the exceptional-divisor boundary,
  // which has nonvanishing self-intersection.
  const Arrangement exceptional(blowup, {{"E", blowup->parse("E")}});
  CHECK_FALSE(has_square_free_classes(exceptional));
  RandomGen rng(91);
  for (int trial = 0; trial < 5; ++trial) {
    const SheafClass s = trial == 0 ? o : rng.sheaf(blowup);
    const Rational difference = chi(blowup, s) - chi_log(exceptional, s);
    CHECK(difference == euler_vs_log_rhs(exceptional, s));
    CHECK(difference == euler_vs_log_rhs_mixed(exceptional, s));
  }

  // Round-trip through the file schema.
  CHECK(models_equivalent(blowup, load_model_json(model_spec_to_json(blowup->to_spec()))));
}

TEST_CASE("malformed files raise input errors") {
  const std::string path = write_temp("broken.json", "{ not json");
  CHECK_THROWS_AS(static_cast<void>(load_model_file(path)), input_error);
  std::remove(path.c_str());
  CHECK_THROWS_AS(static_cast<void>(load_model_file("/nonexistent/x.json")), input_error);
  CHECK_THROWS_AS(static_cast<void>(load_model_json(Json::parse(R"({"dimension": 1})"))),
                  input_error);
}

TEST_CASE("every builtin model round-trips through its file form") {
  for (const auto& name : builtin_model_names()) {
    const ModelPtr model = builtin_model(name);
    const Json j = model_spec_to_json(model->to_spec());
    const ModelPtr reloaded = load_model_json(j);
    INFO(name);
    CHECK(models_equivalent(model, reloaded));
    // A second serialization is byte-identical.
    CHECK(model_spec_to_json(reloaded->to_spec()).dump() == j.dump());
  }
}

TEST_CASE("every builtin cover round-trips through its file form") {
  for (const auto& name : builtin_cover_names()) {
    const CoverData cover = builtin_cover(name);
    const CoverData reloaded = cover_from_json(cover_to_json(cover));
    INFO(name);
    CHECK(covers_equivalent(cover, reloaded));
    CHECK(validate_cover(reloaded).ok());
  }
}

TEST_CASE("arrangement and sheaf files") {
  const ModelPtr p2 = builtin_model("p2");
  const std::string apath = write_temp("arr.json", R"([
    {"label": "L", "class": "H"},
    {"label": "C", "class": "2*H"}
  ])");
  const Arrangement arr = arrangement_from_json(load_json_file(apath), p2);
  CHECK(arr.size() == 2);
  CHECK(arr.divisors[1].cls == p2->parse("2*H"));
  const Json back = arrangement_to_json(arr);
  CHECK(back[0].at("label") == "L");
  std::remove(apath.c_str());

  const std::string spath = write_temp("sheaf.json", R"({
    "rank": 2, "chern": ["3*H", "-1/2*H^2"]
  })");
  const SheafClass s = sheaf_from_json(load_json_file(spath), p2);
  CHECK(s.rank == 2);
  CHECK(s.chern[1] == p2->parse("-1/2*H^2"));
  const SheafClass reparsed = sheaf_from_json(sheaf_to_json(s), p2);
  CHECK(reparsed.chern[0] == s.chern[0]);
  std::remove(spath.c_str());

  CHECK_THROWS_AS(static_cast<void>(sheaf_from_json(
                      Json::parse(R"({"rank": 1, "chern": ["1 + H"]})"), p2)),
                  input_error);
}

TEST_CASE("cover files accept builtin references") {
  const std::string path = write_temp("cover.json", R"({
    "name": "squaring-from-file",
    "domain": "builtin:curve0",
    "codomain": "builtin:p1",
    "degree": 2,
    "pullback": {"H": "2*p"},
    "branch": [{"label": "B0", "class": "H"}, {"label": "Binf", "class": "H"}],
    "ram": [{"label": "R0", "class": "p"}, {"label": "Rinf", "class": "p"}],
    "assignment": {"R0": "B0", "Rinf": "Binf"},
    "ram_index": {"R0": 2, "Rinf": 2}
  })");
  const CoverData cover = load_cover_file(path);
  CHECK(validate_cover(cover).ok());
  CHECK(rh_lhs(cover, SheafClass::trivial(cover.codomain)) == 1);
  std::remove(path.c_str());
}

TEST_CASE("rules files") {
  const std::string path = write_temp("rules.json", R"([
    {"lhs": "D", "rhs": [{"coeff": "1", "label": "E1", "class": "2*H"},
                          {"coeff": "1", "label": "E2", "class": "-H"}]},
    {"lhs": "E1", "rhs": [{"label": "E3"}]}
  ])");
  const auto rules = load_rules_file(path);
  REQUIRE(rules.size() == 2);
  CHECK(rules[0].rhs[0].u == 1);
  CHECK(rules[0].rhs[1].class_text == std::string("-H"));
  CHECK(rules[1].rhs[0].u == 1);  // coeff defaults to 1
  CHECK_FALSE(rules[1].rhs[0].class_text.has_value());
  const auto reparsed = rules_from_json(rules_to_json(rules));
  CHECK(reparsed.size() == rules.size());
  CHECK(reparsed[0].rhs[1].label == "E2");
  std::remove(path.c_str());
}

TEST_CASE("selftest succeeds on a fresh tree and reports the sign") {
  SelftestOptions options;
  options.random_sheaves = 3;  // lighter than the acceptance run
  options.factorization_weight = 5;
  const RunReport report = run_selftest(options);
  INFO(report.to_text(false));
  CHECK(report.all_pass());
  CHECK(report.determined_sign == -1);
  const Json j = report.to_json();
  CHECK(j.at("all_pass").get<bool>());
  CHECK(j.at("determined_sign").get<int>() == -1);
  CHECK(j.at("checks").is_array());
  CHECK(j.at("failures").get<size_t>() == 0);
}

TEST_CASE("fault injection is caught and names the constant") {
  SelftestOptions options;
  options.corrupt_delta = true;
  options.random_sheaves = 2;
  options.factorization_weight = 4;
  const RunReport report = run_selftest(options);
  CHECK_FALSE(report.all_pass());
  bool named = false;
  for (const auto& check : report.checks)
    if (!check.pass && check.name == "constants/delta(2,1)") named = true;
  CHECK(named);
}
