#include "logeuler/builtins.hpp"

#include <algorithm>

namespace logeuler {

bool is_builtin_ref(const std::string& ref) { return ref.rfind("builtin:", 0) == 0; }

std::string builtin_name(const std::string& ref) {
  return is_builtin_ref(ref) ? ref.substr(8) : ref;
}

// ---------------------------------------------------------------------------
// models

namespace {

ModelPtr build_p1xp1() {
  ChowModelSpec spec;
  spec.name = "p1xp1";
  spec.dimension = 2;
  spec.generators = {{"h1", 1}, {"h2", 1}};
  spec.rules = {{"h1^2", "0"}, {"h2^2", "0"}};
  spec.integrals = {{"h1*h2", "1"}};
  // c(Omega) = (1 - 2 h1)(1 - 2 h2)
  spec.cotangent = {"-2*h1 - 2*h2", "4*h1*h2"};
  return ChowModel::create(spec);
}

ModelPtr build_p1xp1xp1() {
  ChowModelSpec spec;
  spec.name = "p1xp1xp1";
  spec.dimension = 3;
  spec.generators = {{"h1", 1}, {"h2", 1}, {"h3", 1}};
  spec.rules = {{"h1^2", "0"}, {"h2^2", "0"}, {"h3^2", "0"}};
  spec.integrals = {{"h1*h2*h3", "1"}};
  // c(Omega) = (1 - 2 h1)(1 - 2 h2)(1 - 2 h3)
  spec.cotangent = {"-2*h1 - 2*h2 - 2*h3", "4*h1*h2 + 4*h1*h3 + 4*h2*h3", "-8*h1*h2*h3"};
  return ChowModel::create(spec);
}

}  // namespace

ModelPtr builtin_model(const std::string& name) {
  if (name == "p1") return build_projective_space(1);
  if (name == "p2") return build_projective_space(2);
  if (name == "p3") return build_projective_space(3);
  if (name == "p4") return build_projective_space(4);
  if (name == "p1xp1") return build_p1xp1();
  if (name == "p1xp1xp1") return build_p1xp1xp1();
  if (name.rfind("curve", 0) == 0) {
    const std::string suffix = name.substr(5);
    if (!suffix.empty() && std::all_of(suffix.begin(), suffix.end(), ::isdigit))
      return build_genus_curve(std::stoi(suffix));
  }
  throw input_error("unknown builtin model '" + name + "'");
}

std::vector<std::string> builtin_model_names() {
  return {"p1",       "p2",     "p3",     "p4",     "p1xp1", "p1xp1xp1",
          "curve0",   "curve1", "curve2", "curve3", "curve4", "curve5"};
}

// ---------------------------------------------------------------------------
// arrangements

namespace {

Arrangement make_arrangement(const ModelPtr& model,
                             std::vector<std::pair<std::string, std::string>> divisors) {
  std::vector<Divisor> out;
  for (auto& [label, text] : divisors) out.push_back({label, model->parse(text)});
  return Arrangement(model, std::move(out));
}

}  // namespace

Arrangement builtin_arrangement(const ModelPtr& model, const std::string& name) {
  const std::string& m = model->name();
  if (m == "P1") {
    if (name == "point") return make_arrangement(model, {{"P0", "H"}});
    if (name == "two-points") return make_arrangement(model, {{"P0", "H"}, {"Pinf", "H"}});
    if (name == "three-points")
      return make_arrangement(model, {{"P0", "H"}, {"P1", "H"}, {"Pinf", "H"}});
  } else if (m == "P2") {
    if (name == "line") return make_arrangement(model, {{"L", "H"}});
    if (name == "two-lines") return make_arrangement(model, {{"L1", "H"}, {"L2", "H"}});
    if (name == "conic") return make_arrangement(model, {{"C", "2*H"}});
    if (name == "line-conic") return make_arrangement(model, {{"L", "H"}, {"C", "2*H"}});
  } else if (m == "P3") {
    if (name == "plane") return make_arrangement(model, {{"P", "H"}});
    if (name == "two-planes") return make_arrangement(model, {{"P1", "H"}, {"P2", "H"}});
    if (name == "three-planes")
      return make_arrangement(model, {{"P1", "H"}, {"P2", "H"}, {"P3", "H"}});
  } else if (m == "p1xp1") {
    if (name == "fibers") return make_arrangement(model, {{"F", "h1"}, {"G", "h2"}});
    if (name == "four-fibers")
      return make_arrangement(model,
                              {{"F1", "h1"}, {"F2", "h1"}, {"G1", "h2"}, {"G2", "h2"}});
    if (name == "diagonal") return make_arrangement(model, {{"D", "h1 + h2"}});
    if (name == "fiber-diagonal")
      return make_arrangement(model, {{"F", "h1"}, {"D", "h1 + h2"}});
  } else if (m == "p1xp1xp1") {
    if (name == "fibers") return make_arrangement(model, {{"F1", "h1"}, {"F2", "h2"}});
    if (name == "three-fibers")
      return make_arrangement(model, {{"F1", "h1"}, {"F2", "h2"}, {"F3", "h3"}});
    if (name == "five-fibers")
      return make_arrangement(
          model, {{"F1", "h1"}, {"F2", "h2"}, {"F3", "h3"}, {"G1", "h1"}, {"G2", "h2"}});
  } else if (m.rfind("curve-g", 0) == 0) {
    if (name == "point") return make_arrangement(model, {{"Q0", "p"}});
    if (name == "two-points") return make_arrangement(model, {{"Q0", "p"}, {"Q1", "p"}});
    if (name == "three-points")
      return make_arrangement(model, {{"Q0", "p"}, {"Q1", "p"}, {"Q2", "p"}});
  }
  throw input_error("unknown builtin arrangement '" + name + "' for model '" + m + "'");
}

std::vector<std::string> builtin_arrangement_names(const std::string& model_name) {
  if (model_name == "p1" || model_name.rfind("curve", 0) == 0)
    return {"point", "two-points", "three-points"};
  if (model_name == "p2") return {"line", "two-lines", "conic", "line-conic"};
  if (model_name == "p3") return {"plane", "two-planes", "three-planes"};
  if (model_name == "p1xp1") return {"fibers", "four-fibers", "diagonal", "fiber-diagonal"};
  if (model_name == "p1xp1xp1") return {"fibers", "three-fibers", "five-fibers"};
  return {};
}

// ---------------------------------------------------------------------------
// covers

namespace {

CoverData squaring_cover(bool with_unramified_fiber) {
  CoverData cover;
  cover.name = with_unramified_fiber ? "squaring-ext" : "squaring";
  cover.domain = builtin_model("curve0");  // P1 with generator p
  cover.codomain = builtin_model("p1");
  cover.degree = 2;
  cover.pullback_images = {{"H", "2*p"}};
  std::vector<std::pair<std::string, std::string>> branch{{"B0", "H"}, {"Binf", "H"}};
  std::vector<std::pair<std::string, std::string>> ram{{"R0", "p"}, {"Rinf", "p"}};
  cover.assignment = {{"R0", "B0"}, {"Rinf", "Binf"}};
  cover.ram_index = {{"R0", 2}, {"Rinf", 2}};
  cover.component_degrees = std::map<std::string, Int>{{"R0", 1}, {"Rinf", 1}};
  if (with_unramified_fiber) {
    // One branch value with two unramified preimage points.
    branch.push_back({"B1", "H"});
    ram.push_back({"R1a", "p"});
    ram.push_back({"R1b", "p"});
    cover.assignment["R1a"] = "B1";
    cover.assignment["R1b"] = "B1";
    cover.ram_index["R1a"] = 1;
    cover.ram_index["R1b"] = 1;
    (*cover.component_degrees)["R1a"] = 1;
    (*cover.component_degrees)["R1b"] = 1;
  }
  cover.branch = make_arrangement(cover.codomain, std::move(branch));
  cover.ram = make_arrangement(cover.domain, std::move(ram));
  return cover;
}

CoverData hyperelliptic_cover(int genus) {
  CoverData cover;
  cover.name = "hyperelliptic" + std::to_string(genus);
  cover.domain = builtin_model("curve" + std::to_string(genus));
  cover.codomain = builtin_model("p1");
  cover.degree = 2;
  cover.pullback_images = {{"H", "2*p"}};
  std::vector<std::pair<std::string, std::string>> branch, ram;
  for (int i = 0; i < 2 * genus + 2; ++i) {
    branch.push_back({"B" + std::to_string(i), "H"});
    ram.push_back({"R" + std::to_string(i), "p"});
    cover.assignment["R" + std::to_string(i)] = "B" + std::to_string(i);
    cover.ram_index["R" + std::to_string(i)] = 2;
  }
  cover.branch = make_arrangement(cover.codomain, std::move(branch));
  cover.ram = make_arrangement(cover.domain, std::move(ram));
  return cover;
}

CoverData conic_cover() {
  CoverData cover;
  cover.name = "conic";
  cover.domain = builtin_model("p1xp1");
  cover.codomain = builtin_model("p2");
  cover.degree = 2;
  cover.pullback_images = {{"H", "h1 + h2"}};
  cover.branch = make_arrangement(cover.codomain, {{"B", "2*H"}});
  cover.ram = make_arrangement(cover.domain, {{"R", "h1 + h2"}});
  cover.assignment = {{"R", "B"}};
  cover.ram_index = {{"R", 2}};
  cover.component_degrees = std::map<std::string, Int>{{"R", 1}};
  return cover;
}

CoverData component_squaring_cover() {
  CoverData cover;
  cover.name = "component-squaring";
  cover.domain = builtin_model("p1xp1");
  cover.codomain = builtin_model("p1xp1");
  cover.degree = 4;
  cover.pullback_images = {{"h1", "2*h1"}, {"h2", "2*h2"}};
  cover.branch = make_arrangement(
      cover.codomain, {{"B1", "h1"}, {"B2", "h1"}, {"B3", "h2"}, {"B4", "h2"}});
  cover.ram = make_arrangement(cover.domain,
                               {{"R1", "h1"}, {"R2", "h1"}, {"R3", "h2"}, {"R4", "h2"}});
  cover.assignment = {{"R1", "B1"}, {"R2", "B2"}, {"R3", "B3"}, {"R4", "B4"}};
  cover.ram_index = {{"R1", 2}, {"R2", 2}, {"R3", 2}, {"R4", 2}};
  cover.component_degrees =
      std::map<std::string, Int>{{"R1", 2}, {"R2", 2}, {"R3", 2}, {"R4", 2}};
  return cover;
}

CoverData component_squaring_ext_cover() {
  // component-squaring plus one branch fiber whose two preimage fibers
  // are unramified: a branch label with two ramification labels.
  CoverData cover = component_squaring_cover();
  cover.name = "component-squaring-ext";
  std::vector<std::pair<std::string, std::string>> branch, ram;
  for (const auto& d : cover.branch.divisors) branch.push_back({d.label, d.cls.to_string()});
  for (const auto& d : cover.ram.divisors) ram.push_back({d.label, d.cls.to_string()});
  branch.push_back({"B5", "h1"});
  ram.push_back({"R5a", "h1"});
  ram.push_back({"R5b", "h1"});
  cover.branch = make_arrangement(cover.codomain, std::move(branch));
  cover.ram = make_arrangement(cover.domain, std::move(ram));
  cover.assignment["R5a"] = "B5";
  cover.assignment["R5b"] = "B5";
  cover.ram_index["R5a"] = 1;
  cover.ram_index["R5b"] = 1;
  (*cover.component_degrees)["R5a"] = 2;
  (*cover.component_degrees)["R5b"] = 2;
  return cover;
}

CoverData component_squaring_3d_cover() {
  // Coordinate squaring on the triple product: degree 8, six branch
  // fibers, six ramification fibers, all indices 2. Its dimension-3
  // exponents reach the mixed non-multiplicity-free coefficients.
  CoverData cover;
  cover.name = "component-squaring-3d";
  cover.domain = builtin_model("p1xp1xp1");
  cover.codomain = builtin_model("p1xp1xp1");
  cover.degree = 8;
  cover.pullback_images = {{"h1", "2*h1"}, {"h2", "2*h2"}, {"h3", "2*h3"}};
  std::vector<std::pair<std::string, std::string>> branch, ram;
  for (int axis = 1; axis <= 3; ++axis) {
    const std::string cls = "h" + std::to_string(axis);
    for (int side = 0; side < 2; ++side) {
      const std::string suffix = std::to_string(axis) + (side ? "b" : "a");
      branch.push_back({"B" + suffix, cls});
      ram.push_back({"R" + suffix, cls});
      cover.assignment["R" + suffix] = "B" + suffix;
      cover.ram_index["R" + suffix] = 2;
    }
  }
  cover.branch = make_arrangement(cover.codomain, std::move(branch));
  cover.ram = make_arrangement(cover.domain, std::move(ram));
  return cover;
}

CoverData etale_cover() {
  // An unramified double cover of an elliptic curve by itself.
  CoverData cover;
  cover.name = "etale";
  cover.domain = builtin_model("curve1");
  cover.codomain = builtin_model("curve1");
  cover.degree = 2;
  cover.pullback_images = {{"p", "2*p"}};
  cover.branch = Arrangement(cover.codomain, {});
  cover.ram = Arrangement(cover.domain, {});
  return cover;
}

CoverData etale_marked_cover() {
  // The same cover with one marked point downstairs and its two
  // unramified preimages: ramification data with every index 1.
  CoverData cover = etale_cover();
  cover.name = "etale-marked";
  cover.branch = make_arrangement(cover.codomain, {{"B0", "p"}});
  cover.ram = make_arrangement(cover.domain, {{"Q1", "p"}, {"Q2", "p"}});
  cover.assignment = {{"Q1", "B0"}, {"Q2", "B0"}};
  cover.ram_index = {{"Q1", 1}, {"Q2", 1}};
  cover.component_degrees = std::map<std::string, Int>{{"Q1", 1}, {"Q2", 1}};
  return cover;
}

CoverData identity_cover() {
  CoverData cover;
  cover.name = "identity-p2";
  cover.domain = builtin_model("p2");
  cover.codomain = builtin_model("p2");
  cover.degree = 1;
  cover.pullback_images = {{"H", "H"}};
  cover.branch = Arrangement(cover.codomain, {});
  cover.ram = Arrangement(cover.domain, {});
  return cover;
}

}  // namespace

CoverData builtin_cover(const std::string& name) {
  if (name == "squaring") return squaring_cover(false);
  if (name == "squaring-ext") return squaring_cover(true);
  if (name.rfind("hyperelliptic", 0) == 0) {
    const std::string suffix = name.substr(13);
    if (!suffix.empty() && std::all_of(suffix.begin(), suffix.end(), ::isdigit))
      return hyperelliptic_cover(std::stoi(suffix));
  }
  if (name == "conic") return conic_cover();
  if (name == "component-squaring") return component_squaring_cover();
  if (name == "component-squaring-ext") return component_squaring_ext_cover();
  if (name == "component-squaring-3d") return component_squaring_3d_cover();
  if (name == "etale") return etale_cover();
  if (name == "etale-marked") return etale_marked_cover();
  if (name == "identity-p2") return identity_cover();
  throw input_error("unknown builtin cover '" + name + "'");
}

std::vector<std::string> builtin_cover_names() {
  return {"squaring",       "squaring-ext",   "hyperelliptic2",
          "hyperelliptic3", "hyperelliptic4", "hyperelliptic5",
          "conic",          "component-squaring", "component-squaring-ext",
          "component-squaring-3d", "etale",   "etale-marked",
          "identity-p2"};
}

std::vector<std::string> builtin_sign_cover_names() {
  return {"squaring",       "squaring-ext",   "hyperelliptic2",
          "hyperelliptic3", "hyperelliptic4", "hyperelliptic5",
          "conic",          "component-squaring", "component-squaring-ext",
          "component-squaring-3d"};
}

// ---------------------------------------------------------------------------
// expansion scenarios

ExpandScenario builtin_expand_scenario(const std::string& name) {
  if (name == "sec6-example") {
    // The depth-three cascade D ~ E1 + E2, E1 ~ E3 ~ E4, E2 ~ E5 ~ E6,
    // E3 ~ E7, E5 ~ E8, instantiated with true relations on P4 so the
    // expansion can be checked against the unexpanded stratum value.
    ExpandScenario scenario;
    scenario.name = name;
    const ModelPtr model = builtin_model("p4");
    scenario.arrangement = make_arrangement(model, {{"D", "H"}});
    scenario.exponent = {2};
    scenario.budget = model->dimension();
    auto rule = [](std::string lhs,
                   std::vector<std::tuple<std::string, std::string, std::string>> entries) {
      RewriteRule r;
      r.lhs = std::move(lhs);
      for (auto& [u, label, cls] : entries)
        r.rhs.push_back({parse_rational(u), label, cls});
      return r;
    };
    scenario.rules = {
        rule("D", {{"1", "E1", "2*H"}, {"1", "E2", "-H"}}),
        rule("E1", {{"1", "E3", "2*H"}}),
        rule("E1", {{"1", "E4", "2*H"}}),
        rule("E2", {{"1", "E5", "-H"}}),
        rule("E2", {{"1", "E6", "-H"}}),
        rule("E3", {{"1", "E7", "2*H"}}),
        rule("E5", {{"1", "E8", "-H"}}),
    };
    return scenario;
  }
  if (name == "p2-conservation") {
    // Two labels with classes 2H and -H: a true relation H ~ E1 + E2.
    ExpandScenario scenario;
    scenario.name = name;
    const ModelPtr model = builtin_model("p2");
    scenario.arrangement = make_arrangement(model, {{"D", "H"}});
    scenario.exponent = {2};
    scenario.budget = model->dimension();
    RewriteRule r;
    r.lhs = "D";
    r.rhs = {{Rational(1), "E1", std::string("2*H")}, {Rational(1), "E2", std::string("-H")}};
    scenario.rules = {r};
    return scenario;
  }
  if (name == "p3-conservation") {
    // Depth two: the k = 2 branch reaches E1^2 and needs a rule for E1.
    ExpandScenario scenario;
    scenario.name = name;
    const ModelPtr model = builtin_model("p3");
    scenario.arrangement = make_arrangement(model, {{"D", "H"}});
    scenario.exponent = {2};
    scenario.budget = model->dimension();
    RewriteRule r1, r2;
    r1.lhs = "D";
    r1.rhs = {{Rational(1), "E1", std::string("H")}};
    r2.lhs = "E1";
    r2.rhs = {{Rational(1), "E2", std::string("H")}};
    scenario.rules = {r1, r2};
    return scenario;
  }
  throw input_error("unknown builtin expansion scenario '" + name + "'");
}

std::vector<std::string> builtin_expand_scenario_names() {
  return {"sec6-example", "p2-conservation", "p3-conservation"};
}

// ---------------------------------------------------------------------------
// restriction pairs

std::vector<RestrictionPair> builtin_restriction_pairs() {
  std::vector<RestrictionPair> out;
  {
    RestrictionPair pair;
    pair.name = "p2-line";
    const ModelPtr p2 = builtin_model("p2");
    pair.ambient = builtin_arrangement(p2, "line");
    pair.divisor_label = "L";
    pair.stratum = builtin_model("p1");
    pair.correspondence = {{"H", "H"}};
    out.push_back(std::move(pair));
  }
  {
    RestrictionPair pair;
    pair.name = "p2-two-lines";
    const ModelPtr p2 = builtin_model("p2");
    pair.ambient = builtin_arrangement(p2, "two-lines");
    pair.divisor_label = "L1";
    pair.stratum = builtin_model("p1");
    pair.correspondence = {{"H", "H"}};
    out.push_back(std::move(pair));
  }
  {
    RestrictionPair pair;
    pair.name = "p1xp1-fiber";
    const ModelPtr p1xp1 = builtin_model("p1xp1");
    pair.ambient = builtin_arrangement(p1xp1, "fibers");
    pair.divisor_label = "F";
    pair.stratum = builtin_model("p1");
    // Restriction to a first-factor fiber {pt} x P1: h1 becomes 0, h2
    // the point class.
    pair.correspondence = {{"h1", "0"}, {"h2", "H"}};
    out.push_back(std::move(pair));
  }
  {
    // A curve against the zero-dimensional stratum of one of its
    // points: the only check is integral of the divisor itself.
    RestrictionPair pair;
    pair.name = "curve-point";
    const ModelPtr curve = builtin_model("curve2");
    pair.ambient = builtin_arrangement(curve, "two-points");
    pair.divisor_label = "Q0";
    ChowModelSpec point_spec;
    point_spec.name = "pt";
    point_spec.dimension = 0;
    point_spec.integrals = {{"1", "1"}};
    pair.stratum = ChowModel::create(point_spec);
    pair.correspondence = {{"p", "0"}};
    out.push_back(std::move(pair));
  }
  return out;
}

}  // namespace logeuler
