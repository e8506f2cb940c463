#include "logeuler/json_io.hpp"

#include <fstream>

#include "logeuler/builtins.hpp"

namespace logeuler {

namespace {

Int int_from_json(const Json& j, const char* what) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    const Rational r = parse_rational(j.get<std::string>());
    if (!is_integer(r)) throw input_error(std::string(what) + " must be an integer");
    return numerator(r);
  }
  throw input_error(std::string(what) + " must be an integer or integer text");
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& err) {
    throw input_error("malformed JSON in '" + path + "': " + err.what());
  }
  return j;
}

// ---------------------------------------------------------------------------
// models

ChowModelSpec model_spec_from_json(const Json& j) {
  if (!j.is_object()) throw input_error("model file must hold a JSON object");
  ChowModelSpec spec;
  spec.name = j.value("name", std::string("model"));
  if (!j.contains("dimension")) throw input_error("model file lacks \"dimension\"");
  spec.dimension = j.at("dimension").get<int>();
  for (const auto& g : j.value("generators", Json::array()))
    spec.generators.push_back({g.at("name").get<std::string>(), g.at("degree").get<int>()});
  for (const auto& r : j.value("rules", Json::array()))
    spec.rules.push_back({r.at("lhs").get<std::string>(), r.at("rhs").get<std::string>()});
  for (const auto& e : j.value("integrals", Json::array()))
    spec.integrals.push_back(
        {e.at("monomial").get<std::string>(), e.at("value").get<std::string>()});
  for (const auto& c : j.value("cotangent", Json::array()))
    spec.cotangent.push_back(c.get<std::string>());
  return spec;
}

Json model_spec_to_json(const ChowModelSpec& spec) {
  Json j;
  j["name"] = spec.name;
  j["dimension"] = spec.dimension;
  j["generators"] = Json::array();
  for (const auto& g : spec.generators)
    j["generators"].push_back({{"name", g.name}, {"degree", g.degree}});
  j["rules"] = Json::array();
  for (const auto& r : spec.rules) j["rules"].push_back({{"lhs", r.lhs}, {"rhs", r.rhs}});
  j["integrals"] = Json::array();
  for (const auto& e : spec.integrals)
    j["integrals"].push_back({{"monomial", e.monomial}, {"value", e.value}});
  j["cotangent"] = Json::array();
  for (const auto& c : spec.cotangent) j["cotangent"].push_back(c);
  return j;
}

ModelPtr load_model_json(const Json& j) { return ChowModel::create(model_spec_from_json(j)); }

ModelPtr load_model_file(const std::string& path) { return load_model_json(load_json_file(path)); }

ModelPtr resolve_model_ref(const std::string& ref) {
  if (is_builtin_ref(ref)) return builtin_model(builtin_name(ref));
  return load_model_file(ref);
}

// ---------------------------------------------------------------------------
// arrangements

Arrangement arrangement_from_json(const Json& j, const ModelPtr& model) {
  if (!j.is_array()) throw input_error("arrangement file must hold a JSON list");
  std::vector<Divisor> divisors;
  for (const auto& d : j)
    divisors.push_back(
        {d.at("label").get<std::string>(), model->parse(d.at("class").get<std::string>())});
  return Arrangement(model, std::move(divisors));
}

Json arrangement_to_json(const Arrangement& arr) {
  Json j = Json::array();
  for (const auto& d : arr.divisors)
    j.push_back({{"label", d.label}, {"class", d.cls.to_string()}});
  return j;
}

Arrangement resolve_arrangement_ref(const std::string& ref, const ModelPtr& model) {
  if (is_builtin_ref(ref)) return builtin_arrangement(model, builtin_name(ref));
  return arrangement_from_json(load_json_file(ref), model);
}

// ---------------------------------------------------------------------------
// sheaves

SheafClass sheaf_from_json(const Json& j, const ModelPtr& model) {
  if (!j.is_object()) throw input_error("sheaf file must hold a JSON object");
  SheafClass s;
  s.rank = int_from_json(j.value("rank", Json(0)), "sheaf rank");
  for (const auto& c : j.value("chern", Json::array()))
    s.chern.push_back(model->parse(c.get<std::string>()));
  for (size_t i = 0; i < s.chern.size(); ++i)
    if (!s.chern[i].is_pure_degree(static_cast<int>(i) + 1))
      throw input_error("sheaf chern entry " + std::to_string(i + 1) +
                        " is not of pure degree " + std::to_string(i + 1));
  return s;
}

Json sheaf_to_json(const SheafClass& s) {
  Json j;
  j["rank"] = s.rank.str();
  j["chern"] = Json::array();
  for (const auto& c : s.chern) j["chern"].push_back(c.to_string());
  return j;
}

SheafClass resolve_sheaf_ref(const std::string& ref, const ModelPtr& model) {
  if (is_builtin_ref(ref)) {
    const std::string name = builtin_name(ref);
    if (name == "O" || name == "structure") return SheafClass::trivial(model);
    throw input_error("unknown builtin sheaf '" + name + "'");
  }
  return sheaf_from_json(load_json_file(ref), model);
}

// ---------------------------------------------------------------------------
// covers

CoverData cover_from_json(const Json& j) {
  if (!j.is_object()) throw input_error("cover file must hold a JSON object");
  CoverData cover;
  cover.name = j.value("name", std::string("cover"));
  auto resolve_side = [](const Json& side, const char* what) -> ModelPtr {
    if (side.is_string()) return resolve_model_ref(side.get<std::string>());
    if (side.is_object()) return load_model_json(side);
    throw input_error(std::string(what) + " must be a model reference or object");
  };
  cover.domain = resolve_side(j.at("domain"), "domain");
  cover.codomain = resolve_side(j.at("codomain"), "codomain");
  cover.degree = int_from_json(j.at("degree"), "degree");
  if (cover.degree < 1) throw input_error("cover degree must be >= 1");
  for (const auto& [name, text] : j.at("pullback").items())
    cover.pullback_images[name] = text.get<std::string>();
  cover.branch = arrangement_from_json(j.value("branch", Json::array()), cover.codomain);
  cover.ram = arrangement_from_json(j.value("ram", Json::array()), cover.domain);
  const Json assignment = j.value("assignment", Json::object());
  for (const auto& [rlabel, blabel] : assignment.items())
    cover.assignment[rlabel] = blabel.get<std::string>();
  const Json ram_index = j.value("ram_index", Json::object());
  for (const auto& [rlabel, e] : ram_index.items())
    cover.ram_index[rlabel] = int_from_json(e, "ram_index");
  if (j.contains("component_degrees")) {
    std::map<std::string, Int> degrees;
    for (const auto& [rlabel, mu] : j.at("component_degrees").items())
      degrees[rlabel] = int_from_json(mu, "component degree");
    cover.component_degrees = std::move(degrees);
  }
  return cover;
}

Json cover_to_json(const CoverData& cover) {
  Json j;
  j["name"] = cover.name;
  j["domain"] = model_spec_to_json(cover.domain->to_spec());
  j["codomain"] = model_spec_to_json(cover.codomain->to_spec());
  j["degree"] = cover.degree.str();
  j["pullback"] = Json::object();
  for (const auto& [name, text] : cover.pullback_images) j["pullback"][name] = text;
  j["branch"] = arrangement_to_json(cover.branch);
  j["ram"] = arrangement_to_json(cover.ram);
  j["assignment"] = Json::object();
  for (const auto& [rlabel, blabel] : cover.assignment) j["assignment"][rlabel] = blabel;
  j["ram_index"] = Json::object();
  for (const auto& [rlabel, e] : cover.ram_index) j["ram_index"][rlabel] = e.str();
  if (cover.component_degrees) {
    j["component_degrees"] = Json::object();
    for (const auto& [rlabel, mu] : *cover.component_degrees)
      j["component_degrees"][rlabel] = mu.str();
  }
  return j;
}

CoverData load_cover_file(const std::string& path) {
  return cover_from_json(load_json_file(path));
}

CoverData resolve_cover_ref(const std::string& ref) {
  if (is_builtin_ref(ref)) return builtin_cover(builtin_name(ref));
  return load_cover_file(ref);
}

// ---------------------------------------------------------------------------
// rewrite rules

std::vector<RewriteRule> rules_from_json(const Json& j) {
  if (!j.is_array()) throw input_error("rules file must hold a JSON list");
  std::vector<RewriteRule> rules;
  for (const auto& r : j) {
    RewriteRule rule;
    rule.lhs = r.at("lhs").get<std::string>();
    for (const auto& e : r.at("rhs")) {
      RewriteRule::Entry entry;
      entry.u = parse_rational(e.value("coeff", std::string("1")));
      entry.label = e.at("label").get<std::string>();
      if (e.contains("class")) entry.class_text = e.at("class").get<std::string>();
      rule.rhs.push_back(std::move(entry));
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

Json rules_to_json(const std::vector<RewriteRule>& rules) {
  Json j = Json::array();
  for (const auto& rule : rules) {
    Json r;
    r["lhs"] = rule.lhs;
    r["rhs"] = Json::array();
    for (const auto& entry : rule.rhs) {
      Json e;
      e["coeff"] = to_string(entry.u);
      e["label"] = entry.label;
      if (entry.class_text) e["class"] = *entry.class_text;
      r["rhs"].push_back(std::move(e));
    }
    j.push_back(std::move(r));
  }
  return j;
}

std::vector<RewriteRule> load_rules_file(const std::string& path) {
  return rules_from_json(load_json_file(path));
}

// ---------------------------------------------------------------------------
// equivalence

bool models_equivalent(const ModelPtr& a, const ModelPtr& b) {
  if (a->dimension() != b->dimension()) return false;
  if (a->generators().size() != b->generators().size()) return false;
  for (size_t i = 0; i < a->generators().size(); ++i) {
    if (a->generators()[i].name != b->generators()[i].name) return false;
    if (a->generators()[i].degree != b->generators()[i].degree) return false;
  }
  for (int d = 0; d <= a->dimension(); ++d) {
    for (const auto& exp : a->monomials_of_degree(d)) {
      const GradedElement na = a->normalize({{exp, Rational(1)}});
      const GradedElement nb = b->normalize({{exp, Rational(1)}});
      if (na.terms() != nb.terms()) return false;
    }
  }
  if (a->integrals() != b->integrals()) return false;
  if (a->cotangent().size() != b->cotangent().size()) return false;
  for (size_t i = 0; i < a->cotangent().size(); ++i)
    if (a->cotangent()[i].terms() != b->cotangent()[i].terms()) return false;
  return true;
}

bool covers_equivalent(const CoverData& a, const CoverData& b) {
  if (!models_equivalent(a.domain, b.domain)) return false;
  if (!models_equivalent(a.codomain, b.codomain)) return false;
  if (a.degree != b.degree) return false;
  if (a.assignment != b.assignment) return false;
  if (a.ram_index != b.ram_index) return false;
  if (a.component_degrees.has_value() != b.component_degrees.has_value()) return false;
  if (a.component_degrees && *a.component_degrees != *b.component_degrees) return false;
  auto arrangements_match = [](const Arrangement& x, const Arrangement& y) {
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i) {
      if (x.divisors[i].label != y.divisors[i].label) return false;
      if (x.divisors[i].cls.terms() != y.divisors[i].cls.terms()) return false;
    }
    return true;
  };
  if (!arrangements_match(a.branch, b.branch)) return false;
  if (!arrangements_match(a.ram, b.ram)) return false;
  for (const auto& g : a.codomain->generators()) {
    const GradedElement ia = a.domain->parse(a.pullback_images.at(g.name));
    const GradedElement ib = b.domain->parse(b.pullback_images.at(g.name));
    if (ia.terms() != ib.terms()) return false;
  }
  return true;
}

}  // namespace logeuler
