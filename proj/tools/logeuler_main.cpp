#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "logeuler/builtins.hpp"
#include "logeuler/json_io.hpp"
#include "logeuler/selftest.hpp"

namespace {

using namespace logeuler;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct GlobalOptions {
  bool json = false;
  bool decimal = false;
};

void print_value(const Rational& value, const GlobalOptions& global,
                 const std::string& key = "value") {
  if (global.json) {
    Json j;
    j[key] = to_string(value);
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << to_string(value);
  if (global.decimal) std::cout << "  (~ " << decimal_string(value, 8) << ")";
  std::cout << "\n";
}

// The seven tabulated constants of each family.
const std::map<std::string, std::string>& delta_table() {
  static const std::map<std::string, std::string> table = {
      {"0", "1"},    {"1", "1/2"},    {"2", "1/12"},     {"1,1", "1/4"},
      {"3", "0"},    {"2,1", "1/24"}, {"1,1,1", "1/8"},
  };
  return table;
}

const std::map<std::string, std::string>& lambda_table() {
  static const std::map<std::string, std::string> table = {
      {"0", "-1"},   {"1", "1/2"},  {"1,1", "-1/4"},  {"2", "1/12"},
      {"2,1", "0"},  {"3", "0"},    {"1,1,1", "1/8"},
  };
  return table;
}

std::string canonical_selector(const MonomialExponent& exponent) {
  const MonomialType type(exponent);
  std::string out;
  for (size_t i = 0; i < type.parts.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(type.parts[i]);
  }
  return out.empty() ? "0" : out;
}

int run_constant(const std::string& selector, bool check, bool is_delta,
                 const GlobalOptions& global) {
  const MonomialExponent exponent = parse_exponent(selector);
  const Rational value =
      is_delta ? delta_constant(exponent) : lambda_constant(exponent);
  if (!check) {
    print_value(value, global);
    return kExitOk;
  }
  const auto& table = is_delta ? delta_table() : lambda_table();
  const std::string key = canonical_selector(exponent);
  auto it = table.find(key);
  if (it == table.end()) {
    std::cerr << "no tabulated value for type (" << key << ")\n";
    return kExitInputError;
  }
  const bool pass = value == parse_rational(it->second);
  if (global.json) {
    Json j;
    j["value"] = to_string(value);
    j["table"] = it->second;
    j["pass"] = pass;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << to_string(value) << (pass ? " == " : " != ") << it->second
              << (pass ? "  [ok]" : "  [FAIL]") << "\n";
  }
  return pass ? kExitOk : kExitCheckFailed;
}

int run_factorizations(const std::string& selector, bool list, const GlobalOptions& global) {
  const MonomialExponent exponent = parse_exponent(selector);
  const auto tuples = ordered_factorizations(exponent);
  std::map<size_t, size_t> by_length;
  for (const auto& tuple : tuples) ++by_length[tuple.size()];
  const Int count = signed_count(exponent);
  if (global.json) {
    Json j;
    j["exponent"] = exponent_to_string(exponent);
    j["total"] = tuples.size();
    j["signed_count"] = count.str();
    j["by_length"] = Json::object();
    for (const auto& [k, c] : by_length) j["by_length"][std::to_string(k)] = c;
    if (list) {
      j["tuples"] = Json::array();
      for (const auto& tuple : tuples) {
        Json t = Json::array();
        for (const auto& part : tuple) t.push_back(exponent_to_string(part));
        j["tuples"].push_back(std::move(t));
      }
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "ordered factorizations of (" << exponent_to_string(exponent)
            << "): " << tuples.size() << "\n";
  for (const auto& [k, c] : by_length)
    std::cout << "  length " << k << ": " << c << "\n";
  std::cout << "signed count: " << count.str() << "\n";
  if (list)
    for (const auto& tuple : tuples) {
      std::cout << "  ";
      for (size_t i = 0; i < tuple.size(); ++i)
        std::cout << (i ? " + " : "") << "(" << exponent_to_string(tuple[i]) << ")";
      std::cout << "\n";
    }
  return kExitOk;
}

// Embedded printed polynomials; the degree-4 entry stops where the
// printed table does.
const std::map<std::string, std::string>& qpoly_table(int n) {
  static const std::vector<std::map<std::string, std::string>> tables = {
      {{"x0", "1"}},
      {{"x0*y1", "1/2"}, {"x1", "1"}},
      {{"x0*y1^2", "1/12"},
       {"x0*y2", "1/12"},
       {"x1*y1", "1/2"},
       {"x1^2", "1/2"},
       {"x2", "-1"}},
      {{"x0*y1*y2", "1/24"},
       {"x1*y1^2", "1/12"},
       {"x1*y2", "1/12"},
       {"x1^2*y1", "1/4"},
       {"x2*y1", "-1/2"},
       {"x1^3", "1/6"},
       {"x1*x2", "-1/2"},
       {"x3", "1/2"}},
      {{"x0*y1^4", "-1/720"},
       {"x0*y1^2*y2", "1/180"},
       {"x0*y1*y3", "1/720"},
       {"x0*y2^2", "1/240"},
       {"x0*y4", "-1/720"},
       {"x1*y1*y2", "1/24"}},
  };
  return tables.at(static_cast<size_t>(n));
}

int run_qpoly(int n, bool check, const GlobalOptions& global) {
  if (n < 0 || n > 4)
    throw input_error("report mode supports 0 <= n <= 4 (evaluation has no such limit)");
  const QPolynomial q = q_polynomial_report(n);
  bool pass = true;
  if (check) {
    const auto& table = qpoly_table(n);
    for (const auto& [key, value] : table) {
      auto it = q.terms.find(key);
      if (it == q.terms.end() || it->second != parse_rational(value)) pass = false;
    }
    // Below the truncated degree-4 row the table is complete.
    if (n < 4 && q.terms.size() != table.size()) pass = false;
  }
  if (global.json) {
    Json j;
    j["n"] = n;
    j["text"] = q.to_string();
    j["terms"] = Json::object();
    for (const auto& [key, coeff] : q.terms) j["terms"][key] = to_string(coeff);
    if (check) j["pass"] = pass;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "Q_" << n << " = " << q.to_string() << "\n";
    if (check)
      std::cout << (pass ? "matches the tabulated polynomial  [ok]"
                         : "differs from the tabulated polynomial  [FAIL]")
                << "\n";
  }
  return pass ? kExitOk : kExitCheckFailed;
}

int run_chi(const std::string& model_ref, const std::string& arrangement_ref,
            const std::string& sheaf_ref, bool log_mode, const std::string& convention,
            const std::string& stratum, bool plain, const GlobalOptions& global) {
  const ModelPtr model = resolve_model_ref(model_ref);
  const SheafClass sheaf = sheaf_ref.empty() ? SheafClass::trivial(model)
                                             : resolve_sheaf_ref(sheaf_ref, model);
  if (!log_mode && stratum.empty()) {
    print_value(chi(model, sheaf, parse_convention(convention)), global);
    return kExitOk;
  }
  if (arrangement_ref.empty())
    throw input_error("--log and --stratum need --arrangement");
  const Arrangement arr = resolve_arrangement_ref(arrangement_ref, model);
  if (!stratum.empty()) {
    const MonomialExponent a = parse_exponent(stratum);
    const Rational value =
        plain ? chi_stratum_plain(arr, a, sheaf) : chi_stratum_log(arr, a, sheaf);
    print_value(value, global);
    return kExitOk;
  }
  if (convention == "twisted")
    throw input_error("the logarithmic value is defined in the literal convention");
  print_value(chi_log(arr, sheaf), global);
  return kExitOk;
}

Json term_to_json(const RhTerm& term) {
  Json t;
  t["exponent"] = exponent_to_string(term.a);
  t["mf"] = term.mf;
  t["delta"] = to_string(term.delta);
  t["E"] = term.ram_product.str();
  t["coefficient"] = to_string(term.coefficient);
  t["stratum_chi"] = to_string(term.stratum_chi);
  t["value"] = to_string(term.value);
  return t;
}

int run_rh_verify(const std::string& cover_ref, const std::string& sheaf_ref,
                  const std::string& sign_text, const std::string& report_format,
                  const GlobalOptions& global) {
  const CoverData cover = resolve_cover_ref(cover_ref);
  const ValidationReport validation = validate_cover(cover);
  if (!validation.ok()) {
    std::cerr << "cover validation failed:\n" << validation.to_string();
    return kExitInputError;
  }
  const SheafClass sheaf = sheaf_ref.empty() ? SheafClass::trivial(cover.codomain)
                                             : resolve_sheaf_ref(sheaf_ref, cover.codomain);
  const Rational lhs = rh_lhs(cover, sheaf);

  int sign = 0;
  bool ambiguous = false;
  if (sign_text == "auto") {
    const Rational plus = rh_rhs_theorem(cover, sheaf, +1);
    const Rational minus = rh_rhs_theorem(cover, sheaf, -1);
    const bool plus_ok = plus == lhs, minus_ok = minus == lhs;
    if (plus_ok && minus_ok) {
      sign = -1;  // both sides vanish; report the family default
      ambiguous = true;
    } else if (plus_ok) {
      sign = +1;
    } else if (minus_ok) {
      sign = -1;
    } else {
      sign = -1;  // report the failure against the family default
    }
  } else if (sign_text == "+1" || sign_text == "1") {
    sign = +1;
  } else if (sign_text == "-1") {
    sign = -1;
  } else {
    throw input_error("--sign must be auto, +1 or -1");
  }

  std::vector<RhTerm> theorem_terms, corollary_terms;
  const Rational rhs_theorem = rh_rhs_theorem(cover, sheaf, sign, &theorem_terms);
  const Rational rhs_corollary = rh_rhs_corollary(cover, sheaf, sign, &corollary_terms);
  const bool pass = lhs == rhs_theorem && lhs == rhs_corollary;

  if (global.json || report_format == "json") {
    Json j;
    j["cover"] = cover.name;
    j["lhs"] = to_string(lhs);
    j["rhs_theorem"] = to_string(rhs_theorem);
    j["rhs_corollary"] = to_string(rhs_corollary);
    j["sign"] = sign;
    j["sign_ambiguous"] = ambiguous;
    j["pass"] = pass;
    j["terms"] = Json::array();
    for (const auto& term : theorem_terms) j["terms"].push_back(term_to_json(term));
    j["corollary_terms"] = Json::array();
    for (const auto& term : corollary_terms)
      j["corollary_terms"].push_back(term_to_json(term));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "cover: " << cover.name << "\n";
    std::cout << "lhs (chi(X) - mu chi(Y)): " << to_string(lhs) << "\n";
    std::cout << "rhs (theorem form):       " << to_string(rhs_theorem) << "\n";
    std::cout << "rhs (corollary form):     " << to_string(rhs_corollary) << "\n";
    std::cout << "sign: " << (sign > 0 ? "+1" : "-1")
              << (ambiguous ? " (ambiguous: both sides vanish)" : "") << "\n";
    if (!theorem_terms.empty()) {
      std::cout << "terms (exponent | delta | E | coefficient | stratum chi | value):\n";
      for (const auto& term : theorem_terms)
        std::cout << "  (" << exponent_to_string(term.a) << ") | " << to_string(term.delta)
                  << " | " << term.ram_product.str() << " | " << to_string(term.coefficient)
                  << " | " << to_string(term.stratum_chi) << " | " << to_string(term.value)
                  << "\n";
    }
    std::cout << (pass ? "verified: both forms match the independent difference\n"
                       : "MISMATCH: the sides differ\n");
  }
  return pass ? kExitOk : kExitCheckFailed;
}

int run_expand(const std::string& model_ref, const std::string& arrangement_ref,
               const std::string& exponent_text, const std::string& rules_ref, bool formal,
               const GlobalOptions& global) {
  ExpandScenario scenario;
  if (is_builtin_ref(model_ref)) {
    scenario = builtin_expand_scenario(builtin_name(model_ref));
  } else {
    const ModelPtr model = load_model_file(model_ref);
    if (arrangement_ref.empty() || exponent_text.empty() || rules_ref.empty())
      throw input_error("expand needs --arrangement, --exponent and --rules");
    scenario.arrangement = resolve_arrangement_ref(arrangement_ref, model);
    scenario.exponent = parse_exponent(exponent_text);
    scenario.rules = load_rules_file(rules_ref);
    scenario.budget = model->dimension();
    scenario.name = model_ref;
  }
  std::vector<std::string> labels;
  for (const auto& d : scenario.arrangement.divisors) labels.push_back(d.label);
  const Expander expander(labels, RewriteRuleSet(scenario.rules, labels), scenario.budget);
  const auto terms = expander.expand_full(scenario.exponent);

  Json jterms = Json::array();
  for (const auto& term : terms) {
    Json t;
    t["term"] = term.exponent_key();
    t["coefficient"] = to_string(term.coefficient);
    t["residual_q"] = term.residual_q;
    jterms.push_back(std::move(t));
  }

  if (formal) {
    if (global.json) {
      Json j;
      j["scenario"] = scenario.name;
      j["terms"] = jterms;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "expansion of D^(" << exponent_to_string(scenario.exponent) << ") into "
                << terms.size() << " terms:\n";
      for (const auto& term : terms)
        std::cout << "  " << to_string(term.coefficient) << " * " << term.exponent_key()
                  << " [Q_" << term.residual_q << "]\n";
    }
    return kExitOk;
  }

  const SheafClass sheaf = SheafClass::trivial(scenario.arrangement.model);
  const Rational expanded = evaluate_expansion(scenario.arrangement, expander, terms, sheaf);
  const Rational direct = chi_stratum_log(scenario.arrangement, scenario.exponent, sheaf);
  const bool pass = expanded == direct;
  if (global.json) {
    Json j;
    j["scenario"] = scenario.name;
    j["terms"] = jterms;
    j["expanded_value"] = to_string(expanded);
    j["direct_value"] = to_string(direct);
    j["conserved"] = pass;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "sum of evaluated terms: " << to_string(expanded) << "\n";
    std::cout << "unexpanded stratum value: " << to_string(direct) << "\n";
    std::cout << (pass ? "conservation holds\n" : "CONSERVATION FAILURE\n");
  }
  return pass ? kExitOk : kExitCheckFailed;
}

int run_selftest_command(bool corrupt_delta, const GlobalOptions& global) {
  SelftestOptions options;
  options.corrupt_delta = corrupt_delta;
  const RunReport report = run_selftest(options);
  if (global.json) {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    std::cout << report.to_text(false);
  }
  return report.all_pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "logeuler: exact Chow-ring models, logarithmic Chern classes and\n"
      "Riemann-Hurwitz verification for the coherent Euler characteristic"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_flag("--json", global.json, "machine-readable JSON output");
  app.add_flag("--decimal", global.decimal,
               "additionally render decimal approximations, clearly marked");

  std::string selector, exponent_text, n_text;
  bool check_flag = false, list_flag = false;

  auto* delta_cmd = app.add_subcommand("delta", "delta constant of a monomial type");
  delta_cmd->add_option("--type", selector, "comma-separated type, e.g. 2,1")->required();
  delta_cmd->add_flag("--check", check_flag, "compare against the tabulated value");

  auto* lambda_cmd = app.add_subcommand("lambda", "lambda constant of a monomial exponent");
  lambda_cmd->add_option("--exponent", selector, "comma-separated exponent, e.g. 1,1,1")
      ->required();
  lambda_cmd->add_flag("--check", check_flag, "compare against the tabulated value");

  auto* fact_cmd =
      app.add_subcommand("factorizations", "ordered coprime factorizations of an exponent");
  fact_cmd->add_option("--exponent", selector, "comma-separated exponent")->required();
  fact_cmd->add_flag("--list", list_flag, "print every tuple");

  int qpoly_n = 0;
  auto* qpoly_cmd = app.add_subcommand("qpoly", "printed Riemann-Roch polynomial Q_n");
  qpoly_cmd->add_option("--n", qpoly_n, "degree, 0..4")->required();
  qpoly_cmd->add_flag("--check", check_flag, "compare against the tabulated polynomial");

  std::string model_ref, arrangement_ref, sheaf_ref, convention = "literal", stratum;
  bool log_flag = false, plain_flag = false;
  auto* chi_cmd = app.add_subcommand("chi", "Euler characteristic of a model");
  chi_cmd->add_option("model", model_ref, "model file or builtin:<name>")->required();
  chi_cmd->add_option("--arrangement", arrangement_ref, "arrangement file or builtin:<name>");
  chi_cmd->add_option("--sheaf", sheaf_ref, "sheaf file or builtin:O");
  chi_cmd->add_flag("--log", log_flag, "logarithmic value relative to the arrangement");
  chi_cmd->add_option("--convention", convention, "literal|twisted (plain chi only)");
  chi_cmd->add_option("--stratum", stratum, "stratum exponent, e.g. 1,0,2");
  chi_cmd->add_flag("--plain", plain_flag,
                    "with --stratum: plain instead of logarithmic stratum value");

  std::string cover_ref, sign_text = "auto", report_format = "text";
  auto* rh_cmd = app.add_subcommand("rh-verify", "two-sided Riemann-Hurwitz verification");
  rh_cmd->add_option("cover", cover_ref, "cover file or builtin:<name>")->required();
  rh_cmd->add_option("--sheaf", sheaf_ref, "sheaf file on the codomain");
  rh_cmd->add_option("--sign", sign_text, "auto|+1|-1");
  rh_cmd->add_option("--report", report_format, "json|text");

  std::string rules_ref;
  bool formal_flag = false;
  auto* expand_cmd =
      app.add_subcommand("expand", "rewrite a self-intersecting stratum term");
  expand_cmd->add_option("model", model_ref, "model file or builtin:<scenario>")->required();
  expand_cmd->add_option("--arrangement", arrangement_ref, "arrangement file");
  expand_cmd->add_option("--exponent", exponent_text, "exponent over the arrangement");
  expand_cmd->add_option("--rules", rules_ref, "rules file");
  expand_cmd->add_flag("--formal", formal_flag, "print the symbolic table, skip evaluation");

  bool corrupt_delta = false;
  auto* selftest_cmd =
      app.add_subcommand("selftest", "run the full identity verification suite");
  selftest_cmd->add_flag("--corrupt-delta", corrupt_delta,
                         "fault injection: perturb one table entry (harness test)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (delta_cmd->parsed()) return run_constant(selector, check_flag, true, global);
    if (lambda_cmd->parsed()) return run_constant(selector, check_flag, false, global);
    if (fact_cmd->parsed()) return run_factorizations(selector, list_flag, global);
    if (qpoly_cmd->parsed()) return run_qpoly(qpoly_n, check_flag, global);
    if (chi_cmd->parsed())
      return run_chi(model_ref, arrangement_ref, sheaf_ref, log_flag, convention, stratum,
                     plain_flag, global);
    if (rh_cmd->parsed())
      return run_rh_verify(cover_ref, sheaf_ref, sign_text, report_format, global);
    if (expand_cmd->parsed())
      return run_expand(model_ref, arrangement_ref, exponent_text, rules_ref, formal_flag,
                        global);
    if (selftest_cmd->parsed()) return run_selftest_command(corrupt_delta, global);
  } catch (const input_error& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return kExitInputError;
  } catch (const math_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
