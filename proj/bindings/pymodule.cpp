#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "logeuler/builtins.hpp"
#include "logeuler/json_io.hpp"
#include "logeuler/selftest.hpp"

namespace py = pybind11;
using namespace logeuler;

namespace {

MonomialExponent exponent_arg(const std::string& text) { return parse_exponent(text); }

py::object json_to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

ModelPtr model_arg(const std::string& ref) { return resolve_model_ref(ref); }

SheafClass sheaf_arg(const ModelPtr& model, const std::string& sheaf_json) {
  if (sheaf_json.empty()) return SheafClass::trivial(model);
  return sheaf_from_json(Json::parse(sheaf_json), model);
}

}  // namespace

PYBIND11_MODULE(_logeuler, m) {
  m.doc() =
      "Exact Chow-ring models, logarithmic Chern classes and Riemann-Hurwitz "
      "verification for the coherent Euler characteristic. All values are "
      "exact rationals rendered as strings.";

  m.def("delta", [](const std::string& type) { return to_string(delta_constant(exponent_arg(type))); },
        py::arg("type"), "delta constant of a monomial type, e.g. delta('2,1') == '1/24'");
  m.def("lambda_", [](const std::string& exponent) {
          return to_string(lambda_constant(exponent_arg(exponent)));
        },
        py::arg("exponent"), "lambda constant of a monomial exponent");
  m.def("signed_count", [](const std::string& exponent) {
          return signed_count(exponent_arg(exponent)).str();
        },
        py::arg("exponent"));
  m.def("factorizations", [](const std::string& exponent) {
          std::vector<std::vector<std::vector<unsigned>>> out;
          for (const auto& tuple : ordered_factorizations(exponent_arg(exponent)))
            out.emplace_back(tuple.begin(), tuple.end());
          return out;
        },
        py::arg("exponent"), "ordered coprime factorizations as exponent tuples");
  m.def("is_mf", [](const std::string& exponent) { return is_mf(exponent_arg(exponent)); },
        py::arg("exponent"));
  m.def("tilde", [](const std::string& exponent) {
          return exponent_to_string(tilde(exponent_arg(exponent)));
        },
        py::arg("exponent"));
  m.def("hat", [](const std::string& exponent) {
          return exponent_to_string(hat(exponent_arg(exponent)));
        },
        py::arg("exponent"));

  m.def("qpoly", [](int n) { return q_polynomial_report(n).to_string(); }, py::arg("n"),
        "the universal Riemann-Roch polynomial over abstract x/y symbols");
  m.def("qpoly_terms", [](int n) {
          py::dict out;
          for (const auto& [key, coeff] : q_polynomial_report(n).terms)
            out[py::str(key)] = to_string(coeff);
          return out;
        },
        py::arg("n"));

  m.def("chi",
        [](const std::string& model_ref, const std::string& arrangement,
           const std::string& sheaf_json, bool log, const std::string& convention,
           const std::string& stratum, bool plain) {
          const ModelPtr model = model_arg(model_ref);
          const SheafClass sheaf = sheaf_arg(model, sheaf_json);
          if (!log && stratum.empty())
            return to_string(chi(model, sheaf, parse_convention(convention)));
          const Arrangement arr = resolve_arrangement_ref(arrangement, model);
          if (!stratum.empty()) {
            const MonomialExponent a = exponent_arg(stratum);
            return to_string(plain ? chi_stratum_plain(arr, a, sheaf)
                                   : chi_stratum_log(arr, a, sheaf));
          }
          return to_string(chi_log(arr, sheaf));
        },
        py::arg("model"), py::arg("arrangement") = "", py::arg("sheaf") = "",
        py::arg("log") = false, py::arg("convention") = "literal", py::arg("stratum") = "",
        py::arg("plain") = false,
        "Euler characteristic of a model ('builtin:p2' or a file path); --log and "
        "--stratum mirror the command line");

  m.def("rh_verify",
        [](const std::string& cover_ref, const std::string& sheaf_json, int sign) {
          const CoverData cover = resolve_cover_ref(cover_ref);
          const ValidationReport validation = validate_cover(cover);
          if (!validation.ok()) throw input_error(validation.to_string());
          const SheafClass sheaf = sheaf_arg(cover.codomain, sheaf_json);
          const Rational lhs = rh_lhs(cover, sheaf);
          int used_sign = sign;
          if (sign == 0) {
            const bool minus_ok = rh_rhs_theorem(cover, sheaf, -1) == lhs;
            const bool plus_ok = rh_rhs_theorem(cover, sheaf, +1) == lhs;
            used_sign = minus_ok ? -1 : (plus_ok ? +1 : -1);
          }
          Json j;
          j["cover"] = cover.name;
          j["lhs"] = to_string(lhs);
          j["rhs_theorem"] = to_string(rh_rhs_theorem(cover, sheaf, used_sign));
          j["rhs_corollary"] = to_string(rh_rhs_corollary(cover, sheaf, used_sign));
          j["sign"] = used_sign;
          j["pass"] = j["lhs"] == j["rhs_theorem"] && j["lhs"] == j["rhs_corollary"];
          return json_to_py(j);
        },
        py::arg("cover"), py::arg("sheaf") = "", py::arg("sign") = 0,
        "two-sided Riemann-Hurwitz verification; sign 0 picks the validating sign");

  m.def("expand",
        [](const std::string& scenario_ref) {
          const ExpandScenario scenario = builtin_expand_scenario(builtin_name(scenario_ref));
          std::vector<std::string> labels;
          for (const auto& d : scenario.arrangement.divisors) labels.push_back(d.label);
          const Expander expander(labels, RewriteRuleSet(scenario.rules, labels),
                                  scenario.budget);
          py::list out;
          for (const auto& term : expander.expand_full(scenario.exponent)) {
            py::dict t;
            t["term"] = term.exponent_key();
            t["coefficient"] = to_string(term.coefficient);
            t["residual_q"] = term.residual_q;
            out.append(std::move(t));
          }
          return out;
        },
        py::arg("scenario"), "formal expansion table of a builtin scenario");

  m.def("selftest",
        [](bool corrupt_delta) {
          SelftestOptions options;
          options.corrupt_delta = corrupt_delta;
          return json_to_py(run_selftest(options).to_json());
        },
        py::arg("corrupt_delta") = false, "run the full identity verification suite");

  m.def("builtin_models", [] { return builtin_model_names(); });
  m.def("builtin_covers", [] { return builtin_cover_names(); });
}
