#ifndef LOGEULER_JSON_IO_HPP
#define LOGEULER_JSON_IO_HPP

#include <json.hpp>

#include <string>

#include "logeuler/cover.hpp"
#include "logeuler/selfx.hpp"

namespace logeuler {

using Json = nlohmann::json;

// Model files: {"name"?, "dimension", "generators": [{"name","degree"}],
// "rules": [{"lhs","rhs"}], "integrals": [{"monomial","value"}],
// "cotangent": [polynomial text per degree 1..n]}.
ChowModelSpec model_spec_from_json(const Json& j);
Json model_spec_to_json(const ChowModelSpec& spec);
ModelPtr load_model_json(const Json& j);
ModelPtr load_model_file(const std::string& path);

/// Accepts "builtin:<name>" or a file path.
ModelPtr resolve_model_ref(const std::string& ref);

// Arrangement files: [{"label", "class"}].
Arrangement arrangement_from_json(const Json& j, const ModelPtr& model);
Json arrangement_to_json(const Arrangement& arr);
Arrangement resolve_arrangement_ref(const std::string& ref, const ModelPtr& model);

// Sheaf files: {"rank", "chern": [polynomial text]}.
SheafClass sheaf_from_json(const Json& j, const ModelPtr& model);
Json sheaf_to_json(const SheafClass& s);
SheafClass resolve_sheaf_ref(const std::string& ref, const ModelPtr& model);

// Cover files: {"domain", "codomain" (model refs or inline objects),
// "degree", "pullback": {generator: polynomial text}, "branch", "ram",
// "assignment", "ram_index", "component_degrees"?}.
CoverData cover_from_json(const Json& j);
Json cover_to_json(const CoverData& cover);
CoverData load_cover_file(const std::string& path);
CoverData resolve_cover_ref(const std::string& ref);

// Rules files: ordered [{"lhs", "rhs": [{"coeff","label","class"?}]}].
std::vector<RewriteRule> rules_from_json(const Json& j);
Json rules_to_json(const std::vector<RewriteRule>& rules);
std::vector<RewriteRule> load_rules_file(const std::string& path);

Json load_json_file(const std::string& path);

/// Normal-form comparisons used by the serialization round-trip checks.
bool models_equivalent(const ModelPtr& a, const ModelPtr& b);
bool covers_equivalent(const CoverData& a, const CoverData& b);

}  // namespace logeuler

#endif
