#ifndef LOGEULER_BUILTINS_HPP
#define LOGEULER_BUILTINS_HPP

#include <string>
#include <vector>

#include "logeuler/cover.hpp"
#include "logeuler/selfx.hpp"

namespace logeuler {

/// Built-in geometries, arrangements and covers addressed through the
/// "builtin:" scheme, so verification runs need no fixture files.
/// Instances are constructed fresh on each call; they validate at
/// construction like any loaded input.

bool is_builtin_ref(const std::string& ref);
std::string builtin_name(const std::string& ref);  // strips "builtin:"

/// p1, p2, p3, p4, p1xp1, p1xp1xp1, curve0..curve5.
ModelPtr builtin_model(const std::string& name);
std::vector<std::string> builtin_model_names();

/// Arrangement names per model, e.g. p2: line, two-lines, conic;
/// p1xp1: fibers, four-fibers, diagonal, fiber-diagonal.
Arrangement builtin_arrangement(const ModelPtr& model, const std::string& name);
std::vector<std::string> builtin_arrangement_names(const std::string& model_name);

/// squaring, squaring-ext, hyperelliptic2..hyperelliptic5, conic,
/// component-squaring, etale, identity-p2.
CoverData builtin_cover(const std::string& name);
std::vector<std::string> builtin_cover_names();
/// The covers entering sign determination (the ones with ramification).
std::vector<std::string> builtin_sign_cover_names();

/// A packaged self-intersection scenario: ambient model, arrangement,
/// exponent, rules and degree budget.
struct ExpandScenario {
  std::string name;
  Arrangement arrangement;
  MonomialExponent exponent;
  std::vector<RewriteRule> rules;
  int budget = 0;
};
ExpandScenario builtin_expand_scenario(const std::string& name);
std::vector<std::string> builtin_expand_scenario_names();

/// The (ambient, divisor, stratum, correspondence) tuples wired for
/// boundary restriction checks.
struct RestrictionPair {
  std::string name;
  Arrangement ambient;
  std::string divisor_label;
  ModelPtr stratum;
  std::map<std::string, std::string> correspondence;
};
std::vector<RestrictionPair> builtin_restriction_pairs();

}  // namespace logeuler

#endif
