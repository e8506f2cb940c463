#ifndef LOGEULER_CHOW_HPP
#define LOGEULER_CHOW_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logeuler/rational.hpp"

namespace logeuler {

class ChowModel;
class GradedElement;
using ModelPtr = std::shared_ptr<const ChowModel>;

/// One named generator of a presented graded ring.
struct Generator {
  std::string name;
  int degree = 1;
};

/// Exponent tuple over a model's generator list; entry i is the power of
/// generator i. Lexicographic vector order is the canonical key order.
using Exponents = std::vector<unsigned>;

/// A formal rational linear combination of exponent tuples, prior to
/// normalization. Used as parser output and as rule right-hand sides.
using RawPoly = std::vector<std::pair<Exponents, Rational>>;

/// An exact rational linear combination of normal-form monomials,
/// truncated above the model dimension. Immutable value type; all
/// arithmetic renormalizes through the owning model.
class GradedElement {
public:
  using TermMap = std::map<Exponents, Rational>;

  GradedElement() = default;
  GradedElement(ModelPtr model, TermMap terms);

  const ModelPtr& model() const { return model_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  Rational constant_term() const;

  /// Largest total weighted degree among stored monomials; -1 when zero.
  int max_degree() const;
  /// True when every monomial has total weighted degree d (or the
  /// element is zero).
  bool is_pure_degree(int d) const;
  GradedElement degree_part(int d) const;

  GradedElement operator-() const;
  GradedElement operator+(const GradedElement& rhs) const;
  GradedElement operator-(const GradedElement& rhs) const;
  GradedElement operator*(const GradedElement& rhs) const;
  GradedElement operator*(const Rational& scalar) const;
  GradedElement pow(unsigned k) const;

  bool operator==(const GradedElement& rhs) const;
  bool operator!=(const GradedElement& rhs) const { return !(*this == rhs); }

  std::string to_string() const;

private:
  friend class ChowModel;
  ModelPtr model_;
  TermMap terms_;  // normal form, no zero coefficients, degree <= dim
};

GradedElement operator*(const Rational& scalar, const GradedElement& e);

/// Construction data for a ChowModel. Rules and classes are given as
/// polynomial text in the model's generators.
struct ChowModelSpec {
  struct RuleSpec {
    std::string lhs;  // monomial text, e.g. "H^3"
    std::string rhs;  // polynomial text, "0" allowed
  };
  struct IntegralSpec {
    std::string monomial;
    std::string value;  // exact rational text
  };
  std::string name;
  int dimension = 0;
  std::vector<Generator> generators;
  std::vector<RuleSpec> rules;
  std::vector<IntegralSpec> integrals;
  std::vector<std::string> cotangent;  // one polynomial per degree 1..dimension
};

/// A presented graded commutative ring truncated at a fixed dimension,
/// with monomial reduction rules, a top-degree integration functional
/// and the Chern classes of the cotangent bundle.
///
/// Validation at construction: rules must be degree-homogeneous,
/// reduction must terminate within a step budget and be confluent on
/// every monomial of degree <= dimension (checked by exhausting first
/// steps), and every irreducible top-degree monomial must carry an
/// integral value. Normal forms for the full monomial basis are
/// precomputed, so instances are immutable and safe to share across
/// threads.
class ChowModel : public std::enable_shared_from_this<ChowModel> {
public:
  struct Rule {
    Exponents lhs;
    RawPoly rhs;
  };

  static ModelPtr create(const ChowModelSpec& spec);
  /// Internal models (scratch polynomial rings) skip the integral
  /// completeness requirement; integrate() on them throws.
  static ModelPtr create_free(std::string name, int dimension,
                              std::vector<Generator> generators);

  const std::string& name() const { return name_; }
  int dimension() const { return dimension_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::map<Exponents, Rational>& integrals() const { return integrals_; }
  bool has_integrals() const { return has_integrals_; }

  int generator_index(std::string_view name) const;  // -1 when absent
  int weighted_degree(const Exponents& exp) const;

  GradedElement zero() const;
  GradedElement one() const;
  GradedElement constant(const Rational& c) const;
  GradedElement generator_element(size_t index) const;

  /// Reduces a formal polynomial to normal form, truncating above the
  /// model dimension.
  GradedElement normalize(const RawPoly& raw) const;
  /// Parses polynomial text and normalizes it.
  GradedElement parse(std::string_view text) const;

  Rational integrate(const GradedElement& e) const;

  /// c_1..c_n of the cotangent bundle; entry i-1 has pure degree i.
  const std::vector<GradedElement>& cotangent() const { return cotangent_; }

  /// All exponent tuples of total weighted degree exactly d (d <= dim).
  std::vector<Exponents> monomials_of_degree(int d) const;

  std::string monomial_to_string(const Exponents& exp) const;

  /// Serialization back to the model file schema, in canonical text.
  ChowModelSpec to_spec() const;

private:
  ChowModel() = default;
  static std::shared_ptr<ChowModel> build_common(std::string name, int dimension,
                                                 std::vector<Generator> generators);
  void compile_rules(const std::vector<ChowModelSpec::RuleSpec>& rules);
  void build_normal_forms();
  void validate_confluence() const;
  void attach_integrals(const std::vector<ChowModelSpec::IntegralSpec>& integrals);
  void attach_cotangent(const std::vector<std::string>& cotangent);

  const GradedElement::TermMap& normal_form(const Exponents& exp) const;
  GradedElement::TermMap reduce_to_normal_form(const Exponents& exp,
                                               std::map<Exponents, GradedElement::TermMap>& cache,
                                               std::vector<Exponents>& in_progress,
                                               long& budget) const;
  int first_applicable_rule(const Exponents& exp) const;

  std::string name_;
  int dimension_ = 0;
  std::vector<Generator> generators_;
  std::vector<Rule> rules_;
  std::vector<ChowModelSpec::RuleSpec> rule_texts_;
  std::map<Exponents, GradedElement::TermMap> normal_forms_;
  std::map<Exponents, Rational> integrals_;
  bool has_integrals_ = true;
  std::vector<GradedElement> cotangent_;
};

/// Multiplicative inverse by geometric series, truncated at the model
/// dimension. Requires a nonzero constant term.
GradedElement invert_unit(const GradedElement& e);

/// k-th elementary symmetric polynomial of a list of degree-1 classes.
GradedElement elementary_symmetric(const std::vector<GradedElement>& classes, unsigned k);

}  // namespace logeuler

#endif
