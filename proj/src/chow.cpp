#include "logeuler/chow.hpp"

#include <algorithm>

#include "logeuler/poly_text.hpp"

namespace logeuler {

namespace {

constexpr long kReductionBudget = 200000;  // rule applications per model load

Exponents add_exponents(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

bool divides(const Exponents& lhs, const Exponents& m) {
  for (size_t i = 0; i < lhs.size(); ++i)
    if (lhs[i] > m[i]) return false;
  return true;
}

Exponents subtract_exponents(const Exponents& m, const Exponents& lhs) {
  Exponents out(m.size());
  for (size_t i = 0; i < m.size(); ++i) out[i] = m[i] - lhs[i];
  return out;
}

void accumulate(GradedElement::TermMap& into, const GradedElement::TermMap& from,
                const Rational& scale) {
  if (scale == 0) return;
  for (const auto& [exp, coeff] : from) {
    auto it = into.find(exp);
    if (it == into.end()) {
      into.emplace(exp, coeff * scale);
    } else {
      it->second += coeff * scale;
      if (it->second == 0) into.erase(it);
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// GradedElement

GradedElement::GradedElement(ModelPtr model, TermMap terms)
    : model_(std::move(model)), terms_(std::move(terms)) {}

Rational GradedElement::constant_term() const {
  if (!model_) return 0;
  const Exponents unit(model_->generators().size(), 0);
  auto it = terms_.find(unit);
  return it == terms_.end() ? Rational(0) : it->second;
}

int GradedElement::max_degree() const {
  int best = -1;
  for (const auto& [exp, coeff] : terms_)
    best = std::max(best, model_->weighted_degree(exp));
  return best;
}

bool GradedElement::is_pure_degree(int d) const {
  for (const auto& [exp, coeff] : terms_)
    if (model_->weighted_degree(exp) != d) return false;
  return true;
}

GradedElement GradedElement::degree_part(int d) const {
  TermMap out;
  for (const auto& [exp, coeff] : terms_)
    if (model_->weighted_degree(exp) == d) out.emplace(exp, coeff);
  return GradedElement(model_, std::move(out));
}

GradedElement GradedElement::operator-() const {
  TermMap out;
  for (const auto& [exp, coeff] : terms_) out.emplace(exp, -coeff);
  return GradedElement(model_, std::move(out));
}

namespace {
void require_same_model(const GradedElement& a, const GradedElement& b) {
  if (a.model() != b.model())
    throw math_error("elements belong to different models");
}
}  // namespace

GradedElement GradedElement::operator+(const GradedElement& rhs) const {
  if (!model_) return rhs;
  if (!rhs.model_) return *this;
  require_same_model(*this, rhs);
  TermMap out = terms_;
  accumulate(out, rhs.terms_, Rational(1));
  return GradedElement(model_, std::move(out));
}

GradedElement GradedElement::operator-(const GradedElement& rhs) const {
  return *this + (-rhs);
}

GradedElement GradedElement::operator*(const GradedElement& rhs) const {
  if (!model_ || !rhs.model_) return GradedElement(model_ ? model_ : rhs.model_, {});
  require_same_model(*this, rhs);
  RawPoly raw;
  raw.reserve(terms_.size() * rhs.terms_.size());
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : rhs.terms_)
      raw.emplace_back(add_exponents(ea, eb), ca * cb);
  return model_->normalize(raw);
}

GradedElement GradedElement::operator*(const Rational& scalar) const {
  if (scalar == 0) return GradedElement(model_, {});
  TermMap out;
  for (const auto& [exp, coeff] : terms_) out.emplace(exp, coeff * scalar);
  return GradedElement(model_, std::move(out));
}

GradedElement operator*(const Rational& scalar, const GradedElement& e) { return e * scalar; }

GradedElement GradedElement::pow(unsigned k) const {
  if (!model_) throw math_error("pow on detached element");
  GradedElement acc = model_->one();
  for (unsigned i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

bool GradedElement::operator==(const GradedElement& rhs) const {
  if (model_ != rhs.model_) {
    if (terms_.empty() && rhs.terms_.empty()) return true;
    throw math_error("comparing elements of different models");
  }
  return terms_ == rhs.terms_;
}

std::string GradedElement::to_string() const {
  if (!model_) return "0";
  return poly_to_string(terms_, *model_);
}

// ---------------------------------------------------------------------------
// ChowModel

std::shared_ptr<ChowModel> ChowModel::build_common(std::string name, int dimension,
                                                   std::vector<Generator> generators) {
  if (dimension < 0) throw input_error("model dimension must be >= 0");
  for (size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].degree < 1)
      throw input_error("generator '" + generators[i].name + "' must have degree >= 1");
    for (size_t j = i + 1; j < generators.size(); ++j)
      if (generators[i].name == generators[j].name)
        throw input_error("duplicate generator name '" + generators[i].name + "'");
  }
  auto model = std::shared_ptr<ChowModel>(new ChowModel());
  model->name_ = std::move(name);
  model->dimension_ = dimension;
  model->generators_ = std::move(generators);
  return model;
}

ModelPtr ChowModel::create(const ChowModelSpec& spec) {
  auto model = build_common(spec.name, spec.dimension, spec.generators);
  model->compile_rules(spec.rules);
  model->build_normal_forms();
  model->validate_confluence();
  model->attach_integrals(spec.integrals);
  model->attach_cotangent(spec.cotangent);
  return model;
}

ModelPtr ChowModel::create_free(std::string name, int dimension,
                                std::vector<Generator> generators) {
  auto model = build_common(std::move(name), dimension, std::move(generators));
  model->has_integrals_ = false;
  model->build_normal_forms();
  return model;
}

void ChowModel::compile_rules(const std::vector<ChowModelSpec::RuleSpec>& rules) {
  rule_texts_ = rules;
  for (const auto& spec : rules) {
    Rule rule;
    rule.lhs = parse_monomial_text(spec.lhs, *this);
    if (weighted_degree(rule.lhs) == 0)
      throw input_error("rule left-hand side must have positive degree: '" + spec.lhs + "'");
    rule.rhs = parse_poly_text(spec.rhs, *this);
    // "0" parses to a single constant term with coefficient 0; drop it.
    std::erase_if(rule.rhs, [](const auto& t) { return t.second == 0; });
    const int lhs_degree = weighted_degree(rule.lhs);
    for (const auto& [exp, coeff] : rule.rhs)
      if (weighted_degree(exp) != lhs_degree)
        throw input_error("rule '" + spec.lhs + " -> " + spec.rhs +
                          "' is not degree-homogeneous");
    rules_.push_back(std::move(rule));
  }
}

int ChowModel::first_applicable_rule(const Exponents& exp) const {
  for (size_t r = 0; r < rules_.size(); ++r)
    if (divides(rules_[r].lhs, exp)) return static_cast<int>(r);
  return -1;
}

GradedElement::TermMap ChowModel::reduce_to_normal_form(
    const Exponents& exp, std::map<Exponents, GradedElement::TermMap>& cache,
    std::vector<Exponents>& in_progress, long& budget) const {
  if (weighted_degree(exp) > dimension_) return {};
  if (auto it = cache.find(exp); it != cache.end()) return it->second;
  if (std::find(in_progress.begin(), in_progress.end(), exp) != in_progress.end())
    throw input_error("non-terminating reduction detected at monomial '" +
                      monomial_to_string(exp) + "'; model rejected");
  const int r = first_applicable_rule(exp);
  if (r < 0) {
    GradedElement::TermMap nf{{exp, Rational(1)}};
    cache.emplace(exp, nf);
    return nf;
  }
  if (--budget <= 0)
    throw input_error("rule-application step budget exceeded while reducing '" +
                      monomial_to_string(exp) + "'; model rejected");
  in_progress.push_back(exp);
  const Exponents rest = subtract_exponents(exp, rules_[static_cast<size_t>(r)].lhs);
  GradedElement::TermMap nf;
  for (const auto& [rexp, rcoeff] : rules_[static_cast<size_t>(r)].rhs) {
    const Exponents next = add_exponents(rexp, rest);
    accumulate(nf, reduce_to_normal_form(next, cache, in_progress, budget), rcoeff);
  }
  in_progress.pop_back();
  cache.emplace(exp, nf);
  return nf;
}

void ChowModel::build_normal_forms() {
  long budget = kReductionBudget;
  std::vector<Exponents> in_progress;
  for (int d = 0; d <= dimension_; ++d) {
    for (const Exponents& exp : monomials_of_degree(d))
      reduce_to_normal_form(exp, normal_forms_, in_progress, budget);
  }
}

void ChowModel::validate_confluence() const {
  // Local confluence by brute force: apply every applicable rule as the
  // first step and require the same fully reduced result. Together with
  // the termination check this pins a unique normal form.
  for (const auto& [exp, canonical] : normal_forms_) {
    for (size_t r = 0; r < rules_.size(); ++r) {
      if (!divides(rules_[r].lhs, exp)) continue;
      const Exponents rest = subtract_exponents(exp, rules_[r].lhs);
      GradedElement::TermMap reduced;
      for (const auto& [rexp, rcoeff] : rules_[r].rhs) {
        const Exponents next = add_exponents(rexp, rest);
        if (weighted_degree(next) > dimension_) continue;
        accumulate(reduced, normal_forms_.at(next), rcoeff);
      }
      if (reduced != canonical)
        throw input_error("reduction rules are not confluent at monomial '" +
                          monomial_to_string(exp) + "'; model rejected");
    }
  }
}

void ChowModel::attach_integrals(const std::vector<ChowModelSpec::IntegralSpec>& integrals) {
  for (const auto& spec : integrals) {
    const Exponents exp = parse_monomial_text(spec.monomial, *this);
    if (weighted_degree(exp) != dimension_)
      throw input_error("integral entry '" + spec.monomial + "' is not of top degree");
    const GradedElement::TermMap& nf = normal_forms_.at(exp);
    if (nf.size() != 1 || nf.begin()->first != exp || nf.begin()->second != 1)
      throw input_error("integral entry '" + spec.monomial + "' is not a normal-form monomial");
    if (!integrals_.emplace(exp, parse_rational(spec.value)).second)
      throw input_error("duplicate integral entry '" + spec.monomial + "'");
  }
  for (const Exponents& exp : monomials_of_degree(dimension_)) {
    const GradedElement::TermMap& nf = normal_forms_.at(exp);
    const bool irreducible = nf.size() == 1 && nf.begin()->first == exp;
    if (irreducible && !integrals_.count(exp))
      throw input_error("incomplete model: no integral value for normal-form monomial '" +
                        monomial_to_string(exp) + "'");
  }
}

void ChowModel::attach_cotangent(const std::vector<std::string>& cotangent) {
  if (cotangent.empty() && dimension_ > 0)
    throw input_error("model '" + name_ + "' is missing cotangent data");
  if (static_cast<int>(cotangent.size()) != dimension_)
    throw input_error("model '" + name_ + "' needs one cotangent class per degree 1.." +
                      std::to_string(dimension_));
  for (size_t i = 0; i < cotangent.size(); ++i) {
    GradedElement c = parse(cotangent[i]);
    if (!c.is_pure_degree(static_cast<int>(i) + 1))
      throw input_error("cotangent entry " + std::to_string(i + 1) +
                        " is not of pure degree " + std::to_string(i + 1));
    cotangent_.push_back(std::move(c));
  }
}

int ChowModel::generator_index(std::string_view name) const {
  for (size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return static_cast<int>(i);
  return -1;
}

int ChowModel::weighted_degree(const Exponents& exp) const {
  int degree = 0;
  for (size_t i = 0; i < exp.size(); ++i)
    degree += static_cast<int>(exp[i]) * generators_[i].degree;
  return degree;
}

GradedElement ChowModel::zero() const { return GradedElement(shared_from_this(), {}); }

GradedElement ChowModel::one() const { return constant(Rational(1)); }

GradedElement ChowModel::constant(const Rational& c) const {
  if (c == 0) return zero();
  GradedElement::TermMap terms{{Exponents(generators_.size(), 0), c}};
  return GradedElement(shared_from_this(), std::move(terms));
}

GradedElement ChowModel::generator_element(size_t index) const {
  Exponents exp(generators_.size(), 0);
  exp.at(index) = 1;
  return normalize({{exp, Rational(1)}});
}

const GradedElement::TermMap& ChowModel::normal_form(const Exponents& exp) const {
  return normal_forms_.at(exp);
}

GradedElement ChowModel::normalize(const RawPoly& raw) const {
  GradedElement::TermMap out;
  for (const auto& [exp, coeff] : raw) {
    if (coeff == 0) continue;
    if (exp.size() != generators_.size())
      throw math_error("exponent tuple width does not match model generators");
    if (weighted_degree(exp) > dimension_) continue;
    accumulate(out, normal_forms_.at(exp), coeff);
  }
  return GradedElement(shared_from_this(), std::move(out));
}

GradedElement ChowModel::parse(std::string_view text) const {
  return normalize(parse_poly_text(text, *this));
}

Rational ChowModel::integrate(const GradedElement& e) const {
  if (e.model().get() != this) throw math_error("integrating an element of another model");
  if (!has_integrals_)
    throw math_error("model '" + name_ + "' has no integration functional");
  Rational total(0);
  for (const auto& [exp, coeff] : e.terms()) {
    if (weighted_degree(exp) != dimension_) continue;
    auto it = integrals_.find(exp);
    if (it == integrals_.end())
      throw math_error("incomplete model: no integral for '" + monomial_to_string(exp) + "'");
    total += coeff * it->second;
  }
  return total;
}

std::vector<Exponents> ChowModel::monomials_of_degree(int d) const {
  std::vector<Exponents> out;
  Exponents current(generators_.size(), 0);
  // Depth-first over generator slots, spending exactly d degree units.
  auto recurse = [&](auto&& self, size_t i, int remaining) -> void {
    if (i == generators_.size()) {
      if (remaining == 0) out.push_back(current);
      return;
    }
    const int gdeg = generators_[i].degree;
    for (int k = 0; k * gdeg <= remaining; ++k) {
      current[i] = static_cast<unsigned>(k);
      self(self, i + 1, remaining - k * gdeg);
    }
    current[i] = 0;
  };
  recurse(recurse, 0, d);
  return out;
}

std::string ChowModel::monomial_to_string(const Exponents& exp) const {
  std::string out;
  for (size_t i = 0; i < exp.size(); ++i) {
    if (exp[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += generators_[i].name;
    if (exp[i] > 1) out += "^" + std::to_string(exp[i]);
  }
  return out.empty() ? "1" : out;
}

ChowModelSpec ChowModel::to_spec() const {
  ChowModelSpec spec;
  spec.name = name_;
  spec.dimension = dimension_;
  spec.generators = generators_;
  spec.rules = rule_texts_;
  for (const auto& [exp, value] : integrals_)
    spec.integrals.push_back({monomial_to_string(exp), logeuler::to_string(value)});
  for (const auto& c : cotangent_) spec.cotangent.push_back(c.to_string());
  return spec;
}

// ---------------------------------------------------------------------------
// Free-standing ring operations

GradedElement invert_unit(const GradedElement& e) {
  const ModelPtr& model = e.model();
  if (!model) throw math_error("not a unit: zero element");
  const Rational c = e.constant_term();
  if (c == 0) throw math_error("not a unit: zero or missing constant term");
  // e = c(1 - g) with g of positive degree; sum the geometric series.
  const GradedElement g = model->one() - e * (Rational(1) / c);
  GradedElement sum = model->one();
  GradedElement power = model->one();
  for (int k = 1; k <= model->dimension(); ++k) {
    power = power * g;
    if (power.is_zero()) break;
    sum = sum + power;
  }
  return sum * (Rational(1) / c);
}

GradedElement elementary_symmetric(const std::vector<GradedElement>& classes, unsigned k) {
  if (classes.empty()) throw math_error("elementary symmetric of an empty class list");
  const ModelPtr& model = classes.front().model();
  for (const auto& c : classes)
    if (!c.is_pure_degree(1))
      throw math_error("elementary symmetric requires pure degree-1 classes");
  if (k > classes.size()) return model->zero();
  // e[j] after processing each class; standard one-pass recurrence.
  std::vector<GradedElement> e(k + 1, model->zero());
  e[0] = model->one();
  for (const auto& c : classes)
    for (size_t j = std::min<size_t>(k, e.size() - 1); j >= 1; --j)
      e[j] = e[j] + e[j - 1] * c;
  return e[k];
}

}  // namespace logeuler
