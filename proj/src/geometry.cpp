#include "logeuler/geometry.hpp"

#include <algorithm>

namespace logeuler {

Arrangement::Arrangement(ModelPtr m, std::vector<Divisor> divs)
    : model(std::move(m)), divisors(std::move(divs)) {
  for (size_t i = 0; i < divisors.size(); ++i) {
    if (divisors[i].cls.model() != model)
      throw input_error("arrangement class for '" + divisors[i].label +
                        "' belongs to a different model");
    if (!divisors[i].cls.is_pure_degree(1))
      throw input_error("arrangement class for '" + divisors[i].label +
                        "' is not of pure degree 1");
    for (size_t j = i + 1; j < divisors.size(); ++j)
      if (divisors[i].label == divisors[j].label)
        throw input_error("duplicate arrangement label '" + divisors[i].label + "'");
  }
}

int Arrangement::label_index(std::string_view label) const {
  for (size_t i = 0; i < divisors.size(); ++i)
    if (divisors[i].label == label) return static_cast<int>(i);
  return -1;
}

std::vector<GradedElement> Arrangement::classes() const {
  std::vector<GradedElement> out;
  out.reserve(divisors.size());
  for (const auto& d : divisors) out.push_back(d.cls);
  return out;
}

GradedElement Arrangement::monomial_class(const MonomialExponent& a) const {
  if (a.size() != divisors.size())
    throw input_error("exponent length does not match the arrangement");
  GradedElement out = model->one();
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0) out = out * divisors[i].cls.pow(a[i]);
  return out;
}

ChiConvention parse_convention(const std::string& text) {
  if (text == "literal") return ChiConvention::Literal;
  if (text == "twisted") return ChiConvention::Twisted;
  throw input_error("unknown convention '" + text + "' (expected literal|twisted)");
}

std::string convention_name(ChiConvention conv) {
  return conv == ChiConvention::Literal ? "literal" : "twisted";
}

// ---------------------------------------------------------------------------
// builders

ModelPtr build_projective_space(int n) {
  if (n < 1) throw input_error("projective space needs n >= 1");
  ChowModelSpec spec;
  spec.name = "P" + std::to_string(n);
  spec.dimension = n;
  spec.generators = {{"H", 1}};
  spec.rules = {{"H^" + std::to_string(n + 1), "0"}};
  spec.integrals = {{n == 1 ? "H" : "H^" + std::to_string(n), "1"}};
  // c(Omega) = (1 - H)^{n+1} truncated.
  for (int i = 1; i <= n; ++i) {
    const Int coeff = (i % 2 == 0 ? 1 : -1) * binomial(static_cast<unsigned>(n + 1),
                                                       static_cast<unsigned>(i));
    std::string text = coeff.str() + "*H";
    if (i > 1) text += "^" + std::to_string(i);
    spec.cotangent.push_back(text);
  }
  return ChowModel::create(spec);
}

ModelPtr build_genus_curve(int g) {
  if (g < 0) throw input_error("genus must be >= 0");
  ChowModelSpec spec;
  spec.name = "curve-g" + std::to_string(g);
  spec.dimension = 1;
  spec.generators = {{"p", 1}};
  spec.rules = {{"p^2", "0"}};
  spec.integrals = {{"p", "1"}};
  spec.cotangent = {std::to_string(2 * g - 2) + "*p"};
  return ChowModel::create(spec);
}

namespace {

std::string product_generator_name(const std::string& base, int factor, bool collision) {
  return collision ? base + std::to_string(factor) : base;
}

Exponents embed_exponents(const Exponents& exp, size_t offset, size_t width) {
  Exponents out(width, 0);
  std::copy(exp.begin(), exp.end(), out.begin() + static_cast<long>(offset));
  return out;
}

std::string raw_poly_text(const RawPoly& poly, const ChowModel& model) {
  if (poly.empty()) return "0";
  std::string out;
  for (const auto& [exp, coeff] : poly) {
    const bool negative = coeff < 0;
    const Rational mag = negative ? Rational(-coeff) : coeff;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const std::string mono = model.monomial_to_string(exp);
    if (mono == "1") {
      out += to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += to_string(mag) + "*" + mono;
    }
  }
  return out;
}

}  // namespace

ModelPtr build_product(const ModelPtr& a, const ModelPtr& b) {
  ChowModelSpec spec;
  spec.name = a->name() + "x" + b->name();
  spec.dimension = a->dimension() + b->dimension();

  // Generator names: factor suffix only on collision.
  std::vector<std::string> names_a, names_b;
  for (const auto& g : a->generators()) {
    const bool collision = b->generator_index(g.name) >= 0;
    names_a.push_back(product_generator_name(g.name, 1, collision));
  }
  for (const auto& g : b->generators()) {
    const bool collision = a->generator_index(g.name) >= 0;
    names_b.push_back(product_generator_name(g.name, 2, collision));
  }
  for (size_t i = 0; i < names_a.size(); ++i)
    spec.generators.push_back({names_a[i], a->generators()[i].degree});
  for (size_t i = 0; i < names_b.size(); ++i)
    spec.generators.push_back({names_b[i], b->generators()[i].degree});

  const size_t width = spec.generators.size();
  const size_t offset_b = names_a.size();

  // A scratch model with the combined generators renders transported
  // rule and class text.
  auto scratch = ChowModel::create_free("product-scratch", spec.dimension, spec.generators);

  auto transport_rule = [&](const ChowModel& source, const ChowModel::Rule& rule,
                            size_t offset) {
    ChowModelSpec::RuleSpec out;
    out.lhs = scratch->monomial_to_string(embed_exponents(rule.lhs, offset, width));
    RawPoly rhs;
    for (const auto& [exp, coeff] : rule.rhs)
      rhs.emplace_back(embed_exponents(exp, offset, width), coeff);
    (void)source;
    out.rhs = raw_poly_text(rhs, *scratch);
    return out;
  };
  for (const auto& rule : a->rules()) spec.rules.push_back(transport_rule(*a, rule, 0));
  for (const auto& rule : b->rules()) spec.rules.push_back(transport_rule(*b, rule, offset_b));

  for (const auto& [ea, va] : a->integrals())
    for (const auto& [eb, vb] : b->integrals()) {
      Exponents exp = embed_exponents(ea, 0, width);
      const Exponents tail = embed_exponents(eb, offset_b, width);
      for (size_t i = 0; i < width; ++i) exp[i] += tail[i];
      spec.integrals.push_back({scratch->monomial_to_string(exp), to_string(va * vb)});
    }

  // Whitney product of the pulled-back total cotangent classes.
  auto lift_total = [&](const ModelPtr& source, size_t offset) {
    RawPoly raw{{Exponents(width, 0), Rational(1)}};
    for (const auto& c : source->cotangent())
      for (const auto& [exp, coeff] : c.terms())
        raw.emplace_back(embed_exponents(exp, offset, width), coeff);
    return scratch->normalize(raw);
  };
  const GradedElement total = lift_total(a, 0) * lift_total(b, offset_b);
  for (int i = 1; i <= spec.dimension; ++i)
    spec.cotangent.push_back(total.degree_part(i).to_string());

  return ChowModel::create(spec);
}

// ---------------------------------------------------------------------------
// logarithmic Chern classes

std::vector<GradedElement> log_cotangent(const Arrangement& arr) {
  const ModelPtr& model = arr.model;
  GradedElement boundary = model->one();
  for (const auto& d : arr.divisors) boundary = boundary * (model->one() - d.cls);
  GradedElement total = model->one();
  for (const auto& c : model->cotangent()) total = total + c;
  const GradedElement log_total = total * invert_unit(boundary);
  if (log_total * boundary != total)
    throw math_error("log Chern classes failed the defining relation");
  std::vector<GradedElement> out;
  for (int i = 1; i <= model->dimension(); ++i) out.push_back(log_total.degree_part(i));
  return out;
}

// ---------------------------------------------------------------------------
// Euler characteristics

namespace {

std::vector<GradedElement> twist_classes(const std::vector<GradedElement>& classes) {
  std::vector<GradedElement> out;
  out.reserve(classes.size());
  for (size_t i = 0; i < classes.size(); ++i) {
    const bool odd = (i % 2) == 0;  // entry i holds c_{i+1}
    out.push_back(odd ? -classes[i] : classes[i]);
  }
  return out;
}

SheafClass validated_sheaf(const SheafClass& s, const ModelPtr& model) {
  for (size_t i = 0; i < s.chern.size(); ++i) {
    if (s.chern[i].model() && s.chern[i].model() != model)
      throw input_error("sheaf Chern class belongs to a different model");
    if (s.chern[i].model() && !s.chern[i].is_pure_degree(static_cast<int>(i) + 1))
      throw input_error("sheaf Chern class " + std::to_string(i + 1) +
                        " is not of pure degree " + std::to_string(i + 1));
  }
  return s;
}

}  // namespace

Rational chi(const ModelPtr& model, const SheafClass& s, ChiConvention conv) {
  const SheafClass sheaf = validated_sheaf(s, model);
  const std::vector<GradedElement> y = conv == ChiConvention::Literal
                                           ? model->cotangent()
                                           : twist_classes(model->cotangent());
  return q_value(sheaf, y, model, SequenceKind::Todd);
}

Rational chi_log(const Arrangement& arr, const SheafClass& s) {
  const SheafClass sheaf = validated_sheaf(s, arr.model);
  return q_value(sheaf, log_cotangent(arr), arr.model, SequenceKind::Todd);
}

Rational chi_stratum_log(const Arrangement& arr, const MonomialExponent& a,
                         const SheafClass& s) {
  const ModelPtr& model = arr.model;
  if (static_cast<int>(exponent_weight(a)) > model->dimension()) return 0;  // empty stratum
  const SheafClass sheaf = validated_sheaf(s, model);
  const GradedElement stratum = arr.monomial_class(a);
  const GradedElement density =
      chern_character(sheaf, model) * todd_series(log_cotangent(arr), model);
  return model->integrate(stratum * density);
}

Rational chi_stratum_plain(const Arrangement& arr, const MonomialExponent& a,
                           const SheafClass& s) {
  if (!is_mf(a))
    throw input_error("chi_stratum_plain needs a multiplicity-free exponent; got (" +
                      exponent_to_string(a) + ")");
  const ModelPtr& model = arr.model;
  if (static_cast<int>(exponent_weight(a)) > model->dimension()) return 0;
  const SheafClass sheaf = validated_sheaf(s, model);

  GradedElement boundary = model->one();
  for (const auto& d : arr.divisors) boundary = boundary * (model->one() - d.cls);
  GradedElement cot_total = model->one();
  for (const auto& c : model->cotangent()) cot_total = cot_total + c;
  GradedElement residual = cot_total * invert_unit(boundary);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] == 0) residual = residual * (model->one() - arr.divisors[i].cls);

  std::vector<GradedElement> y;
  for (int i = 1; i <= model->dimension(); ++i) y.push_back(residual.degree_part(i));
  const GradedElement stratum = arr.monomial_class(a);
  const GradedElement density = chern_character(sheaf, model) * todd_series(y, model);
  return model->integrate(stratum * density);
}

// ---------------------------------------------------------------------------
// boundary restriction

std::vector<std::vector<unsigned>> partitions_of(int m) {
  std::vector<std::vector<unsigned>> out;
  if (m < 0) return out;
  std::vector<unsigned> current(static_cast<size_t>(m) + 1, 0);
  auto recurse = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      ++current[static_cast<size_t>(part)];
      self(self, remaining - part, part);
      --current[static_cast<size_t>(part)];
    }
  };
  recurse(recurse, m, m);
  return out;
}

bool boundary_restriction_check(const Arrangement& ambient, const std::string& divisor_label,
                                const ModelPtr& stratum,
                                const std::map<std::string, std::string>& correspondence,
                                std::string* diagnostics) {
  const ModelPtr& model = ambient.model;
  const int idx = ambient.label_index(divisor_label);
  if (idx < 0) throw input_error("no divisor labeled '" + divisor_label + "'");
  if (stratum->dimension() != model->dimension() - 1)
    throw input_error("stratum model must have dimension n - 1");

  // The correspondence is the restriction morphism on generators.
  std::vector<GradedElement> images;
  for (const auto& g : model->generators()) {
    auto it = correspondence.find(g.name);
    if (it == correspondence.end())
      throw input_error("incompatible correspondence: no image for generator '" + g.name + "'");
    GradedElement image = stratum->parse(it->second);
    if (!image.is_zero() && !image.is_pure_degree(g.degree))
      throw input_error("incompatible correspondence: image of '" + g.name +
                        "' has the wrong degree");
    images.push_back(std::move(image));
  }
  auto restrict_element = [&](const GradedElement& e) {
    GradedElement out = stratum->zero();
    for (const auto& [exp, coeff] : e.terms()) {
      GradedElement term = stratum->constant(coeff);
      for (size_t i = 0; i < exp.size(); ++i)
        if (exp[i] > 0) term = term * images[i].pow(exp[i]);
      out = out + term;
    }
    return out;
  };

  // Residual boundary on the stratum: the other divisors, restricted.
  std::vector<Divisor> residual;
  for (size_t i = 0; i < ambient.divisors.size(); ++i) {
    if (static_cast<int>(i) == idx) continue;
    residual.push_back({ambient.divisors[i].label, restrict_element(ambient.divisors[i].cls)});
  }
  const Arrangement stratum_arr(stratum, std::move(residual));

  const std::vector<GradedElement> ambient_log = log_cotangent(ambient);
  const std::vector<GradedElement> stratum_log = log_cotangent(stratum_arr);
  const GradedElement divisor_class = ambient.divisors[static_cast<size_t>(idx)].cls;

  bool all_equal = true;
  std::string diag;
  for (const auto& alpha : partitions_of(model->dimension() - 1)) {
    GradedElement lhs_class = model->one();
    GradedElement rhs_class = stratum->one();
    for (size_t i = 1; i < alpha.size(); ++i) {
      for (unsigned rep = 0; rep < alpha[i]; ++rep) {
        lhs_class = lhs_class * ambient_log[i - 1];
        rhs_class = rhs_class * stratum_log[i - 1];
      }
    }
    const Rational lhs = model->integrate(lhs_class * divisor_class);
    const Rational rhs = stratum->integrate(rhs_class);
    if (lhs != rhs) {
      all_equal = false;
      std::string alpha_text;
      for (size_t i = 1; i < alpha.size(); ++i)
        for (unsigned rep = 0; rep < alpha[i]; ++rep)
          alpha_text += (alpha_text.empty() ? "" : ",") + std::to_string(i);
      diag += "alpha=(" + alpha_text + "): ambient " + to_string(lhs) + " vs stratum " +
              to_string(rhs) + "\n";
    }
  }
  if (diagnostics) *diagnostics = diag;
  return all_equal;
}

// ---------------------------------------------------------------------------
// two-sided identity evaluators

namespace {

// Shared machinery for the three right-hand-side evaluators: the
// density ch(s) Todd(...) depends only on which divisors stay in the
// logarithmic boundary, so it is cached per support.
class StratumDensities {
public:
  StratumDensities(const Arrangement& arr, const SheafClass& s)
      : arr_(arr), model_(arr.model), ch_(chern_character(validated_sheaf(s, model_), model_)) {
    GradedElement boundary = model_->one();
    for (const auto& d : arr.divisors) boundary = boundary * (model_->one() - d.cls);
    GradedElement cot_total = model_->one();
    for (const auto& c : model_->cotangent()) cot_total = cot_total + c;
    log_total_ = cot_total * invert_unit(boundary);
    log_density_ = ch_ * todd_from_total(log_total_);
  }

  // ch Todd(log classes)
  const GradedElement& log_density() const { return log_density_; }

  // ch Todd(log classes restored by (1 - D_i) off the support)
  const GradedElement& plain_density(const MonomialExponent& b) {
    std::vector<bool> support(arr_.size());
    for (size_t i = 0; i < b.size(); ++i) support[i] = b[i] > 0;
    auto it = plain_cache_.find(support);
    if (it != plain_cache_.end()) return it->second;
    GradedElement residual = log_total_;
    for (size_t i = 0; i < support.size(); ++i)
      if (!support[i]) residual = residual * (model_->one() - arr_.divisors[i].cls);
    return plain_cache_.emplace(support, ch_ * todd_from_total(residual)).first->second;
  }

  Rational stratum_log(const MonomialExponent& b) {
    return model_->integrate(arr_.monomial_class(b) * log_density_);
  }

  Rational stratum_plain(const MonomialExponent& b) {
    return model_->integrate(arr_.monomial_class(b) * plain_density(b));
  }

private:
  GradedElement todd_from_total(const GradedElement& total) const {
    std::vector<GradedElement> y;
    for (int i = 1; i <= model_->dimension(); ++i) y.push_back(total.degree_part(i));
    return todd_series(y, model_);
  }

  const Arrangement& arr_;
  ModelPtr model_;
  GradedElement ch_;
  GradedElement log_total_;
  GradedElement log_density_;
  std::map<std::vector<bool>, GradedElement> plain_cache_;
};

}  // namespace

Rational euler_vs_log_rhs(const Arrangement& arr, const SheafClass& s) {
  StratumDensities densities(arr, s);
  Rational total(0);
  const int n = arr.model->dimension();
  for (const auto& b : enumerate_exponents(arr.size(), static_cast<unsigned>(n))) {
    const Rational delta = delta_constant(b);
    if (delta == 0) continue;
    const Rational term = delta * densities.stratum_log(b);
    total += (exponent_weight(b) % 2 == 0) ? term : -term;
  }
  return total;
}

Rational euler_vs_log_rhs_plain(const Arrangement& arr, const SheafClass& s) {
  StratumDensities densities(arr, s);
  Rational total(0);
  const int n = arr.model->dimension();
  for (const auto& b : enumerate_exponents(arr.size(), static_cast<unsigned>(n))) {
    if (!is_mf(b)) continue;
    const Rational lambda = lambda_constant(b);
    if (lambda == 0) continue;
    const Rational term = lambda * densities.stratum_plain(b);
    total += (exponent_weight(b) % 2 == 0) ? term : -term;
  }
  return total;
}

Rational euler_vs_log_rhs_mixed(const Arrangement& arr, const SheafClass& s) {
  StratumDensities densities(arr, s);
  Rational total(0);
  const int n = arr.model->dimension();
  for (const auto& b : enumerate_exponents(arr.size(), static_cast<unsigned>(n))) {
    const Rational lambda = lambda_constant(b);
    if (lambda == 0) continue;
    const Rational term =
        lambda * (is_mf(b) ? densities.stratum_plain(b) : densities.stratum_log(b));
    total += (exponent_weight(b) % 2 == 0) ? term : -term;
  }
  return total;
}

bool has_square_free_classes(const Arrangement& arr) {
  for (const auto& d : arr.divisors)
    if (!d.cls.pow(2).is_zero()) return false;
  return true;
}

}  // namespace logeuler
