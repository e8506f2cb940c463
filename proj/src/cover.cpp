#include "logeuler/cover.hpp"

#include <algorithm>

namespace logeuler {

Int CoverData::ram_index_of(size_t ram_position) const {
  const auto& label = ram.divisors.at(ram_position).label;
  auto it = ram_index.find(label);
  if (it == ram_index.end())
    throw input_error("no ramification index for '" + label + "'");
  return it->second;
}

int CoverData::branch_position_of(size_t ram_position) const {
  const auto& label = ram.divisors.at(ram_position).label;
  auto it = assignment.find(label);
  if (it == assignment.end()) return -1;
  return branch.label_index(it->second);
}

Int CoverData::ramification_product(const MonomialExponent& a) const {
  Int product = 1;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0) product *= int_pow(ram_index_of(i), a[i]);
  return product;
}

MonomialExponent CoverData::push_exponent(const MonomialExponent& a) const {
  MonomialExponent b(branch.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    const int j = branch_position_of(i);
    if (j < 0)
      throw input_error("ramification label '" + ram.divisors[i].label +
                        "' has no branch assignment");
    b[static_cast<size_t>(j)] += a[i];
  }
  return b;
}

std::string ValidationReport::to_string() const {
  if (issues.empty()) return "valid";
  std::string out;
  for (const auto& issue : issues) out += "[" + issue.check + "] " + issue.message + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// pullback

namespace {

std::vector<GradedElement> generator_images(const CoverData& cover) {
  std::vector<GradedElement> images;
  for (const auto& g : cover.codomain->generators()) {
    auto it = cover.pullback_images.find(g.name);
    if (it == cover.pullback_images.end())
      throw input_error("cover lacks a pullback image for generator '" + g.name + "'");
    GradedElement image = cover.domain->parse(it->second);
    if (!image.is_zero() && !image.is_pure_degree(g.degree))
      throw input_error("pullback image of '" + g.name + "' has the wrong degree");
    images.push_back(std::move(image));
  }
  return images;
}

}  // namespace

GradedElement pullback(const CoverData& cover, const GradedElement& e) {
  if (e.model() != cover.codomain)
    throw input_error("pullback argument does not live on the codomain");
  const auto images = generator_images(cover);
  GradedElement out = cover.domain->zero();
  for (const auto& [exp, coeff] : e.terms()) {
    GradedElement term = cover.domain->constant(coeff);
    for (size_t i = 0; i < exp.size(); ++i)
      if (exp[i] > 0) term = term * images[i].pow(exp[i]);
    out = out + term;
  }
  return out;
}

SheafClass pullback_sheaf(const CoverData& cover, const SheafClass& s) {
  SheafClass out;
  out.rank = s.rank;
  for (const auto& c : s.chern) out.chern.push_back(pullback(cover, c));
  return out;
}

// ---------------------------------------------------------------------------
// validation

ValidationReport validate_cover(const CoverData& cover) {
  ValidationReport report;
  auto issue = [&report](const std::string& check, const std::string& message) {
    report.issues.push_back({check, message});
  };

  // Structural checks.
  for (const auto& [label, e] : cover.ram_index)
    if (e < 1) issue("ram-index", "index for '" + label + "' must be >= 1");
  for (const auto& d : cover.ram.divisors) {
    if (!cover.ram_index.count(d.label))
      issue("ram-index", "no ramification index for '" + d.label + "'");
    auto it = cover.assignment.find(d.label);
    if (it == cover.assignment.end()) {
      issue("assignment", "ramification label '" + d.label + "' has no branch assignment");
    } else if (cover.branch.label_index(it->second) < 0) {
      issue("assignment", "assignment of '" + d.label + "' names unknown branch label '" +
                              it->second + "'");
    }
  }
  for (const auto& bd : cover.branch.divisors) {
    bool covered = false;
    for (const auto& [rlabel, blabel] : cover.assignment)
      if (blabel == bd.label && cover.ram.label_index(rlabel) >= 0) covered = true;
    if (!covered) issue("assignment", "branch label '" + bd.label + "' has no preimage label");
  }
  if (!report.ok()) return report;

  std::vector<GradedElement> images;
  try {
    images = generator_images(cover);
  } catch (const std::exception& err) {
    issue("pullback", err.what());
    return report;
  }

  // The generator images must respect the codomain presentation.
  for (const auto& rule : cover.codomain->rules()) {
    RawPoly lhs_raw{{rule.lhs, Rational(1)}};
    const GradedElement lhs_img = pullback(cover, cover.codomain->normalize(lhs_raw));
    const GradedElement rhs_img = pullback(cover, cover.codomain->normalize(rule.rhs));
    if (lhs_img != rhs_img)
      issue("morphism", "pullback breaks the relation on '" +
                            cover.codomain->monomial_to_string(rule.lhs) + "'");
  }

  // Degree scaling on every top-degree monomial.
  for (const auto& [exp, value] : cover.codomain->integrals()) {
    const GradedElement cls = cover.codomain->normalize({{exp, Rational(1)}});
    const Rational lhs = cover.domain->integrate(pullback(cover, cls));
    const Rational rhs = Rational(cover.degree) * value;
    if (lhs != rhs)
      issue("degree", "integral of pullback of '" + cover.codomain->monomial_to_string(exp) +
                          "' is " + to_string(lhs) + ", expected " + to_string(rhs));
  }

  // (i) pullback of each branch class equals sum of e_i R_i.
  for (const auto& bd : cover.branch.divisors) {
    GradedElement expected = cover.domain->zero();
    for (size_t i = 0; i < cover.ram.size(); ++i) {
      const auto& rlabel = cover.ram.divisors[i].label;
      if (cover.assignment.at(rlabel) != bd.label) continue;
      expected = expected + cover.ram.divisors[i].cls * Rational(cover.ram_index_of(i));
    }
    const GradedElement actual = pullback(cover, bd.cls);
    if (actual != expected)
      issue("ram-decomposition", "pullback of branch class '" + bd.label + "' is " +
                                     actual.to_string() + ", expected " + expected.to_string());
  }

  // (ii) two ramification components over one branch component cannot
  // meet; the certifiable shadow is the vanishing of every pairing of
  // their product.
  const int n = cover.domain->dimension();
  for (size_t i = 0; i < cover.ram.size(); ++i) {
    for (size_t j = i + 1; j < cover.ram.size(); ++j) {
      if (cover.assignment.at(cover.ram.divisors[i].label) !=
          cover.assignment.at(cover.ram.divisors[j].label))
        continue;
      const GradedElement product = cover.ram.divisors[i].cls * cover.ram.divisors[j].cls;
      bool vanishes = product.is_zero();
      if (!vanishes && n >= 2) {
        vanishes = true;
        for (const auto& exp : cover.domain->monomials_of_degree(n - 2)) {
          const GradedElement pairing =
              product * cover.domain->normalize({{exp, Rational(1)}});
          if (cover.domain->integrate(pairing) != 0) {
            vanishes = false;
            break;
          }
        }
      }
      if (!vanishes)
        issue("snc-shadow", "ramification components '" + cover.ram.divisors[i].label +
                                "' and '" + cover.ram.divisors[j].label +
                                "' share a branch image but their product does not vanish");
    }
  }

  // (iii) supplied component degrees must account for the full degree.
  if (cover.component_degrees) {
    for (const auto& bd : cover.branch.divisors) {
      Int total = 0;
      bool complete = true;
      for (size_t i = 0; i < cover.ram.size(); ++i) {
        const auto& rlabel = cover.ram.divisors[i].label;
        if (cover.assignment.at(rlabel) != bd.label) continue;
        auto it = cover.component_degrees->find(rlabel);
        if (it == cover.component_degrees->end()) {
          complete = false;
          break;
        }
        total += it->second * cover.ram_index_of(i);
      }
      if (!complete) {
        issue("component-degrees", "missing component degree over '" + bd.label + "'");
      } else if (total != cover.degree) {
        issue("component-degrees", "sum of mu_Z e_Z over '" + bd.label + "' is " +
                                       total.str() + ", expected " + cover.degree.str());
      }
    }
  }

  // (iv) the multi-index ramification product on multiplicity-free
  // exponents agrees with the per-component recomputation.
  for (const auto& a :
       enumerate_exponents(cover.ram.size(), static_cast<unsigned>(std::min(n, 3)))) {
    if (!is_mf(a)) continue;
    Int direct = 1;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] == 1) direct *= cover.ram_index_of(i);
    if (direct != cover.ramification_product(a))
      issue("ram-product", "E mismatch at exponent (" + exponent_to_string(a) + ")");
  }

  return report;
}

// ---------------------------------------------------------------------------
// functoriality checks

bool check_log_pullback(const CoverData& cover, std::string* diagnostics) {
  const auto branch_log = log_cotangent(cover.branch);
  const auto ram_log = log_cotangent(cover.ram);
  bool equal = true;
  std::string diag;
  for (size_t i = 0; i < branch_log.size() && i < ram_log.size(); ++i) {
    const GradedElement lhs = pullback(cover, branch_log[i]);
    if (lhs != ram_log[i]) {
      equal = false;
      diag += "degree " + std::to_string(i + 1) + ": pullback " + lhs.to_string() +
              " vs " + ram_log[i].to_string() + "\n";
    }
  }
  if (diagnostics) *diagnostics = diag;
  return equal;
}

bool check_log_chi(const CoverData& cover, const SheafClass& s, std::string* diagnostics) {
  const Rational lhs = chi_log(cover.ram, pullback_sheaf(cover, s));
  const Rational rhs = Rational(cover.degree) * chi_log(cover.branch, s);
  if (diagnostics)
    *diagnostics = "chi_log(X) = " + to_string(lhs) + ", mu chi_log(Y) = " + to_string(rhs);
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Riemann-Hurwitz evaluation

Rational rh_lhs(const CoverData& cover, const SheafClass& s) {
  const Rational chi_domain = chi(cover.domain, pullback_sheaf(cover, s));
  const Rational chi_codomain = chi(cover.codomain, s);
  return chi_domain - Rational(cover.degree) * chi_codomain;
}

Rational rh_rhs_theorem(const CoverData& cover, const SheafClass& s, int global_sign,
                        std::vector<RhTerm>* terms) {
  if (global_sign != 1 && global_sign != -1) throw input_error("sign must be +1 or -1");
  const SheafClass pulled = pullback_sheaf(cover, s);
  const int n = cover.domain->dimension();
  Rational total(0);
  for (const auto& a : enumerate_exponents(cover.ram.size(), static_cast<unsigned>(n))) {
    const Rational delta = delta_constant(a);
    if (delta == 0) continue;
    const Int product = cover.ramification_product(a);
    if (product == 1) continue;  // (E - 1) kills etale directions
    RhTerm term;
    term.a = a;
    term.mf = is_mf(a);
    term.delta = delta;
    term.ram_product = product;
    const Rational base = delta * Rational(product - 1);
    term.coefficient = (exponent_weight(a) % 2 == 0) ? base : -base;
    term.stratum_chi = chi_stratum_log(cover.ram, a, pulled);
    term.value = Rational(global_sign) * term.coefficient * term.stratum_chi;
    total += term.value;
    if (terms) terms->push_back(std::move(term));
  }
  return total;
}

namespace {

// Exponents a' <= bound with |a'| >= 1.
std::vector<MonomialExponent> sub_exponents(const MonomialExponent& bound) {
  std::vector<MonomialExponent> out;
  MonomialExponent current(bound.size(), 0);
  auto recurse = [&](auto&& self, size_t i) -> void {
    if (i == bound.size()) {
      if (exponent_weight(current) >= 1) out.push_back(current);
      return;
    }
    for (unsigned k = 0; k <= bound[i]; ++k) {
      current[i] = k;
      self(self, i + 1);
    }
    current[i] = 0;
  };
  recurse(recurse, 0);
  return out;
}

MonomialExponent subtract(const MonomialExponent& a, const MonomialExponent& b) {
  MonomialExponent out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace

Rational rh_rhs_corollary(const CoverData& cover, const SheafClass& s, int global_sign,
                          std::vector<RhTerm>* terms) {
  if (global_sign != 1 && global_sign != -1) throw input_error("sign must be +1 or -1");
  const SheafClass pulled = pullback_sheaf(cover, s);
  const int n = cover.domain->dimension();
  Rational total(0);
  for (const auto& a : enumerate_exponents(cover.ram.size(), static_cast<unsigned>(n))) {
    const Rational delta = delta_constant(a);
    const bool mf = is_mf(a);
    const int sign_a = (exponent_weight(a) % 2 == 0) ? 1 : -1;

    Rational closed;
    if (mf) {
      // delta_a prod (1 - e_i); the (-1)^{|a|} of the raw sum is folded in.
      closed = delta;
      for (size_t i = 0; i < a.size(); ++i)
        if (a[i] == 1) closed *= Rational(1) - Rational(cover.ram_index_of(i));
    } else {
      const Int e_full = cover.ramification_product(a);
      const Int e_hat = cover.ramification_product(hat(a));
      closed = Rational(sign_a) * delta * Rational(e_full - e_hat);
    }

    // Raw double-sum coefficient, computed directly from the lambda and
    // delta constants.
    Rational raw(0);
    if (mf) {
      for (const auto& ap : sub_exponents(a)) {
        const Rational inner = -lambda_constant(subtract(a, ap)) * delta_constant(ap) *
                               Rational(cover.ramification_product(ap) - 1);
        raw += inner;
      }
      raw *= Rational(sign_a);
    } else {
      raw = delta * Rational(cover.ramification_product(a) - 1);
      for (const auto& ap : sub_exponents(hat(a))) {
        raw += -lambda_constant(subtract(a, ap)) * delta_constant(ap) *
               Rational(cover.ramification_product(ap) - 1);
      }
      raw *= Rational(sign_a);
    }
    if (raw != closed)
      throw math_error("corollary coefficient mismatch at (" + exponent_to_string(a) +
                       "): raw " + to_string(raw) + " vs closed " + to_string(closed));
    if (closed == 0) continue;

    RhTerm term;
    term.a = a;
    term.mf = mf;
    term.delta = delta;
    term.ram_product = cover.ramification_product(a);
    term.coefficient = closed;
    term.stratum_chi =
        mf ? chi_stratum_plain(cover.ram, a, pulled) : chi_stratum_log(cover.ram, a, pulled);
    term.value = Rational(global_sign) * term.coefficient * term.stratum_chi;
    total += term.value;
    if (terms) terms->push_back(std::move(term));
  }
  return total;
}

int determine_sign(const std::vector<CoverData>& covers,
                   const std::vector<std::pair<size_t, SheafClass>>& extra_sheaves) {
  if (covers.empty()) throw input_error("determine_sign needs at least one cover");
  std::vector<std::pair<const CoverData*, SheafClass>> cases;
  for (const auto& cover : covers)
    cases.emplace_back(&cover, SheafClass::trivial(cover.codomain));
  for (const auto& [index, sheaf] : extra_sheaves)
    cases.emplace_back(&covers.at(index), sheaf);

  std::string residuals;
  bool plus_ok = true, minus_ok = true;
  for (const auto& [cover, sheaf] : cases) {
    const Rational lhs = rh_lhs(*cover, sheaf);
    const Rational plus = rh_rhs_theorem(*cover, sheaf, +1);
    const Rational minus = rh_rhs_theorem(*cover, sheaf, -1);
    if (lhs != plus) plus_ok = false;
    if (lhs != minus) minus_ok = false;
    residuals += cover->name + ": lhs " + to_string(lhs) + ", rhs(+1) " + to_string(plus) +
                 ", rhs(-1) " + to_string(minus) + "\n";
  }
  if (plus_ok && minus_ok)
    throw math_error("sign is ambiguous: both signs validate on every cover\n" + residuals);
  if (!plus_ok && !minus_ok)
    throw math_error("no global sign validates the covers\n" + residuals);
  return plus_ok ? +1 : -1;
}

}  // namespace logeuler
