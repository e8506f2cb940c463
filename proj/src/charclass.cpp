#include "logeuler/charclass.hpp"

#include <algorithm>

#include "logeuler/series.hpp"

namespace logeuler {

SheafClass SheafClass::trivial(const ModelPtr& model, Int rank) {
  (void)model;
  SheafClass s;
  s.rank = std::move(rank);
  return s;
}

SheafClass SheafClass::line_bundle(const GradedElement& c1) {
  SheafClass s;
  s.rank = 1;
  s.chern.push_back(c1);
  return s;
}

namespace {

// Pads or truncates a class list to exactly n entries of pure degree i.
std::vector<GradedElement> graded_arguments(const std::vector<GradedElement>& classes,
                                            const ModelPtr& model, int n,
                                            const char* what) {
  std::vector<GradedElement> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    if (i <= static_cast<int>(classes.size())) {
      const GradedElement& c = classes[static_cast<size_t>(i - 1)];
      if (c.model() && c.model() != model)
        throw math_error(std::string(what) + ": class belongs to a different model");
      if (!c.is_pure_degree(i))
        throw math_error(std::string(what) + ": entry " + std::to_string(i) +
                         " is not of pure degree " + std::to_string(i));
      out.push_back(c.model() ? c : model->zero());
    } else {
      out.push_back(model->zero());
    }
  }
  return out;
}

GradedElement exp_truncated(const GradedElement& z, const ModelPtr& model) {
  GradedElement sum = model->one();
  GradedElement power = model->one();
  Rational factorial(1);
  for (int k = 1; k <= model->dimension(); ++k) {
    power = power * z;
    if (power.is_zero()) break;
    factorial *= Rational(k);
    sum = sum + power * (Rational(1) / factorial);
  }
  return sum;
}

}  // namespace

std::vector<GradedElement> newton_power_sums(const std::vector<GradedElement>& elementary,
                                             const ModelPtr& model, int upto) {
  const auto e = graded_arguments(elementary, model, upto, "newton power sums");
  std::vector<GradedElement> p;
  p.reserve(static_cast<size_t>(upto));
  for (int k = 1; k <= upto; ++k) {
    // p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
    GradedElement acc = model->zero();
    for (int i = 1; i < k; ++i) {
      const GradedElement term = e[static_cast<size_t>(i - 1)] * p[static_cast<size_t>(k - i - 1)];
      acc = (i % 2 == 1) ? acc + term : acc - term;
    }
    GradedElement tail = e[static_cast<size_t>(k - 1)] * Rational(k);
    acc = (k % 2 == 1) ? acc + tail : acc - tail;
    p.push_back(acc);
  }
  return p;
}

GradedElement todd_series(const std::vector<GradedElement>& y, const ModelPtr& model) {
  const int n = model->dimension();
  const auto p = newton_power_sums(y, model, n);
  const series::Series s = series::todd_root_log(static_cast<size_t>(n));
  // Todd = exp(sum_m s_m p_m) with s = log(x/(1-e^{-x})).
  GradedElement z = model->zero();
  for (int m = 1; m <= n; ++m)
    if (s[static_cast<size_t>(m)] != 0)
      z = z + p[static_cast<size_t>(m - 1)] * s[static_cast<size_t>(m)];
  return exp_truncated(z, model);
}

GradedElement chern_character(const SheafClass& s, const ModelPtr& model) {
  const int n = model->dimension();
  const auto p = newton_power_sums(s.chern, model, n);
  GradedElement ch = model->constant(Rational(s.rank));
  Rational factorial(1);
  for (int m = 1; m <= n; ++m) {
    factorial *= Rational(m);
    ch = ch + p[static_cast<size_t>(m - 1)] * (Rational(1) / factorial);
  }
  return ch;
}

Rational q_value(const SheafClass& s, const std::vector<GradedElement>& y,
                 const ModelPtr& model, SequenceKind kind) {
  const int n = model->dimension();
  if (kind == SequenceKind::Top) {
    const auto args = graded_arguments(y, model, n, "q_value");
    if (n == 0) return 1;
    return model->integrate(args[static_cast<size_t>(n - 1)]);
  }
  const GradedElement product = chern_character(s, model) * todd_series(y, model);
  return model->integrate(product);
}

// ---------------------------------------------------------------------------
// Symbolic report

namespace {

std::string report_key(const Exponents& exp, const ModelPtr& free_model, bool with_x0) {
  std::string key = with_x0 ? "x0" : "";
  const auto& gens = free_model->generators();
  for (size_t i = 0; i < exp.size(); ++i) {
    if (exp[i] == 0) continue;
    if (!key.empty()) key += "*";
    key += gens[i].name;
    if (exp[i] > 1) key += "^" + std::to_string(exp[i]);
  }
  return key.empty() ? "1" : key;
}

}  // namespace

std::string QPolynomial::to_string() const {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [key, coeff] : terms) {
    const bool negative = coeff < 0;
    const Rational mag = negative ? Rational(-coeff) : coeff;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (key == "1") {
      out += logeuler::to_string(mag);
    } else if (mag == 1) {
      out += key;
    } else {
      out += logeuler::to_string(mag) + "*" + key;
    }
  }
  return out;
}

QPolynomial q_polynomial_report(int n) {
  if (n < 0) throw input_error("q_polynomial_report needs n >= 0");
  QPolynomial report;
  report.n = n;
  if (n == 0) {
    report.terms["x0"] = 1;
    return report;
  }
  // Free polynomial ring on abstract sheaf symbols x_i and class
  // symbols y_i, both of degree i. The rank symbol x0 is handled
  // separately: Q_n is linear in it with coefficient Todd_n(y).
  std::vector<Generator> gens;
  for (int i = 1; i <= n; ++i) gens.push_back({"x" + std::to_string(i), i});
  for (int i = 1; i <= n; ++i) gens.push_back({"y" + std::to_string(i), i});
  const ModelPtr free_model =
      ChowModel::create_free("Q" + std::to_string(n) + "-report", n, gens);

  std::vector<GradedElement> xs, ys;
  for (int i = 0; i < n; ++i) xs.push_back(free_model->generator_element(static_cast<size_t>(i)));
  for (int i = 0; i < n; ++i)
    ys.push_back(free_model->generator_element(static_cast<size_t>(n + i)));

  const GradedElement todd = todd_series(ys, free_model);
  // ch with rank dropped: x0 enters only through the constant part.
  SheafClass abstract_sheaf;
  abstract_sheaf.rank = 0;
  abstract_sheaf.chern = xs;
  const GradedElement ch_positive = chern_character(abstract_sheaf, free_model);

  const GradedElement x0_part = todd.degree_part(n);
  const GradedElement rest = (ch_positive * todd).degree_part(n);
  for (const auto& [exp, coeff] : x0_part.terms())
    report.terms[report_key(exp, free_model, true)] += coeff;
  for (const auto& [exp, coeff] : rest.terms())
    report.terms[report_key(exp, free_model, false)] += coeff;
  std::erase_if(report.terms, [](const auto& kv) { return kv.second == 0; });
  return report;
}

}  // namespace logeuler
