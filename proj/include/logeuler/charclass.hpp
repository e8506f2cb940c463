#ifndef LOGEULER_CHARCLASS_HPP
#define LOGEULER_CHARCLASS_HPP

#include <map>
#include <string>
#include <vector>

#include "logeuler/chow.hpp"

namespace logeuler {

/// Rank plus Chern-class data standing in for a coherent sheaf. Entries
/// beyond the stored length are zero; entry i-1 must have pure degree i.
struct SheafClass {
  Int rank = 0;
  std::vector<GradedElement> chern;

  static SheafClass trivial(const ModelPtr& model, Int rank = 1);
  static SheafClass line_bundle(const GradedElement& c1);
};

/// Which multiplicative sequence a Riemann-Roch evaluation uses: the
/// Todd sequence (coherent Euler characteristic) or the topological
/// sequence Q_n = y_n.
enum class SequenceKind { Todd, Top };

/// The universal Todd polynomial evaluated at degree-graded classes
/// y_1..y_n, truncated at the model dimension. Computed from the
/// generating series x/(1 - e^{-x}) through formal Chern roots (Newton
/// power sums), not from hard-coded tables.
GradedElement todd_series(const std::vector<GradedElement>& y, const ModelPtr& model);

/// rank + c1 + (c1^2 - 2 c2)/2 + ... via Newton power sums.
GradedElement chern_character(const SheafClass& s, const ModelPtr& model);

/// Power sums p_1..p_n of the formal roots with elementary symmetric
/// classes e_1, e_2, ...; shared by the Todd and Chern-character
/// expansions.
std::vector<GradedElement> newton_power_sums(const std::vector<GradedElement>& elementary,
                                             const ModelPtr& model, int upto);

/// Integrated Riemann-Roch pairing: Todd kind evaluates
/// deg_n(ch(s) Todd(y)); Top kind evaluates deg_n(y_n) and ignores s.
Rational q_value(const SheafClass& s, const std::vector<GradedElement>& y,
                 const ModelPtr& model, SequenceKind kind = SequenceKind::Todd);

/// Symbolic expansion of the universal polynomial Q_n over abstract
/// sheaf symbols x0..xn and class symbols y1..yn. Keys are canonical
/// monomial texts like "x0*y1^2".
struct QPolynomial {
  int n = 0;
  std::map<std::string, Rational> terms;
  std::string to_string() const;
};

/// Supported for any n >= 0; the CLI report command restricts itself to
/// the tabulated range.
QPolynomial q_polynomial_report(int n);

}  // namespace logeuler

#endif
