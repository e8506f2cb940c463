#ifndef LOGEULER_GEOMETRY_HPP
#define LOGEULER_GEOMETRY_HPP

#include <map>
#include <string>
#include <vector>

#include "logeuler/charclass.hpp"
#include "logeuler/chow.hpp"
#include "logeuler/combinat.hpp"

namespace logeuler {

/// A labeled collection of degree-1 divisor classes over one model.
/// Simple normal crossings is an input contract; only its algebraic
/// shadows are checked (see the cover module).
struct Divisor {
  std::string label;
  GradedElement cls;
};

struct Arrangement {
  ModelPtr model;
  std::vector<Divisor> divisors;

  Arrangement() = default;
  Arrangement(ModelPtr m, std::vector<Divisor> divs);

  size_t size() const { return divisors.size(); }
  int label_index(std::string_view label) const;  // -1 when absent
  std::vector<GradedElement> classes() const;

  /// D^a for an exponent tuple aligned with the divisor list.
  GradedElement monomial_class(const MonomialExponent& a) const;
};

/// Which classes feed the Riemann-Roch functional: the cotangent Chern
/// classes as stored (Literal) or with alternating signs (Twisted,
/// which matches the classical chi(P^n, O) = 1 normalization).
enum class ChiConvention { Literal, Twisted };

ChiConvention parse_convention(const std::string& text);
std::string convention_name(ChiConvention conv);

// --- model builders --------------------------------------------------------

ModelPtr build_projective_space(int n);
ModelPtr build_product(const ModelPtr& a, const ModelPtr& b);
ModelPtr build_genus_curve(int g);

// --- logarithmic Chern classes ---------------------------------------------

/// c_1..c_n of the logarithmic cotangent bundle:
/// c(Omega(log)) = c(Omega) / prod(1 - D_i), re-verified against the
/// defining relation after computation.
std::vector<GradedElement> log_cotangent(const Arrangement& arr);

// --- Euler characteristics --------------------------------------------------

Rational chi(const ModelPtr& model, const SheafClass& s,
             ChiConvention conv = ChiConvention::Literal);

/// Riemann-Roch value with logarithmic Chern classes in the Literal
/// convention (the convention of the whole identity layer).
Rational chi_log(const Arrangement& arr, const SheafClass& s);

/// Stratum value D^a . deg_{n-|a|}(ch(s) Todd(log classes)) as an
/// ambient-ring computation. Exponents with |a| > n give the empty
/// stratum and return 0.
Rational chi_stratum_log(const Arrangement& arr, const MonomialExponent& a,
                         const SheafClass& s);

/// Plain Euler characteristic of a multiplicity-free stratum, computed
/// inside the ambient ring through boundary restriction: the class
/// arguments are the degree parts of c(Omega(log)) prod_{i not in
/// supp(a)} (1 - D_i). Rejects non-multiplicity-free exponents.
Rational chi_stratum_plain(const Arrangement& arr, const MonomialExponent& a,
                           const SheafClass& s);

// --- boundary restriction ---------------------------------------------------

/// Checks c^alpha(Omega(log Delta)) . D = c^alpha(Omega(log Delta')) for
/// every partition alpha of n-1, the left side in the ambient model and
/// the right side in a stratum model. The correspondence maps ambient
/// generator names to stratum classes (the restriction ring morphism);
/// the arrangement minus the chosen divisor is transported through it.
bool boundary_restriction_check(const Arrangement& ambient, const std::string& divisor_label,
                                const ModelPtr& stratum,
                                const std::map<std::string, std::string>& correspondence,
                                std::string* diagnostics = nullptr);

/// All partitions alpha of m as multiplicity vectors (alpha_i copies of
/// part i), for c^alpha products.
std::vector<std::vector<unsigned>> partitions_of(int m);

// --- two-sided identity evaluators ------------------------------------------

/// Right-hand side of the comparison between chi and chi_log:
/// sum over |b| >= 1 of (-1)^{|b|} delta_b chi_stratum_log(b).
Rational euler_vs_log_rhs(const Arrangement& arr, const SheafClass& s);

/// Square-free form: sum over MF b of (-1)^{|b|} lambda_b
/// chi_stratum_plain(b). Valid when all arrangement divisors have
/// trivial self-intersection.
Rational euler_vs_log_rhs_plain(const Arrangement& arr, const SheafClass& s);

/// General two-sum form: MF terms against plain stratum values, NMF
/// terms against logarithmic ones.
Rational euler_vs_log_rhs_mixed(const Arrangement& arr, const SheafClass& s);

/// True when every divisor class squares to zero in the model.
bool has_square_free_classes(const Arrangement& arr);

}  // namespace logeuler

#endif
