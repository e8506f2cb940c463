#ifndef LOGEULER_POLY_TEXT_HPP
#define LOGEULER_POLY_TEXT_HPP

#include <string>
#include <string_view>

#include "logeuler/chow.hpp"

namespace logeuler {

/// Parses polynomial text over a model's generators:
///   terms joined by + and -, each term an optional rational
///   coefficient and "*"-separated generator powers "name^k"
/// e.g. "-3*H", "1/2*h1*h2^2 + 4", "0". Unknown generator names raise
/// input_error.
RawPoly parse_poly_text(std::string_view text, const ChowModel& model);

/// Parses a single monomial like "H^2*K" (coefficient not allowed).
Exponents parse_monomial_text(std::string_view text, const ChowModel& model);

/// Canonical rendering: terms sorted by total degree then exponent
/// order, exact rational coefficients.
std::string poly_to_string(const GradedElement::TermMap& terms, const ChowModel& model);

}  // namespace logeuler

#endif
