#ifndef LOGEULER_RATIONAL_HPP
#define LOGEULER_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace logeuler {

/// Arbitrary-precision integer and rational types. All coefficient
/// arithmetic in the library is exact; there is no floating point mode.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class math_error : public std::runtime_error {
public:
  explicit math_error(const std::string& what) : std::runtime_error(what) {}
};

class input_error : public std::runtime_error {
public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// num/den in lowest terms with positive denominator. The boost
/// constructor rejects negative denominators outright, so route
/// through division which canonicalizes.
inline Rational frac(Int num, Int den) {
  if (den == 0) throw math_error("rational with zero denominator");
  return Rational(std::move(num)) / Rational(std::move(den));
}

inline Rational frac(long long num, long long den = 1) {
  return frac(Int(num), Int(den));
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

std::string to_string(const Rational& r);
std::string to_string(const Int& n);

/// Parses "p", "p/q" or "-p/q"; tolerates surrounding whitespace and a
/// unicode minus sign.
Rational parse_rational(std::string_view text);

Int binomial(unsigned n, unsigned k);
Rational rational_pow(const Rational& base, long long exp);
Int int_pow(const Int& base, unsigned exp);

/// Decimal rendering of an exact rational with the given number of
/// fraction digits, computed by integer long division (round toward zero).
std::string decimal_string(const Rational& r, unsigned digits);

}  // namespace logeuler

#endif
