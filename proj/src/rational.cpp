#include "logeuler/rational.hpp"

#include <cctype>

namespace logeuler {

std::string to_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_string(const Int& n) { return n.str(); }

namespace {

// Strips whitespace and maps U+2212 (minus sign) to '-'.
std::string clean_numeric(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) continue;
    if (c == 0xE2 && i + 2 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
      continue;
    }
    out.push_back(static_cast<char>(c));
  }
  return out;
}

Int parse_int(const std::string& s) {
  if (s.empty()) throw input_error("empty integer literal");
  size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw input_error("bad integer literal: '" + s + "'");
  for (size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw input_error("bad integer literal: '" + s + "'");
  return Int(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = clean_numeric(text);
  if (s.empty()) throw input_error("empty rational literal");
  const size_t slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s));
  const Int num = parse_int(s.substr(0, slash));
  const Int den = parse_int(s.substr(slash + 1));
  if (den == 0) throw input_error("rational literal with zero denominator");
  return frac(num, den);
}

Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int result = 1;
  for (unsigned i = 0; i < k; ++i) {
    result *= n - i;
    result /= i + 1;
  }
  return result;
}

Rational rational_pow(const Rational& base, long long exp) {
  if (exp < 0) {
    if (base == 0) throw math_error("inverse of zero");
    return rational_pow(Rational(1) / base, -exp);
  }
  Rational result(1);
  Rational b = base;
  long long e = exp;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

Int int_pow(const Int& base, unsigned exp) {
  Int result = 1;
  Int b = base;
  unsigned e = exp;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

std::string decimal_string(const Rational& r, unsigned digits) {
  Int num = numerator(r);
  const Int den = denominator(r);
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  Int whole = num / den;
  Int rem = num % den;
  std::string frac_digits;
  for (unsigned i = 0; i < digits && rem != 0; ++i) {
    rem *= 10;
    frac_digits += Int(rem / den).str();
    rem %= den;
  }
  std::string out = sign + whole.str();
  if (!frac_digits.empty()) out += "." + frac_digits;
  if (rem != 0) out += "...";
  return out;
}

}  // namespace logeuler
