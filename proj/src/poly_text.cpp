#include "logeuler/poly_text.hpp"

#include <algorithm>
#include <cctype>

namespace logeuler {

namespace {

struct Lexer {
  std::string text;
  size_t pos = 0;

  explicit Lexer(std::string_view raw) {
    // Normalize the unicode minus sign up front.
    for (size_t i = 0; i < raw.size(); ++i) {
      unsigned char c = static_cast<unsigned char>(raw[i]);
      if (c == 0xE2 && i + 2 < raw.size() &&
          static_cast<unsigned char>(raw[i + 1]) == 0x88 &&
          static_cast<unsigned char>(raw[i + 2]) == 0x92) {
        text.push_back('-');
        i += 2;
      } else {
        text.push_back(static_cast<char>(c));
      }
    }
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string number() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw input_error("expected a number in '" + text + "'");
    std::string digits = text.substr(start, pos - start);
    if (accept('/')) {
      skip_ws();
      size_t dstart = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (dstart == pos) throw input_error("expected a denominator in '" + text + "'");
      digits += "/" + text.substr(dstart, pos - dstart);
    }
    return digits;
  }

  std::string identifier() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
        ++pos;
      } else {
        break;
      }
    }
    if (start == pos) throw input_error("expected a generator name in '" + text + "'");
    return text.substr(start, pos - start);
  }
};

// factor := number | name ['^' number]
// term   := factor ('*' factor)*
// poly   := ['-'] term (('+'|'-') term)*
void parse_factor(Lexer& lex, const ChowModel& model, Rational& coeff, Exponents& exp) {
  if (std::isdigit(static_cast<unsigned char>(lex.peek()))) {
    coeff *= parse_rational(lex.number());
    return;
  }
  const std::string name = lex.identifier();
  const int idx = model.generator_index(name);
  if (idx < 0)
    throw input_error("unknown generator '" + name + "' in model '" + model.name() + "'");
  unsigned power = 1;
  if (lex.accept('^')) {
    const std::string p = lex.number();
    if (p.find('/') != std::string::npos) throw input_error("fractional exponent in '" + p + "'");
    power = static_cast<unsigned>(std::stoul(p));
  }
  exp[static_cast<size_t>(idx)] += power;
}

}  // namespace

RawPoly parse_poly_text(std::string_view text, const ChowModel& model) {
  Lexer lex(text);
  RawPoly out;
  if (lex.eof()) throw input_error("empty polynomial text");
  bool negative = lex.accept('-');
  if (!negative) lex.accept('+');
  while (true) {
    Rational coeff = negative ? Rational(-1) : Rational(1);
    Exponents exp(model.generators().size(), 0);
    parse_factor(lex, model, coeff, exp);
    while (lex.accept('*')) parse_factor(lex, model, coeff, exp);
    out.emplace_back(std::move(exp), std::move(coeff));
    if (lex.eof()) break;
    if (lex.accept('+')) {
      negative = false;
    } else if (lex.accept('-')) {
      negative = true;
    } else {
      throw input_error("unexpected character '" + std::string(1, lex.peek()) +
                        "' in polynomial '" + lex.text + "'");
    }
  }
  return out;
}

Exponents parse_monomial_text(std::string_view text, const ChowModel& model) {
  const RawPoly poly = parse_poly_text(text, model);
  if (poly.size() != 1 || poly[0].second != 1)
    throw input_error("expected a bare monomial, got '" + std::string(text) + "'");
  return poly[0].first;
}

std::string poly_to_string(const GradedElement::TermMap& terms, const ChowModel& model) {
  if (terms.empty()) return "0";
  std::vector<std::pair<Exponents, Rational>> sorted(terms.begin(), terms.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&model](const auto& a, const auto& b) {
                     const int da = model.weighted_degree(a.first);
                     const int db = model.weighted_degree(b.first);
                     if (da != db) return da < db;
                     return a.first < b.first;
                   });
  std::string out;
  bool first = true;
  for (const auto& [exp, coeff] : sorted) {
    const bool negative = coeff < 0;
    const Rational mag = negative ? Rational(-coeff) : coeff;
    if (first) {
      if (negative) out += "-";
      first = false;
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

}  // namespace logeuler
