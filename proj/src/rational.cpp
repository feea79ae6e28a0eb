#include "tpd/rational.hpp"

#include <stdexcept>

namespace tpd {

namespace {

// Accepts an optional sign followed by one or more decimal digits.
bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (!is_decimal_integer(s)) {
    throw std::invalid_argument("not a rational literal: \"" + std::string(whole) + "\"");
  }
  // The big-integer constructor rejects an explicit plus sign.
  if (s.front() == '+') s.remove_prefix(1);
  return BigInt(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  const BigInt num = parse_integer(text.substr(0, slash), text);
  const BigInt den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator: \"" + std::string(text) + "\"");
  }
  // Division canonicalizes (reduces and moves the sign to the numerator).
  return Rational(num) / Rational(den);
}

std::string to_string(const Rational& value) {
  const BigInt num = numerator(value);
  const BigInt den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational factor = base;
  for (unsigned e = exponent; e != 0; e >>= 1) {
    if (e & 1u) result *= factor;
    if (e > 1) factor *= factor;
  }
  return result;
}

}  // namespace tpd
