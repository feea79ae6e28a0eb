#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace tpd {

// Exact rational scalar. Everything the library certifies is computed on
// these; no floating point appears anywhere on a certification path.
// Values are always held in canonical form: gcd(p, q) = 1 and q > 0.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p" or "p/q" where p, q are decimal integers with an optional
/// leading sign. Throws std::invalid_argument on malformed text or q == 0.
Rational parse_rational(std::string_view text);

/// Renders canonically: "p" when the denominator is 1, otherwise "p/q"
/// with q > 0. Round-trips exactly through parse_rational.
std::string to_string(const Rational& value);

/// base^exponent for exponent >= 0 (0^0 = 1).
Rational rational_pow(const Rational& base, unsigned exponent);

}  // namespace tpd
