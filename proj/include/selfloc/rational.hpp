#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace selfloc {

using BigInt = boost::multiprecision::cpp_int;

/// Exact arbitrary-precision rational. Always stored reduced with a
/// positive denominator; arithmetic never rounds.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q" or "p" with p, q decimal integers (optionally negative p),
/// q > 0. Decimal floats like "0.5" are rejected with a hint to write "1/2".
/// Throws DomainError(rational_format).
Rational parse_rational(std::string_view text);

/// "p/q" reduced, or just "p" when the value is integral.
std::string fraction_string(const Rational& value);

/// Fixed-point decimal rendering with round-half-even at `digits` places
/// after the point. decimal_string(1/3, 6) == "0.333333".
std::string decimal_string(const Rational& value, int digits = 6);

/// Fixed-precision rendering of a double (locale-independent).
std::string decimal_string(double value, int digits = 6);

} // namespace selfloc
