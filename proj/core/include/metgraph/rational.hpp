#pragma once

#include <gmpxx.h>

#include <string>

namespace metgraph {

/// Arbitrary-precision rational scalar. GMP keeps values canonical:
/// reduced to lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses `p/q` (integers, q > 0) or a decimal literal with optional
/// exponent (`2.5`, `.125e-2`). Decimals are converted exactly; no
/// floating-point arithmetic is involved. Throws Error on malformed input.
Rational parse_rational(const std::string& text);

/// "23/500" for non-integers, "40" when the denominator is 1.
std::string to_fraction_string(const Rational& value);

/// Decimal approximation with the given number of significant digits,
/// printf-%g style (positional when the exponent is small, scientific
/// otherwise). Trailing zeros are trimmed.
std::string to_decimal_string(const Rational& value, int significant_digits = 12);

}  // namespace metgraph
