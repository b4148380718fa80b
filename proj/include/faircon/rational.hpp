#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace faircon {

using Rational = mpq_class;

// Accepts "a", "a/b" and decimal literals such as "0.25" or "1e-3".
Rational parse_rational(std::string_view text);

// Interprets a double through its shortest round-trip decimal form, so 0.1 becomes 1/10.
Rational rational_from_double(double value);

// Exact binary value of a double.
Rational exact_from_double(double value);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

// Formats with 12 significant digits.
std::string format_float(double value);

// Number of bits needed for |numerator| plus bits for the denominator.
std::size_t bit_length(const Rational& q);

Rational ceil_to_integer(const Rational& q);

}  // namespace faircon
