#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ctheta {

using Rational = mpq_class;

// Canonical text form: "p" for integers, "p/q" otherwise, q > 0 and reduced.
std::string to_string(const Rational& value);

// Accepts [+-]digits or [+-]digits/digits (nonzero denominator); no
// whitespace, exponents or base prefixes. Result is canonicalized.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

}  // namespace ctheta
