#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cvar {

using Rational = mpq_class;

/// Parses an exact rational from `a`, `a/b`, or a decimal literal such as
/// `-0.125` or `2.5e-3`. Decimals are converted from their digits, never via
/// a binary float.
Rational parse_rational(std::string_view text);

/// Canonical text form: `a` for integers, `a/b` otherwise.
std::string to_string(const Rational& value);

/// Exact decimal expansion when the denominator is 2^i 5^j, otherwise an
/// `a/b` fallback.
std::string to_decimal_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace cvar
