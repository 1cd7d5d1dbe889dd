#pragma once

#include <gmpxx.h>

#include <span>
#include <string>

#include <json.hpp>

namespace limitid {

// Exact arbitrary-precision rational. Every mass, conditional and empirical
// frequency in the library is one of these; normalization checks are exact.
using Rational = mpq_class;
using Natural = mpz_class;

Rational make_rational(long num, long den);

// log2 of a positive rational, computed from the mantissa/exponent split of
// numerator and denominator so that 2^-100000 does not underflow.
double log2_of(const Rational& value);

// Exact comparison of a rational against a binary64 value (doubles are
// dyadic rationals, so the conversion is lossless).
bool less_than(const Rational& lhs, double rhs);

Rational sum(std::span<const Rational> values);

std::string to_string(const Rational& value);

// {"num": int, "den": int}; integers that overflow int64 are emitted as
// decimal strings and accepted back in either form.
nlohmann::json rational_to_json(const Rational& value);
Rational rational_from_json(const nlohmann::json& j);

}  // namespace limitid
