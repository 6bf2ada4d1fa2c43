#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dsw {

using Integer = mpz_class;
using Rational = mpq_class;

/// num/den in canonical (reduced, positive denominator) form.
Rational ratio(std::int64_t num, std::int64_t den);

/// Canonical text: "p" for integers, "p/q" otherwise (q > 0, reduced).
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p" or "p/q" (optional sign). Throws Error(invalid_argument).
Rational parse_rational(std::string_view text);

/// 2^e for any signed exponent, exact.
Rational pow2(std::int64_t e);

Rational factorial(std::uint32_t n);

bool is_integer(const Rational& q);

/// Converts an integral rational to int64. Throws if not integral or out of range.
std::int64_t to_int64(const Rational& q);
std::int64_t to_int64(const Integer& z);

} // namespace dsw
