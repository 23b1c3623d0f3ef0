#pragma once

// Exact rationals for every probability, weight and LP coefficient in the
// library. Backed by GMP's mpq_class, which keeps values canonical (lowest
// terms, positive denominator) after each arithmetic operation.

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>

namespace ttcv {

using Rational = mpq_class;

/// Parses "p/q" or "k" (optional leading '-'). Throws std::invalid_argument on
/// malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q", or "k" when the denominator is 1.
std::string to_string(const Rational& value);

/// Least common multiple of the denominators.
mpz_class common_denominator(std::span<const Rational> values);

}  // namespace ttcv
