#pragma once

// Arbitrary-precision counts and rationals used by every closed-form formula.

#include <gmpxx.h>

#include <string>

namespace mfnear {

using BigCount = mpz_class;
using ExactRational = mpq_class;

/// 2^e as an exact integer.
BigCount pow2(unsigned long e);

/// n! memoized across calls; safe to call from several threads.
BigCount factorial(unsigned long n);

/// Builds a canonical rational num/den (den != 0).
ExactRational make_rational(const BigCount& num, const BigCount& den);

/// log2 of a positive value from its bit length and a 53-bit mantissa window.
double log2_of(const BigCount& value);
double log2_of(const ExactRational& value);

/// Decimal rendering rounded half-to-even at `places` fractional digits.
std::string to_decimal(const ExactRational& value, int places);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const ExactRational& value);
std::string to_string(const BigCount& value);

/// True when the reduced denominator has no prime factors other than 2 and 5
/// and at most `max_places` fractional digits are needed.
bool is_short_decimal(const ExactRational& value, int max_places);

}  // namespace mfnear
