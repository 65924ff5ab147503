#pragma once

#include <gmpxx.h>

#include <string>

namespace uknap {

// Exact rational arithmetic. Every quantity with mathematical meaning in this
// project (weights, values, gains, optima, ratios, epsilons, tolerances) is an
// mpq_class rational; floating point never appears on a correctness path.
using Rat = mpq_class;
using Int = mpz_class;

// mpq_class(num, den) does not reduce to lowest terms; this does. Throws
// std::invalid_argument on a zero denominator.
Rat make_rat(long num, long den);
Rat make_rat(const Int& num, const Int& den);

// Parses "p/q" or "p" with an optional leading sign. Throws
// std::invalid_argument on malformed input or a zero denominator.
Rat parse_rat(const std::string& s);

// "p/q", or plain "p" when the denominator is 1. Inverse of parse_rat.
std::string rat_to_string(const Rat& r);

// Fixed-point decimal with `digits` fractional digits, rounding half to even.
// Convenience rendering only; exact output always uses rat_to_string.
std::string rat_to_decimal(const Rat& r, int digits);

// floor(r) as an integer (toward minus infinity).
Int floor_rat(const Rat& r);

}  // namespace uknap
