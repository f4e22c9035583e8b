#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace clawdeg {

// mpq_class keeps every value in lowest terms with a positive denominator.
using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(long num, long den = 1);

// Accepts "p/q" or "p" with an optional leading '-'. Throws ParseError.
Rational parse_rational(std::string_view text);

// Always "p/q", e.g. "3/1", "-1/2", "0/1".
std::string to_string(const Rational& value);

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);

} // namespace clawdeg
