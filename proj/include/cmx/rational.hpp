#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cmx {

// Exact rational. gmpxx keeps results of arithmetic in canonical form
// (lowest terms, positive denominator); values built by hand must go through
// make_rational or parse_rational.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(const Integer& num, const Integer& den);

// Accepts "p", "p/q", and exact decimals such as "-0.125" or "2.5e-3".
Rational parse_rational(std::string_view text);

// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);

Integer binomial(unsigned long n, unsigned long k);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace cmx
