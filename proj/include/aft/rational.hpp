#pragma once

#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace aft {

// Exact rational scalar used everywhere; all arithmetic in this project is
// exact (no floating point).
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Parses "p" or "p/q" with optional leading '-' on p.  The result is always
// canonical (lowest terms, positive denominator).  Throws std::invalid_argument
// on malformed text or a zero denominator.
Rational parse_rational(const std::string& text);

// Canonical text form: "p" when the denominator is 1, otherwise "p/q" in
// lowest terms with q > 0.
std::string format_rational(const Rational& value);

bool is_integer(const Rational& value);

// Requires is_integer(value).
BigInt to_integer(const Rational& value);

}  // namespace aft
