#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace pbk {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// n! as an exact integer.
BigInt factorial_exact(unsigned n);

/// Binomial coefficient C(n, k) as an exact integer; 0 when k > n.
BigInt binomial_exact(unsigned n, unsigned k);

/// Nearest double to an exact rational.
double to_double(const Rational& q);

/// "p/q" (or "p" when q == 1), suitable for JSON string fields.
std::string to_string(const Rational& q);

} // namespace pbk
