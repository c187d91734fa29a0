#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace gcf {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal such as "-0.125" into the exact
/// rational it denotes. Decimals never pass through binary floating point.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// Lowest terms with a positive denominator. Values built from a numerator
/// and denominator pair (Rational(n, d)) are not reduced by GMP; every
/// public entry point that accepts rationals passes them through this.
Rational canonical(Rational x);

/// Always "num/den", including integers ("5/1") and zero ("0/1").
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

Integer floor(const Rational& x);
Integer ceil(const Rational& x);

/// Nearest integer; exact half-integers go toward zero (3/2 -> 1, -3/2 -> -1).
Integer round_half_toward_zero(const Rational& x);

bool is_integer(const Rational& x);
Rational pow(const Rational& x, unsigned long e);
Integer pow(const Integer& x, unsigned long e);

/// Bits needed for the larger of |numerator| and denominator.
std::size_t bit_size(const Rational& x);

/// log2|x| for x != 0, computed from mantissa/exponent so that neither very
/// large nor very small values overflow a double.
double log2_abs(const Rational& x);
double log2_abs(const Integer& x);

/// Short human rendering, e.g. "1.2346e-03". Deterministic.
std::string to_decimal(double x);

}  // namespace gcf
