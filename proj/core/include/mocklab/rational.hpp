#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mocklab {

/// Exact arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// "num/den", the denominator is always printed.
std::string to_string(const Rational& r);

/// Accepts "num/den" or a bare integer.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& r);

/// Converts an integral rational that fits in int64; throws std::overflow_error
/// or std::invalid_argument otherwise.
std::int64_t to_int64(const Rational& r);

bool fits_int64(const Integer& z);

/// Standard p-adic valuation of a nonzero rational.
long padic_valuation(const Rational& r, unsigned long p);

/// Nonnegative residue of an integral rational modulo m.
std::int64_t residue(const Rational& r, std::int64_t m);

}  // namespace mocklab
