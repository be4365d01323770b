#pragma once

// Arbitrary-precision integers and rationals used by the exact routes.
// Values stay exact until they hit a report boundary; the helpers here are
// those boundary conversions.

#include <gmpxx.h>

#include <string>

namespace compana {

using BigInt = mpz_class;
using Rational = mpq_class;

/// 2^e as an exact integer.
BigInt pow2(unsigned long e);

/// Natural logarithm of a positive rational without going through a double
/// (so values far below DBL_MIN still have a finite log). Returns -inf for 0.
double log_of(const Rational& q);

/// Nearest double; underflows to 0 for values below the double range.
double to_double(const Rational& q);

/// Relative error |approx/exact - 1| computed in log space.
/// exact must be positive; approx is given by its natural log.
double relative_error_log(double log_approx, const Rational& exact);

/// "p/q", or "p" when the denominator is 1.
std::string to_fraction_string(const Rational& q);

/// Decimal rendering with `digits` significant digits; handles magnitudes
/// outside the double range (e.g. 1.2e-700).
std::string to_decimal_string(const Rational& q, int digits = 12);

}  // namespace compana
