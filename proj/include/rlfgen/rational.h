#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace rlfgen {

/// Arbitrary-precision integers and rationals. mpq_class keeps every value in
/// lowest terms with a positive denominator once canonicalized; all helpers
/// here return canonical values.
using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational make_rational(long numerator, long denominator = 1);
Rational make_rational(const Integer& numerator, const Integer& denominator);

/// Parses "12", "-3/4" or "6/8" (reduced on the way in). Throws Error on
/// malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" for integers.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

int sign(const Rational& q);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// The rational with the smallest denominator (then smallest absolute
/// numerator) in the open interval (lo, hi). Requires lo < hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Lowest common multiple of the denominators / gcd of numerators.
Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

}  // namespace rlfgen
