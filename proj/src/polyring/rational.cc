#include "rlfgen/rational.h"

#include <cctype>

namespace rlfgen {

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw Error("rational with zero denominator");
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

Rational make_rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw Error("rational with zero denominator");
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error("malformed rational '" + std::string(text) + "'");
  }
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw Error("rational with zero denominator: " + std::string(text));
  if (negative) n = -n;
  return make_rational(n, d);
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

int sign(const Rational& q) { return sgn(q); }

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

namespace {

// Stern-Brocot descent for the simplest rational strictly inside (lo, hi),
// assuming 0 <= lo < hi.
Rational simplest_nonnegative(const Rational& lo, const Rational& hi) {
  const Integer fl = floor(lo);
  // An integer strictly inside the interval wins outright.
  const Integer candidate = fl + 1;
  if (Rational(candidate) < hi) return Rational(candidate);
  // lo and hi share the integer part fl (or hi == fl + 1).
  const Rational frac_lo = lo - fl;
  const Rational frac_hi = hi - fl;
  if (frac_lo == 0) {
    // (0, frac_hi): choose 1/k with the smallest k such that 1/k < frac_hi.
    Integer k = floor(Rational(1) / frac_hi) + 1;
    return Rational(fl) + make_rational(Integer(1), k);
  }
  // Recurse on the reciprocal interval (1/frac_hi, 1/frac_lo).
  const Rational inner = simplest_nonnegative(Rational(1) / frac_hi,
                                              Rational(1) / frac_lo);
  return Rational(fl) + Rational(1) / inner;
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw Error("simplest_between: empty interval");
  if (lo < 0 && hi > 0) return Rational(0);
  if (hi <= 0) return -simplest_nonnegative(-hi, -lo);
  return simplest_nonnegative(lo, hi);
}

}  // namespace rlfgen
