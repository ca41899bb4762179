#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rlfgen/rational.h"

namespace rlfgen {

class RingMismatchError : public Error {
 public:
  using Error::Error;
};

class UnknownVariableError : public Error {
 public:
  using Error::Error;
};

class LimitExceededError : public Error {
 public:
  using Error::Error;
};

/// An ordered list of variable names. Copies share storage.
class Ring {
 public:
  Ring() : names_(std::make_shared<const std::vector<std::string>>()) {}
  explicit Ring(std::vector<std::string> names);

  size_t size() const { return names_->size(); }
  const std::string& name(size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<size_t> index_of(std::string_view name) const;
  /// Like index_of but throws UnknownVariableError.
  size_t require(std::string_view name) const;

  bool operator==(const Ring& other) const {
    return names_ == other.names_ || *names_ == *other.names_;
  }

  std::string to_string() const;

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// Concatenation of two variable lists; throws if they overlap.
Ring concat(const Ring& a, const Ring& b);

/// Exponent vector with one entry per ring variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(size_t arity) : exps_(arity, 0) {}
  explicit Monomial(std::vector<uint32_t> exps) : exps_(std::move(exps)) {}

  size_t arity() const { return exps_.size(); }
  uint32_t operator[](size_t i) const { return exps_[i]; }
  uint32_t& operator[](size_t i) { return exps_[i]; }
  const std::vector<uint32_t>& exponents() const { return exps_; }

  uint32_t total_degree() const;
  bool is_one() const;
  bool divides(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Exact quotient; requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& other) const = default;

  /// Storage order: lexicographic with the LAST variable most significant.
  /// Polynomials keep their terms sorted this way, so the highest-index
  /// variable acts as the main variable for recursive algorithms.
  struct StorageLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
  };

 private:
  std::vector<uint32_t> exps_;
};

/// A term order on monomials of a fixed arity.
class MonomialOrder {
 public:
  enum class Kind { kLex, kGrevlex };

  /// priority[0] is the most significant variable. Defaults to ring order
  /// (first variable most significant).
  static MonomialOrder lex(size_t arity);
  static MonomialOrder grevlex(size_t arity);
  static MonomialOrder lex(std::vector<size_t> priority);
  static MonomialOrder grevlex(std::vector<size_t> priority);
  /// The order polynomials use internally (lex, last variable most
  /// significant). Leading terms under it are O(1).
  static MonomialOrder storage(size_t arity);

  Kind kind() const { return kind_; }
  const std::vector<size_t>& priority() const { return priority_; }
  size_t arity() const { return priority_.size(); }
  bool is_storage_order() const { return storage_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const {
    return compare(a, b) == std::strong_ordering::less;
  }

  std::string to_string() const;

 private:
  MonomialOrder(Kind kind, std::vector<size_t> priority);
  Kind kind_;
  std::vector<size_t> priority_;
  bool storage_ = false;
};

/// Sparse multivariate polynomial with exact rational coefficients. Stored
/// coefficients are never zero, so structural equality is mathematical
/// equality.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, Monomial::StorageLess>;

  Polynomial() = default;
  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}
  Polynomial(Ring ring, TermMap terms);

  static Polynomial constant(Ring ring, const Rational& c);
  static Polynomial variable(Ring ring, std::string_view name);
  static Polynomial monomial(Ring ring, Monomial m, const Rational& c);

  const Ring& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial (0 for the zero polynomial).
  Rational constant_value() const;
  Rational coefficient(const Monomial& m) const;

  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(size_t var) const;
  int degree_in(std::string_view var) const;
  /// Variables with a positive exponent somewhere.
  std::vector<size_t> support() const;
  bool uses(size_t var) const { return degree_in(var) > 0; }

  /// Leading monomial/coefficient under `order`. Requires non-zero.
  const Monomial& leading_monomial(const MonomialOrder& order) const;
  const Rational& leading_coefficient(const MonomialOrder& order) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  /// Adds c * m * other to this polynomial.
  void add_scaled(const Polynomial& other, const Rational& c, const Monomial& m);

  Polynomial pow(unsigned k) const;

  bool operator==(const Polynomial& other) const;
  bool operator!=(const Polynomial& other) const { return !(*this == other); }

  /// Re-expresses the polynomial over `target`, matching variables by name.
  /// Every variable actually used must exist in `target`.
  Polynomial embed(const Ring& target) const;

  /// Canonical rendering: descending terms under `order`, rational
  /// coefficients as num/den, monomials as x^2*y.
  std::string to_string(const MonomialOrder& order) const;
  /// Renders under lex in ring order.
  std::string to_string() const;

 private:
  Ring ring_;
  TermMap terms_;
};

using Assignment = std::map<std::string, Rational, std::less<>>;

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Polynomial partial_derivative(const Polynomial& p, std::string_view var);
Polynomial partial_derivative(const Polynomial& p, size_t var);

/// Exact value at a point binding every ring variable (by name). Throws
/// UnknownVariableError when a ring variable is unbound.
Rational evaluate(const Polynomial& p, const Assignment& point);
/// Exact value with values listed in ring order.
Rational evaluate(const Polynomial& p, const std::vector<Rational>& values);

/// Substitutes the bound variables and returns a polynomial over the
/// remaining ones. Binding a variable that is not in the ring throws.
Polynomial substitute(const Polynomial& p, const Assignment& bindings);
/// Same substitution, but the result keeps the original ring.
Polynomial substitute_keep_ring(const Polynomial& p, const Assignment& bindings);
/// Substitutes a polynomial (over the same ring) for variable `var`.
Polynomial compose(const Polynomial& p, size_t var, const Polynomial& value);

struct DivisionResult {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Multivariate division. The identity p = sum q_i d_i + r is re-verified
/// exactly before returning; no term of r is divisible by a leading monomial
/// of a divisor.
DivisionResult reduce(const Polynomial& p, const std::vector<Polynomial>& divisors,
                      const MonomialOrder& order);

/// Remainder only, without the identity check. Zero divisors are skipped.
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& divisors,
                       const MonomialOrder& order);

/// Desk-scale guardrails on input polynomials.
struct PolynomialLimits {
  int max_total_degree = 8;
  size_t max_variables = 6;
};

/// Throws LimitExceededError when `p` or its ring exceeds `limits`.
void check_limits(const Polynomial& p, const PolynomialLimits& limits,
                  std::string_view what);

}  // namespace rlfgen
