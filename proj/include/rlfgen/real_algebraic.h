#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rlfgen/polynomial.h"

namespace rlfgen {

/// Raised when a computation exceeds its wall-clock budget.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

/// Wall-clock budget shared by a decision procedure and its helpers.
class Deadline {
 public:
  /// A deadline that never expires.
  Deadline() = default;
  static Deadline after(std::chrono::milliseconds budget);

  bool expired() const;
  /// Throws TimeoutError once expired.
  void check() const;

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

/// Closed rational interval [lo, hi].
struct Interval {
  Rational lo;
  Rational hi;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval pow(const Interval& a, unsigned k);

/// One coordinate of a sample point: either a rational, or the unique root
/// of a defining polynomial inside an open isolating interval (lo, hi). The
/// defining polynomial has the coordinate as its main variable and is
/// squarefree with nonvanishing leading coefficient over the lower
/// coordinates; it is nonzero at both interval endpoints.
class Coordinate {
 public:
  static Coordinate rational(Rational value);
  static Coordinate algebraic(Polynomial defining, Rational lo, Rational hi, int sign_at_hi);

  bool is_rational() const { return !defining_; }
  const Rational& value() const;
  const Polynomial& defining_polynomial() const;
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  int sign_at_hi() const { return sign_hi_; }
  /// [v, v] for a rational, [lo, hi] otherwise.
  Interval enclosure() const { return {lo_, hi_}; }
  double approximate() const;

 private:
  friend class SamplePoint;
  std::optional<Polynomial> defining_;
  Rational lo_;
  Rational hi_;
  int sign_hi_ = 0;
};

/// Result of isolating the real roots of a family of polynomials over a
/// sample point.
struct RootLift {
  /// Distinct roots, in increasing order.
  std::vector<Coordinate> roots;
  /// Indices of the input polynomials that vanish identically over the point.
  std::vector<size_t> nullified;
};

/// Sample coordinate of one cell in a cylinder.
struct CellSample {
  Coordinate coordinate;
  bool section;
};

/// A point (alpha_0, ..., alpha_{k-1}) of real algebraic numbers assigned to
/// the first k variables of a ring. Copies share coordinates, so interval
/// refinements made through one copy benefit all of them.
class SamplePoint {
 public:
  explicit SamplePoint(Ring ring, const Deadline* deadline = nullptr);

  const Ring& ring() const { return ring_; }
  size_t size() const { return coords_.size(); }
  const Coordinate& coordinate(size_t var) const { return *coords_.at(var); }
  bool all_rational() const;
  /// Coordinate values; requires all_rational().
  std::vector<Rational> rational_values() const;

  /// The point extended by one coordinate for variable size().
  SamplePoint extended(const Coordinate& c) const;

  /// Sign of p at the point. p must only use assigned variables.
  int sign(const Polynomial& p) const;
  bool is_zero(const Polynomial& p) const;

  /// Bisects the isolating interval of an algebraic coordinate once.
  void refine(size_t var) const;
  /// Bisects until the isolating interval is narrower than `width`.
  void refine_to(size_t var, const Rational& width) const;

  /// Real roots in the variable size() of the given polynomials, with all
  /// lower variables fixed to this point.
  RootLift isolate_roots(const std::vector<Polynomial>& polys) const;

  /// Sturm sequence in the variable size() of p over this point. Signs are
  /// corrected so that the usual variation count applies.
  std::vector<Polynomial> sturm_sequence(const Polynomial& p) const;
  /// Sign variations of a Sturm sequence at x_{size()} = x.
  int sign_variations(const std::vector<Polynomial>& sequence, const Rational& x) const;

  /// Sample coordinate for every cell of the cylinder over this point,
  /// given the sorted roots from isolate_roots: sectors (rational samples)
  /// interleaved with sections, in increasing order. With no roots a single
  /// sector sample 0 is returned.
  std::vector<CellSample> cylinder_samples(std::vector<Coordinate> roots) const;

  std::string to_string() const;

 private:
  Polynomial substitute_rationals(const Polynomial& p) const;
  Interval enclose(const Polynomial& p) const;
  Polynomial trim(Polynomial p, size_t var) const;
  Polynomial reduce_tower(const Polynomial& p, size_t var, int* sign_factor) const;
  Polynomial gcd_at(Polynomial a, Polynomial b, size_t var) const;
  Polynomial squarefree_at(const Polynomial& p, size_t var) const;
  int sign_at_value(const Polynomial& p, size_t var, const Rational& x) const;
  Polynomial reduce_signed(const Polynomial& p, size_t var) const;
  bool separate(Coordinate& a, Coordinate& b) const;
  void require_assigned(const Polynomial& p, size_t limit) const;
  void refine_candidate(Coordinate& c, size_t var) const;
  std::vector<Coordinate> isolate_squarefree(const Polynomial& q) const;
  void detect_rational(Coordinate& c, const Polynomial& q) const;
  void merge_roots(std::vector<Coordinate>& roots) const;
  void check_deadline() const;

  Ring ring_;
  std::vector<std::shared_ptr<Coordinate>> coords_;
  const Deadline* deadline_;
};

/// A real algebraic number given by a univariate polynomial over Q and an
/// isolating interval, or an exact rational.
class AlgebraicNumber {
 public:
  explicit AlgebraicNumber(const Rational& value);
  /// The unique root of p in (lo, hi). p must be univariate and squarefree
  /// on the interval, with p(lo), p(hi) nonzero and a single root inside.
  AlgebraicNumber(const Polynomial& p, const Rational& lo, const Rational& hi);

  bool is_rational() const { return point_.coordinate(0).is_rational(); }
  const Coordinate& coordinate() const { return point_.coordinate(0); }
  /// Shrinks the isolating interval below `width`.
  void refine(const Rational& width) const { point_.refine_to(0, width); }
  /// Sign of a univariate polynomial q at this number.
  int sign_of(const Polynomial& q) const;
  /// Sign of (this - x).
  int compare(const Rational& x) const;
  double approximate() const { return coordinate().approximate(); }

 private:
  explicit AlgebraicNumber(SamplePoint point) : point_(std::move(point)) {}
  friend std::vector<AlgebraicNumber> real_roots(const Polynomial& p);
  SamplePoint point_;
};

/// All distinct real roots of a univariate polynomial over Q, increasing.
std::vector<AlgebraicNumber> real_roots(const Polynomial& p);

/// Sturm sequence of a univariate polynomial over Q.
std::vector<Polynomial> sturm_sequence(const Polynomial& p);

/// Number of distinct real roots of a univariate polynomial in (lo, hi].
int count_real_roots(const Polynomial& p, const Rational& lo, const Rational& hi);

}  // namespace rlfgen
