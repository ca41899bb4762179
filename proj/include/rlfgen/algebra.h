#pragma once

#include <optional>
#include <vector>

#include "rlfgen/polynomial.h"

namespace rlfgen {

// Recursive multivariate algebra over Q. "Main variable" of a polynomial is
// its highest-index variable with positive degree; all routines work in the
// polynomial's own ring.

std::optional<size_t> main_variable(const Polynomial& p);

/// Coefficients of p viewed as a polynomial in `var`, indexed by power. The
/// coefficients live in the same ring and do not involve `var`.
std::vector<Polynomial> coefficients_in(const Polynomial& p, size_t var);
Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, size_t var);
Polynomial leading_coefficient_in(const Polynomial& p, size_t var);

/// Exact quotient p / d when d divides p, otherwise nullopt.
std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& d);
/// Exact quotient; throws when d does not divide p.
Polynomial exact_quotient(const Polynomial& p, const Polynomial& d);

/// Pseudo-remainder of f by g with respect to `var`.
Polynomial pseudo_remainder(const Polynomial& f, const Polynomial& g, size_t var);

struct PseudoDivision {
  Polynomial quotient;
  Polynomial remainder;
  /// lc(g)^exponent * f = quotient * g + remainder.
  unsigned exponent = 0;
};

/// Pseudo-division of f by g with respect to `var`, with exponent
/// max(deg f - deg g + 1, 0).
PseudoDivision pseudo_divide(const Polynomial& f, const Polynomial& g, size_t var);

/// Scales p to integer coefficients with content 1 and a positive leading
/// coefficient (storage order). Zero stays zero.
Polynomial normalize_associate(const Polynomial& p);

/// Positive rational multiple of p with coprime integer coefficients; the
/// sign of every value is preserved.
Polynomial integer_primitive(const Polynomial& p);

/// Greatest common divisor, normalized with normalize_associate. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& f, const Polynomial& g);

/// True only if f and g have no common factor of positive degree in `var`,
/// proven by a coprime image modulo a prime at a random evaluation of the
/// other variables. False means undetermined.
bool certainly_coprime_in(const Polynomial& f, const Polynomial& g, size_t var);

/// gcd of the coefficients of p with respect to `var` (normalized).
Polynomial content_in(const Polynomial& p, size_t var);
Polynomial primitive_part_in(const Polynomial& p, size_t var);

/// p / gcd(p, dp/dvar) for p primitive in `var`, normalized.
Polynomial squarefree_part_in(const Polynomial& p, size_t var);

/// Sylvester resultant with respect to `var`.
Polynomial resultant(const Polynomial& f, const Polynomial& g, size_t var);
/// res(f, f') / lc(f), up to sign. Constant 1 when deg_var f <= 1.
Polynomial discriminant(const Polynomial& f, size_t var);

/// Determinant of a square matrix of polynomials (fraction-free Bareiss).
Polynomial determinant(std::vector<std::vector<Polynomial>> m, const Ring& ring);

}  // namespace rlfgen
