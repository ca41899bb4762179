#pragma once

#include <random>
#include <string>
#include <vector>

#include "rlfgen/dynamics.h"
#include "rlfgen/parser.h"
#include "rlfgen/polynomial.h"

namespace rlfgen {
namespace test {

/// Parses `text` over the given variables.
Polynomial P(const std::string& text, const std::vector<std::string>& vars);
Polynomial P(const std::string& text, const Ring& ring);

VectorField field(const std::vector<std::string>& vars,
                  const std::vector<std::string>& components);

Rational Q(long num, long den = 1);
std::vector<Rational> point(std::initializer_list<Rational> values);

/// Small random rational with numerator in [-max_num, max_num] and
/// denominator in [1, max_den].
Rational random_rational(std::mt19937_64& rng, long max_num = 5, long max_den = 3);

/// Random polynomial over `ring` with up to `terms` terms of total degree at
/// most `max_degree`.
Polynomial random_polynomial(std::mt19937_64& rng, const Ring& ring, int max_degree,
                             int terms, long max_num = 5, long max_den = 3);

/// Brute-force membership oracle: decides whether p = sum_j c_j g_j with
/// cofactors of total degree <= bound by exact Gaussian elimination over Q.
bool macaulay_member(const Polynomial& p, const std::vector<Polynomial>& gens, int bound);

}  // namespace test
}  // namespace rlfgen
