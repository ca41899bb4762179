#include "test_support.h"

#include <map>

namespace rlfgen {
namespace test {

Polynomial P(const std::string& text, const std::vector<std::string>& vars) {
  return parse_poly(text, vars);
}

Polynomial P(const std::string& text, const Ring& ring) { return parse_poly(text, ring); }

VectorField field(const std::vector<std::string>& vars,
                  const std::vector<std::string>& components) {
  const Ring ring(vars);
  std::vector<Polynomial> comps;
  for (const auto& c : components) comps.push_back(parse_poly(c, ring));
  return VectorField(ring, std::move(comps));
}

Rational Q(long num, long den) { return make_rational(num, den); }

std::vector<Rational> point(std::initializer_list<Rational> values) {
  return std::vector<Rational>(values);
}

Rational random_rational(std::mt19937_64& rng, long max_num, long max_den) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  return make_rational(num(rng), den(rng));
}

Polynomial random_polynomial(std::mt19937_64& rng, const Ring& ring, int max_degree,
                             int terms, long max_num, long max_den) {
  Polynomial p(ring);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<size_t> var(0, ring.size() - 1);
  for (int t = 0; t < terms; ++t) {
    Monomial m(ring.size());
    const int d = deg(rng);
    for (int k = 0; k < d && ring.size() > 0; ++k) m[var(rng)] += 1;
    p += Polynomial::monomial(ring, m, random_rational(rng, max_num, max_den));
  }
  return p;
}

namespace {

void monomials_up_to(size_t n, int bound, std::vector<uint32_t>& exps, size_t var,
                     std::vector<Monomial>& out) {
  if (var == n) {
    out.emplace_back(exps);
    return;
  }
  int used = 0;
  for (size_t i = 0; i < var; ++i) used += static_cast<int>(exps[i]);
  for (int e = 0; used + e <= bound; ++e) {
    exps[var] = static_cast<uint32_t>(e);
    monomials_up_to(n, bound, exps, var + 1, out);
  }
  exps[var] = 0;
}

}  // namespace

bool macaulay_member(const Polynomial& p, const std::vector<Polynomial>& gens, int bound) {
  const Ring& ring = p.ring();
  std::vector<Monomial> cofactor_monomials;
  std::vector<uint32_t> exps(ring.size(), 0);
  monomials_up_to(ring.size(), bound, exps, 0, cofactor_monomials);
  std::vector<Polynomial> columns;
  for (const auto& g : gens) {
    for (const auto& m : cofactor_monomials) columns.push_back(Polynomial::monomial(ring, m, 1) * g);
  }
  std::map<Monomial, size_t, Monomial::StorageLess> row_of;
  auto row = [&](const Monomial& m) { row_of.emplace(m, row_of.size()); };
  for (const auto& c : columns) {
    for (const auto& [m, _] : c.terms()) row(m);
  }
  for (const auto& [m, _] : p.terms()) row(m);
  const size_t rows = row_of.size();
  const size_t cols = columns.size();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1, Rational(0)));
  for (size_t j = 0; j < cols; ++j) {
    for (const auto& [m, c] : columns[j].terms()) a[row_of.at(m)][j] = c;
  }
  for (const auto& [m, c] : p.terms()) a[row_of.at(m)][cols] = c;
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      const Rational factor = a[r][col] / a[rank][col];
      for (size_t k = col; k <= cols; ++k) a[r][k] -= factor * a[rank][k];
    }
    ++rank;
  }
  for (size_t r = rank; r < rows; ++r) {
    if (a[r][cols] != 0) return false;
  }
  return true;
}

}  // namespace test
}  // namespace rlfgen
