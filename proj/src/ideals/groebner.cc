#include "rlfgen/ideals.h"

#include <algorithm>
#include <set>

namespace rlfgen {

IdealBasis::IdealBasis(Ring ring, std::vector<Polynomial> generators, MonomialOrder order,
                       std::vector<Polynomial> groebner,
                       std::vector<std::vector<Polynomial>> cofactors)
    : ring_(std::move(ring)),
      generators_(std::move(generators)),
      order_(std::move(order)),
      groebner_(std::move(groebner)),
      cofactors_(std::move(cofactors)) {}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  const Monomial& mf = f.leading_monomial(order);
  const Monomial& mg = g.leading_monomial(order);
  const Monomial l = lcm(mf, mg);
  Polynomial s(f.ring());
  s.add_scaled(f, Rational(1) / f.leading_coefficient(order), l / mf);
  s.add_scaled(g, Rational(-1) / g.leading_coefficient(order), l / mg);
  return s;
}

namespace {

using Combination = std::vector<Polynomial>;

struct Element {
  Polynomial poly;
  Combination cofactor;
};

Combination zero_combination(const Ring& ring, size_t n) {
  return Combination(n, Polynomial(ring));
}

void add_scaled(Combination& target, const Combination& src, const Polynomial& factor) {
  for (size_t j = 0; j < target.size(); ++j) {
    if (!src[j].is_zero() && !factor.is_zero()) target[j] += factor * src[j];
  }
}

// Reduces `e` modulo `basis`, updating the cofactor so the identity with the
// generators is preserved.
Element reduce_tracked(Element e, const std::vector<Element>& basis, const MonomialOrder& order) {
  if (e.poly.is_zero() || basis.empty()) return e;
  std::vector<Polynomial> divisors;
  divisors.reserve(basis.size());
  for (const auto& b : basis) divisors.push_back(b.poly);
  DivisionResult res = reduce(e.poly, divisors, order);
  for (size_t i = 0; i < basis.size(); ++i) {
    if (!res.quotients[i].is_zero()) add_scaled(e.cofactor, basis[i].cofactor, -res.quotients[i]);
  }
  e.poly = std::move(res.remainder);
  return e;
}

void make_monic(Element& e, const MonomialOrder& order) {
  const Rational inv = Rational(1) / e.poly.leading_coefficient(order);
  if (inv == 1) return;
  e.poly *= inv;
  for (auto& c : e.cofactor) c *= inv;
}

struct Pair {
  size_t i;
  size_t j;
  Monomial lcm;
  uint32_t degree;
};

}  // namespace

IdealBasis groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                          const GroebnerLimits& limits) {
  if (gens.empty()) throw Error("groebner_basis: empty generator list needs a ring");
  return groebner_basis(gens.front().ring(), gens, order, limits);
}

IdealBasis groebner_basis(const Ring& ring, const std::vector<Polynomial>& gens,
                          const MonomialOrder& order, const GroebnerLimits& limits) {
  if (order.arity() != ring.size()) throw Error("groebner_basis: order arity mismatch");
  std::vector<Polynomial> generators;
  for (const auto& g : gens) {
    if (!(g.ring() == ring)) throw RingMismatchError("groebner_basis: ring mismatch");
    if (!g.is_zero()) generators.push_back(g);
  }
  const size_t n = generators.size();
  const size_t tracked = limits.track_cofactors ? n : 0;

  std::vector<Element> basis;
  std::vector<Pair> pairs;
  std::set<std::pair<size_t, size_t>> open;
  size_t processed = 0;

  auto add_element = [&](Element e) {
    make_monic(e, order);
    const size_t k = basis.size();
    if (k + 1 > limits.max_basis_size) {
      throw GroebnerLimitError("Groebner basis exceeded " +
                               std::to_string(limits.max_basis_size) + " elements");
    }
    if (e.poly.total_degree() > limits.max_degree) {
      throw GroebnerLimitError("Groebner completion produced degree " +
                               std::to_string(e.poly.total_degree()) + " > " +
                               std::to_string(limits.max_degree));
    }
    const Monomial& mk = e.poly.leading_monomial(order);
    for (size_t i = 0; i < k; ++i) {
      const Monomial l = lcm(basis[i].poly.leading_monomial(order), mk);
      pairs.push_back({i, k, l, l.total_degree()});
      open.emplace(i, k);
    }
    basis.push_back(std::move(e));
  };

  for (size_t j = 0; j < n; ++j) {
    Element e{generators[j], zero_combination(ring, tracked)};
    if (tracked) e.cofactor[j] = Polynomial::constant(ring, 1);
    e = reduce_tracked(std::move(e), basis, order);
    if (!e.poly.is_zero()) add_element(std::move(e));
  }

  auto pair_open = [&](size_t a, size_t b) { return open.count({std::min(a, b), std::max(a, b)}) > 0; };

  while (!pairs.empty()) {
    // Normal selection strategy: lowest lcm degree, then lowest lcm in the order.
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.degree != b.degree) return a.degree < b.degree;
      const auto c = order.compare(a.lcm, b.lcm);
      if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    const Pair pr = *best;
    pairs.erase(best);
    open.erase({pr.i, pr.j});
    if (++processed > limits.max_pairs) {
      throw GroebnerLimitError("Groebner completion exceeded " +
                               std::to_string(limits.max_pairs) + " pairs");
    }
    const Monomial& mi = basis[pr.i].poly.leading_monomial(order);
    const Monomial& mj = basis[pr.j].poly.leading_monomial(order);
    // First criterion: coprime leading monomials reduce to zero.
    if (coprime(mi, mj)) continue;
    // Second criterion: some k with LM(k) | lcm whose pairs with i and j are done.
    bool redundant = false;
    for (size_t k = 0; k < basis.size() && !redundant; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (basis[k].poly.leading_monomial(order).divides(pr.lcm) && !pair_open(pr.i, k) &&
          !pair_open(pr.j, k)) {
        redundant = true;
      }
    }
    if (redundant) continue;

    const Element& a = basis[pr.i];
    const Element& b = basis[pr.j];
    Element s{Polynomial(ring), zero_combination(ring, tracked)};
    const Rational ca = Rational(1) / a.poly.leading_coefficient(order);
    const Rational cb = Rational(-1) / b.poly.leading_coefficient(order);
    const Monomial sa = pr.lcm / mi;
    const Monomial sb = pr.lcm / mj;
    s.poly.add_scaled(a.poly, ca, sa);
    s.poly.add_scaled(b.poly, cb, sb);
    add_scaled(s.cofactor, a.cofactor, Polynomial::monomial(ring, sa, ca));
    add_scaled(s.cofactor, b.cofactor, Polynomial::monomial(ring, sb, cb));
    s = reduce_tracked(std::move(s), basis, order);
    if (!s.poly.is_zero()) add_element(std::move(s));
  }

  // Minimize: drop elements whose leading monomial is divisible by another's.
  std::vector<bool> keep(basis.size(), true);
  for (size_t i = 0; i < basis.size(); ++i) {
    const Monomial& mi = basis[i].poly.leading_monomial(order);
    for (size_t j = 0; j < basis.size() && keep[i]; ++j) {
      if (i == j) continue;
      const Monomial& mj = basis[j].poly.leading_monomial(order);
      if (mj.divides(mi) && (mj != mi || j < i)) keep[i] = false;
    }
  }
  std::vector<Element> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    if (keep[i]) minimal.push_back(std::move(basis[i]));
  }
  // Interreduce.
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Element> others;
    for (size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    minimal[i] = reduce_tracked(std::move(minimal[i]), others, order);
    make_monic(minimal[i], order);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const Element& a, const Element& b) {
    return order.less(a.poly.leading_monomial(order), b.poly.leading_monomial(order));
  });

  std::vector<Polynomial> gb;
  std::vector<std::vector<Polynomial>> cof;
  for (auto& e : minimal) {
    gb.push_back(std::move(e.poly));
    if (tracked) cof.push_back(std::move(e.cofactor));
  }
  return IdealBasis(ring, std::move(generators), order, std::move(gb), std::move(cof));
}

bool member(const Polynomial& p, const IdealBasis& basis) {
  if (!(p.ring() == basis.ring())) throw RingMismatchError("member: ring mismatch");
  if (p.is_zero()) return true;
  if (basis.is_zero_ideal()) return false;
  return normal_form(p, basis.groebner(), basis.order()).is_zero();
}

std::optional<std::vector<Polynomial>> membership_certificate(const Polynomial& p,
                                                              const IdealBasis& basis) {
  if (!(p.ring() == basis.ring())) throw RingMismatchError("member: ring mismatch");
  const size_t n = basis.generators().size();
  if (basis.cofactors().size() != basis.groebner().size()) {
    throw Error("membership_certificate: basis was computed without cofactors");
  }
  std::vector<Polynomial> out(n, Polynomial(basis.ring()));
  if (p.is_zero()) return out;
  if (basis.is_zero_ideal()) return std::nullopt;
  DivisionResult res = reduce(p, basis.groebner(), basis.order());
  if (!res.remainder.is_zero()) return std::nullopt;
  for (size_t i = 0; i < basis.groebner().size(); ++i) {
    if (res.quotients[i].is_zero()) continue;
    for (size_t j = 0; j < n; ++j) {
      if (!basis.cofactors()[i][j].is_zero()) out[j] += res.quotients[i] * basis.cofactors()[i][j];
    }
  }
  return out;
}

}  // namespace rlfgen
