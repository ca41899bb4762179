#include <numeric>
#include <sstream>

#include "rlfgen/polynomial.h"

namespace rlfgen {

uint32_t Monomial::total_degree() const {
  uint32_t d = 0;
  for (uint32_t e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const {
  for (uint32_t e : exps_) {
    if (e != 0) return false;
  }
  return true;
}

bool Monomial::divides(const Monomial& other) const {
  for (size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a);
  for (size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] += b.exps_[i];
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r(a);
  for (size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] -= b.exps_[i];
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a);
  for (size_t i = 0; i < r.exps_.size(); ++i) {
    r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
  }
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.exps_.size(); ++i) {
    if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
  }
  return true;
}

bool Monomial::StorageLess::operator()(const Monomial& a, const Monomial& b) const {
  for (size_t i = a.exps_.size(); i-- > 0;) {
    if (a.exps_[i] != b.exps_[i]) return a.exps_[i] < b.exps_[i];
  }
  return false;
}

MonomialOrder::MonomialOrder(Kind kind, std::vector<size_t> priority)
    : kind_(kind), priority_(std::move(priority)) {
  std::vector<bool> seen(priority_.size(), false);
  for (size_t v : priority_) {
    if (v >= priority_.size() || seen[v]) {
      throw Error("monomial order priority is not a permutation");
    }
    seen[v] = true;
  }
}

MonomialOrder MonomialOrder::lex(size_t arity) {
  std::vector<size_t> p(arity);
  std::iota(p.begin(), p.end(), 0);
  return MonomialOrder(Kind::kLex, std::move(p));
}

MonomialOrder MonomialOrder::grevlex(size_t arity) {
  std::vector<size_t> p(arity);
  std::iota(p.begin(), p.end(), 0);
  return MonomialOrder(Kind::kGrevlex, std::move(p));
}

MonomialOrder MonomialOrder::lex(std::vector<size_t> priority) {
  return MonomialOrder(Kind::kLex, std::move(priority));
}

MonomialOrder MonomialOrder::grevlex(std::vector<size_t> priority) {
  return MonomialOrder(Kind::kGrevlex, std::move(priority));
}

MonomialOrder MonomialOrder::storage(size_t arity) {
  std::vector<size_t> p(arity);
  for (size_t i = 0; i < arity; ++i) p[i] = arity - 1 - i;
  MonomialOrder order(Kind::kLex, std::move(p));
  order.storage_ = true;
  return order;
}

std::strong_ordering MonomialOrder::compare(const Monomial& a,
                                            const Monomial& b) const {
  if (kind_ == Kind::kLex) {
    for (size_t v : priority_) {
      if (a[v] != b[v]) return a[v] <=> b[v];
    }
    return std::strong_ordering::equal;
  }
  const uint32_t da = a.total_degree();
  const uint32_t db = b.total_degree();
  if (da != db) return da <=> db;
  // Ties: the monomial with the smaller exponent in the least significant
  // differing variable is the larger one.
  for (size_t k = priority_.size(); k-- > 0;) {
    const size_t v = priority_[k];
    if (a[v] != b[v]) return b[v] <=> a[v];
  }
  return std::strong_ordering::equal;
}

std::string MonomialOrder::to_string() const {
  std::ostringstream out;
  out << (kind_ == Kind::kLex ? "lex" : "grevlex") << "(";
  for (size_t i = 0; i < priority_.size(); ++i) {
    if (i) out << ">";
    out << priority_[i];
  }
  out << ")";
  return out.str();
}

}  // namespace rlfgen
