#include "rlfgen/polynomial.h"

#include <algorithm>
#include <set>
#include <sstream>

namespace rlfgen {

Ring::Ring(std::vector<std::string> names) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw Error("empty variable name");
    if (!seen.insert(n).second) throw Error("duplicate variable '" + n + "'");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<size_t> Ring::index_of(std::string_view name) const {
  for (size_t i = 0; i < names_->size(); ++i) {
    if ((*names_)[i] == name) return i;
  }
  return std::nullopt;
}

size_t Ring::require(std::string_view name) const {
  auto i = index_of(name);
  if (!i) {
    throw UnknownVariableError("unknown variable '" + std::string(name) +
                               "' in ring " + to_string());
  }
  return *i;
}

std::string Ring::to_string() const {
  std::string s = "[";
  for (size_t i = 0; i < names_->size(); ++i) {
    if (i) s += ",";
    s += (*names_)[i];
  }
  return s + "]";
}

Ring concat(const Ring& a, const Ring& b) {
  std::vector<std::string> names = a.names();
  names.insert(names.end(), b.names().begin(), b.names().end());
  return Ring(std::move(names));
}

namespace {

void require_same_ring(const Polynomial& p, const Polynomial& q) {
  if (!(p.ring() == q.ring())) {
    throw RingMismatchError("ring mismatch: " + p.ring().to_string() + " vs " +
                            q.ring().to_string());
  }
}

}  // namespace

Polynomial::Polynomial(Ring ring, TermMap terms)
    : ring_(std::move(ring)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.arity() != ring_.size()) {
      throw Error("monomial arity does not match ring");
    }
    if (it->second == 0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

Polynomial Polynomial::constant(Ring ring, const Rational& c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.emplace(Monomial(p.ring_.size()), c);
  return p;
}

Polynomial Polynomial::variable(Ring ring, std::string_view name) {
  Polynomial p(std::move(ring));
  Monomial m(p.ring_.size());
  m[p.ring_.require(name)] = 1;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

Polynomial Polynomial::monomial(Ring ring, Monomial m, const Rational& c) {
  Polynomial p(std::move(ring));
  if (m.arity() != p.ring_.size()) throw Error("monomial arity does not match ring");
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw Error("constant_value of a non-constant polynomial");
  return terms_.begin()->second;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max<int>(d, m.total_degree());
  return d;
}

int Polynomial::degree_in(size_t var) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max<int>(d, m[var]);
  return d;
}

int Polynomial::degree_in(std::string_view var) const {
  return degree_in(ring_.require(var));
}

std::vector<size_t> Polynomial::support() const {
  std::vector<size_t> out;
  for (size_t v = 0; v < ring_.size(); ++v) {
    if (degree_in(v) > 0) out.push_back(v);
  }
  return out;
}

const Monomial& Polynomial::leading_monomial(const MonomialOrder& order) const {
  if (terms_.empty()) throw Error("leading monomial of zero polynomial");
  if (order.is_storage_order()) return terms_.rbegin()->first;
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
    if (order.less(best->first, it->first)) best = it;
  }
  return best->first;
}

const Rational& Polynomial::leading_coefficient(const MonomialOrder& order) const {
  if (terms_.empty()) throw Error("leading coefficient of zero polynomial");
  if (order.is_storage_order()) return terms_.rbegin()->second;
  return terms_.find(leading_monomial(order))->second;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(*this, other);
  for (const auto& [m, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_ring(*this, other);
  for (const auto& [m, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

void Polynomial::add_scaled(const Polynomial& other, const Rational& c,
                            const Monomial& shift) {
  require_same_ring(*this, other);
  if (c == 0) return;
  for (const auto& [m, d] : other.terms_) {
    Rational v = c * d;
    auto [it, inserted] = terms_.try_emplace(m * shift, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) terms_.erase(it);
    }
  }
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a, b);
  Polynomial r(a.ring());
  if (a.is_zero() || b.is_zero()) return r;
  const Polynomial& small = a.term_count() <= b.term_count() ? a : b;
  const Polynomial& big = a.term_count() <= b.term_count() ? b : a;
  for (const auto& [m, c] : small.terms()) r.add_scaled(big, c, m);
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& other) const {
  return ring_ == other.ring_ && terms_ == other.terms_;
}

Polynomial Polynomial::embed(const Ring& target) const {
  if (ring_ == target) return *this;
  std::vector<std::optional<size_t>> map(ring_.size());
  for (size_t v = 0; v < ring_.size(); ++v) map[v] = target.index_of(ring_.name(v));
  Polynomial r(target);
  for (const auto& [m, c] : terms_) {
    Monomial nm(target.size());
    for (size_t v = 0; v < ring_.size(); ++v) {
      if (m[v] == 0) continue;
      if (!map[v]) {
        throw UnknownVariableError("cannot embed: variable '" + ring_.name(v) +
                                   "' missing from " + target.to_string());
      }
      nm[*map[v]] = m[v];
    }
    r.terms_.emplace(std::move(nm), c);
  }
  return r;
}

std::string Polynomial::to_string(const MonomialOrder& order) const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> sorted;
  sorted.reserve(terms_.size());
  for (const auto& t : terms_) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(), [&](auto* a, auto* b) {
    return order.less(b->first, a->first);
  });
  std::ostringstream out;
  bool first = true;
  for (const auto* term : sorted) {
    const Monomial& m = term->first;
    Rational c = term->second;
    if (first) {
      if (c < 0) {
        out << "-";
        c = -c;
      }
    } else {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    std::string mono;
    for (size_t v = 0; v < ring_.size(); ++v) {
      if (m[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_.name(v);
      if (m[v] > 1) mono += "^" + std::to_string(m[v]);
    }
    if (mono.empty()) {
      out << rlfgen::to_string(c);
    } else if (c == 1) {
      out << mono;
    } else {
      out << rlfgen::to_string(c) << "*" << mono;
    }
  }
  return out.str();
}

std::string Polynomial::to_string() const {
  return to_string(MonomialOrder::lex(ring_.size()));
}

Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }

Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial partial_derivative(const Polynomial& p, size_t var) {
  if (var >= p.ring().size()) throw UnknownVariableError("variable index out of range");
  Polynomial::TermMap terms;
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    Monomial dm(m);
    dm[var] -= 1;
    terms.emplace(std::move(dm), c * m[var]);
  }
  return Polynomial(p.ring(), std::move(terms));
}

Polynomial partial_derivative(const Polynomial& p, std::string_view var) {
  return partial_derivative(p, p.ring().require(var));
}

namespace {

Rational power(const Rational& base, uint32_t e) {
  Rational r(1);
  Rational b(base);
  while (e) {
    if (e & 1U) r *= b;
    e >>= 1U;
    if (e) b *= b;
  }
  return r;
}

}  // namespace

Rational evaluate(const Polynomial& p, const std::vector<Rational>& values) {
  if (values.size() != p.ring().size()) {
    throw Error("evaluate: expected " + std::to_string(p.ring().size()) + " values");
  }
  Rational sum(0);
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (size_t v = 0; v < m.arity(); ++v) {
      if (m[v]) t *= power(values[v], m[v]);
    }
    sum += t;
  }
  return sum;
}

Rational evaluate(const Polynomial& p, const Assignment& point) {
  std::vector<Rational> values(p.ring().size());
  for (size_t v = 0; v < p.ring().size(); ++v) {
    auto it = point.find(p.ring().name(v));
    if (it == point.end()) {
      throw UnknownVariableError("unbound variable '" + p.ring().name(v) + "'");
    }
    values[v] = it->second;
  }
  return evaluate(p, values);
}

Polynomial substitute_keep_ring(const Polynomial& p, const Assignment& bindings) {
  std::vector<std::optional<Rational>> vals(p.ring().size());
  for (const auto& [name, value] : bindings) vals[p.ring().require(name)] = value;
  Polynomial::TermMap terms;
  for (const auto& [m, c] : p.terms()) {
    Rational coef = c;
    Monomial nm(m);
    for (size_t v = 0; v < m.arity(); ++v) {
      if (vals[v] && m[v]) {
        coef *= power(*vals[v], m[v]);
        nm[v] = 0;
      }
    }
    if (coef == 0) continue;
    auto [it, inserted] = terms.try_emplace(std::move(nm), coef);
    if (!inserted) {
      it->second += coef;
      if (it->second == 0) terms.erase(it);
    }
  }
  return Polynomial(p.ring(), std::move(terms));
}

Polynomial substitute(const Polynomial& p, const Assignment& bindings) {
  Polynomial kept = substitute_keep_ring(p, bindings);
  std::vector<std::string> remaining;
  for (const auto& n : p.ring().names()) {
    if (!bindings.count(n)) remaining.push_back(n);
  }
  return kept.embed(Ring(std::move(remaining)));
}

Polynomial compose(const Polynomial& p, size_t var, const Polynomial& value) {
  require_same_ring(p, value);
  const int d = p.degree_in(var);
  if (d <= 0) return p;
  std::vector<Polynomial> powers;
  powers.push_back(Polynomial::constant(p.ring(), 1));
  for (int k = 1; k <= d; ++k) powers.push_back(powers.back() * value);
  Polynomial r(p.ring());
  for (const auto& [m, c] : p.terms()) {
    Monomial rest(m);
    rest[var] = 0;
    r.add_scaled(powers[m[var]], c, rest);
  }
  return r;
}

namespace {

// Index of the first divisor whose leading monomial divides `m`.
std::optional<size_t> find_divisor(const Monomial& m,
                                   const std::vector<const Monomial*>& leads) {
  for (size_t i = 0; i < leads.size(); ++i) {
    if (leads[i] && leads[i]->divides(m)) return i;
  }
  return std::nullopt;
}

}  // namespace

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& divisors,
                       const MonomialOrder& order) {
  std::vector<const Monomial*> leads;
  std::vector<Rational> lcs;
  for (const auto& d : divisors) {
    require_same_ring(p, d);
    leads.push_back(d.is_zero() ? nullptr : &d.leading_monomial(order));
    lcs.push_back(d.is_zero() ? Rational(0) : d.leading_coefficient(order));
  }
  Polynomial work = p;
  Polynomial rem(p.ring());
  Polynomial::TermMap rem_terms;
  while (!work.is_zero()) {
    const Monomial lm = work.leading_monomial(order);
    const Rational lc = work.leading_coefficient(order);
    if (auto i = find_divisor(lm, leads)) {
      work.add_scaled(divisors[*i], -lc / lcs[*i], lm / *leads[*i]);
    } else {
      rem_terms.emplace(lm, lc);
      work.add_scaled(Polynomial::monomial(p.ring(), lm, 1), -lc,
                      Monomial(p.ring().size()));
    }
  }
  return Polynomial(p.ring(), std::move(rem_terms));
}

DivisionResult reduce(const Polynomial& p, const std::vector<Polynomial>& divisors,
                      const MonomialOrder& order) {
  std::vector<const Monomial*> leads;
  std::vector<Rational> lcs;
  for (const auto& d : divisors) {
    require_same_ring(p, d);
    leads.push_back(d.is_zero() ? nullptr : &d.leading_monomial(order));
    lcs.push_back(d.is_zero() ? Rational(0) : d.leading_coefficient(order));
  }
  DivisionResult result;
  result.quotients.assign(divisors.size(), Polynomial(p.ring()));
  result.remainder = Polynomial(p.ring());
  Polynomial work = p;
  while (!work.is_zero()) {
    const Monomial lm = work.leading_monomial(order);
    const Rational lc = work.leading_coefficient(order);
    if (auto i = find_divisor(lm, leads)) {
      const Monomial shift = lm / *leads[*i];
      const Rational factor = lc / lcs[*i];
      result.quotients[*i] += Polynomial::monomial(p.ring(), shift, factor);
      work.add_scaled(divisors[*i], -factor, shift);
    } else {
      Polynomial lt = Polynomial::monomial(p.ring(), lm, lc);
      result.remainder += lt;
      work -= lt;
    }
  }
  Polynomial check = result.remainder;
  for (size_t i = 0; i < divisors.size(); ++i) {
    check += result.quotients[i] * divisors[i];
  }
  if (check != p) throw std::logic_error("division identity violated");
  return result;
}

void check_limits(const Polynomial& p, const PolynomialLimits& limits,
                  std::string_view what) {
  if (p.ring().size() > limits.max_variables) {
    throw LimitExceededError(std::string(what) + ": " + std::to_string(p.ring().size()) +
                             " variables exceed the limit of " +
                             std::to_string(limits.max_variables));
  }
  if (p.total_degree() > limits.max_total_degree) {
    throw LimitExceededError(std::string(what) + ": total degree " +
                             std::to_string(p.total_degree()) + " exceeds the limit of " +
                             std::to_string(limits.max_total_degree));
  }
}

}  // namespace rlfgen
