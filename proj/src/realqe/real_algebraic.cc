#include "rlfgen/real_algebraic.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "rlfgen/algebra.h"

namespace rlfgen {

Deadline Deadline::after(std::chrono::milliseconds budget) {
  Deadline d;
  d.at_ = std::chrono::steady_clock::now() + budget;
  return d;
}

bool Deadline::expired() const { return at_ && std::chrono::steady_clock::now() >= *at_; }

void Deadline::check() const {
  if (expired()) throw TimeoutError("time budget exhausted");
}

namespace {

Rational rational_power(const Rational& base, unsigned e) {
  Rational r(1);
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

Rational abs_max(const Interval& a) { return std::max(abs(a.lo), abs(a.hi)); }

Polynomial substitute_values(const Polynomial& p,
                             const std::vector<std::optional<Rational>>& values) {
  Polynomial::TermMap terms;
  for (const auto& [m, c] : p.terms()) {
    Rational coef = c;
    Monomial nm(m);
    for (size_t v = 0; v < values.size() && v < m.arity(); ++v) {
      if (values[v] && m[v]) {
        coef *= rational_power(*values[v], m[v]);
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

Polynomial substitute_one(const Polynomial& p, size_t var, const Rational& x) {
  std::vector<std::optional<Rational>> values(var + 1);
  values[var] = x;
  return substitute_values(p, values);
}

Polynomial strip_leading(const Polynomial& p, size_t var) {
  const int d = p.degree_in(var);
  Polynomial r = p;
  Monomial shift(p.ring().size());
  shift[var] = static_cast<uint32_t>(d);
  r.add_scaled(leading_coefficient_in(p, var), -1, shift);
  return r;
}

bool strictly_inside(const Rational& x, const Coordinate& c) {
  return c.lo() < x && x < c.hi();
}

}  // namespace

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator*(const Interval& a, const Interval& b) {
  const Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval pow(const Interval& a, unsigned k) {
  if (k == 0) return {Rational(1), Rational(1)};
  const Rational lo = rational_power(a.lo, k);
  const Rational hi = rational_power(a.hi, k);
  if (k % 2 == 1) return {lo, hi};
  if (a.lo <= 0 && a.hi >= 0) return {Rational(0), std::max(lo, hi)};
  return {std::min(lo, hi), std::max(lo, hi)};
}

Coordinate Coordinate::rational(Rational value) {
  Coordinate c;
  c.lo_ = value;
  c.hi_ = std::move(value);
  return c;
}

Coordinate Coordinate::algebraic(Polynomial defining, Rational lo, Rational hi, int sign_at_hi) {
  if (!(lo < hi)) throw Error("isolating interval must satisfy lo < hi");
  if (sign_at_hi == 0) throw Error("defining polynomial vanishes at the interval end");
  Coordinate c;
  c.defining_ = std::move(defining);
  c.lo_ = std::move(lo);
  c.hi_ = std::move(hi);
  c.sign_hi_ = sign_at_hi > 0 ? 1 : -1;
  return c;
}

const Rational& Coordinate::value() const {
  if (defining_) throw std::logic_error("value() of an irrational coordinate");
  return lo_;
}

const Polynomial& Coordinate::defining_polynomial() const {
  if (!defining_) throw std::logic_error("defining_polynomial() of a rational coordinate");
  return *defining_;
}

double Coordinate::approximate() const {
  if (!defining_) return lo_.get_d();
  return Rational((lo_ + hi_) / 2).get_d();
}

SamplePoint::SamplePoint(Ring ring, const Deadline* deadline)
    : ring_(std::move(ring)), deadline_(deadline) {}

bool SamplePoint::all_rational() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const auto& c) { return c->is_rational(); });
}

std::vector<Rational> SamplePoint::rational_values() const {
  std::vector<Rational> out;
  for (const auto& c : coords_) out.push_back(c->value());
  return out;
}

SamplePoint SamplePoint::extended(const Coordinate& c) const {
  if (size() >= ring_.size()) throw std::logic_error("sample point already complete");
  SamplePoint p = *this;
  p.coords_.push_back(std::make_shared<Coordinate>(c));
  return p;
}

void SamplePoint::check_deadline() const {
  if (deadline_) deadline_->check();
}

void SamplePoint::require_assigned(const Polynomial& p, size_t limit) const {
  if (!(p.ring() == ring_)) throw RingMismatchError("polynomial ring differs from the point's ring");
  for (size_t v : p.support()) {
    if (v >= limit) {
      throw std::logic_error("variable '" + ring_.name(v) + "' is not assigned at this level");
    }
  }
}

Polynomial SamplePoint::substitute_rationals(const Polynomial& p) const {
  std::vector<std::optional<Rational>> values(coords_.size());
  bool any = false;
  for (size_t v = 0; v < coords_.size(); ++v) {
    if (coords_[v]->is_rational() && p.degree_in(v) > 0) {
      values[v] = coords_[v]->value();
      any = true;
    }
  }
  return any ? substitute_values(p, values) : p;
}

Interval SamplePoint::enclose(const Polynomial& p) const {
  Interval acc{Rational(0), Rational(0)};
  for (const auto& [m, c] : p.terms()) {
    Interval t{c, c};
    for (size_t v = 0; v < m.arity(); ++v) {
      if (m[v]) t = t * pow(coords_[v]->enclosure(), m[v]);
    }
    acc = acc + t;
  }
  return acc;
}

int SamplePoint::sign(const Polynomial& p) const {
  require_assigned(p, size());
  Polynomial q = substitute_rationals(p);
  bool zero_excluded = false;
  for (int round = 0;; ++round) {
    if (q.is_constant()) return rlfgen::sign(q.constant_value());
    check_deadline();
    const Interval e = enclose(q);
    if (e.lo > 0) return 1;
    if (e.hi < 0) return -1;
    if (!zero_excluded && round >= 2) {
      if (is_zero(q)) return 0;
      zero_excluded = true;
    }
    if (round > 20000) throw std::logic_error("sign determination did not converge");
    for (size_t v : q.support()) refine(v);
    q = substitute_rationals(q);
  }
}

bool SamplePoint::is_zero(const Polynomial& p) const {
  require_assigned(p, size());
  Polynomial q = substitute_rationals(p);
  if (q.is_constant()) return q.is_zero();
  const Interval e = enclose(q);
  if (e.lo > 0 || e.hi < 0) return false;
  const size_t k = *main_variable(q);
  q = trim(reduce_tower(q, k, nullptr), k);
  if (q.is_zero()) return true;
  if (q.degree_in(k) <= 0 || coords_[k]->is_rational()) return is_zero(q);
  const Polynomial h = gcd_at(q, coords_[k]->defining_polynomial(), k);
  if (h.degree_in(k) <= 0) return false;
  const Coordinate c = *coords_[k];
  if (c.is_rational()) return is_zero(q);
  const int lo = sign_at_value(h, k, c.lo());
  const int hi = sign_at_value(h, k, c.hi());
  return lo * hi < 0;
}

int SamplePoint::sign_at_value(const Polynomial& p, size_t var, const Rational& x) const {
  return sign(substitute_one(p, var, x));
}

void SamplePoint::refine_candidate(Coordinate& c, size_t var) const {
  if (c.is_rational()) return;
  const Rational mid = (c.lo_ + c.hi_) / 2;
  const int s = sign_at_value(*c.defining_, var, mid);
  if (s == 0) {
    c = Coordinate::rational(mid);
  } else if (s == c.sign_hi_) {
    c.hi_ = mid;
  } else {
    c.lo_ = mid;
  }
}

void SamplePoint::refine(size_t var) const { refine_candidate(*coords_.at(var), var); }

void SamplePoint::refine_to(size_t var, const Rational& width) const {
  Coordinate& c = *coords_.at(var);
  while (!c.is_rational() && c.hi_ - c.lo_ >= width) {
    check_deadline();
    refine_candidate(c, var);
  }
}

Polynomial SamplePoint::trim(Polynomial p, size_t var) const {
  while (!p.is_zero()) {
    if (p.degree_in(var) <= 0) return is_zero(p) ? Polynomial(p.ring()) : p;
    if (!is_zero(leading_coefficient_in(p, var))) return p;
    p = strip_leading(p, var);
  }
  return p;
}

Polynomial SamplePoint::reduce_tower(const Polynomial& p, size_t var, int* sign_factor) const {
  Polynomial r = substitute_rationals(p);
  for (size_t i = std::min(var, coords_.size()); i-- > 0;) {
    const Coordinate& c = *coords_[i];
    if (c.is_rational()) continue;
    const Polynomial& d = c.defining_polynomial();
    if (r.degree_in(i) < d.degree_in(i)) continue;
    PseudoDivision pd = pseudo_divide(r, d, i);
    if (sign_factor && pd.exponent % 2 == 1 && sign(leading_coefficient_in(d, i)) < 0) {
      *sign_factor = -*sign_factor;
    }
    r = std::move(pd.remainder);
  }
  return integer_primitive(r);
}

Polynomial SamplePoint::reduce_signed(const Polynomial& p, size_t var) const {
  int s = 1;
  Polynomial r = reduce_tower(p, var, &s);
  return s < 0 ? -r : r;
}

Polynomial SamplePoint::gcd_at(Polynomial a, Polynomial b, size_t var) const {
  a = trim(reduce_tower(a, var, nullptr), var);
  b = trim(reduce_tower(b, var, nullptr), var);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  while (true) {
    check_deadline();
    if (b.degree_in(var) <= 0) return Polynomial::constant(ring_, 1);
    Polynomial r = trim(reduce_tower(pseudo_remainder(a, b, var), var, nullptr), var);
    if (r.is_zero()) return b;
    a = std::move(b);
    b = std::move(r);
  }
}

Polynomial SamplePoint::squarefree_at(const Polynomial& p, size_t var) const {
  const Polynomial g = gcd_at(p, partial_derivative(p, var), var);
  if (g.degree_in(var) <= 0) return p;
  return trim(reduce_tower(pseudo_divide(p, g, var).quotient, var, nullptr), var);
}

std::vector<Polynomial> SamplePoint::sturm_sequence(const Polynomial& p) const {
  const size_t j = size();
  require_assigned(p, j + 1);
  std::vector<Polynomial> seq;
  Polynomial a = trim(reduce_signed(p, j), j);
  if (a.is_zero()) return seq;
  seq.push_back(a);
  if (a.degree_in(j) <= 0) return seq;
  Polynomial b = trim(reduce_signed(partial_derivative(a, j), j), j);
  while (!b.is_zero()) {
    check_deadline();
    seq.push_back(b);
    if (b.degree_in(j) <= 0) break;
    PseudoDivision pd = pseudo_divide(a, b, j);
    Polynomial r = std::move(pd.remainder);
    if (pd.exponent % 2 == 1 && sign(leading_coefficient_in(b, j)) < 0) r = -r;
    r = -trim(reduce_signed(r, j), j);
    a = std::move(b);
    b = std::move(r);
  }
  return seq;
}

int SamplePoint::sign_variations(const std::vector<Polynomial>& sequence, const Rational& x) const {
  int count = 0;
  int last = 0;
  for (const auto& s : sequence) {
    const int v = sign_at_value(s, size(), x);
    if (v == 0) continue;
    if (last != 0 && v != last) ++count;
    last = v;
  }
  return count;
}

std::vector<Coordinate> SamplePoint::isolate_squarefree(const Polynomial& q) const {
  const size_t j = size();
  const auto seq = sturm_sequence(q);
  const auto coeffs = coefficients_in(q, j);
  Polynomial lc = coeffs.back();
  Interval lci = enclose(lc);
  while (lci.lo <= 0 && lci.hi >= 0) {
    check_deadline();
    for (size_t v : lc.support()) refine(v);
    lc = substitute_rationals(lc);
    lci = enclose(lc);
  }
  const Rational lc_min = std::min(abs(lci.lo), abs(lci.hi));
  Rational m(0);
  for (size_t i = 0; i + 1 < coeffs.size(); ++i) {
    m = std::max(m, abs_max(enclose(substitute_rationals(coeffs[i]))));
  }
  const Rational bound(ceil(Rational(1 + m / lc_min)) + 1);

  struct Pending {
    Rational lo, hi;
    int vlo, vhi;
  };
  std::vector<Pending> stack{{-bound, bound, sign_variations(seq, -bound), sign_variations(seq, bound)}};
  std::vector<Coordinate> roots;
  while (!stack.empty()) {
    check_deadline();
    Pending cur = stack.back();
    stack.pop_back();
    const int n = cur.vlo - cur.vhi;
    if (n <= 0) continue;
    if (n == 1) {
      roots.push_back(Coordinate::algebraic(q, cur.lo, cur.hi, sign_at_value(q, j, cur.hi)));
      continue;
    }
    Rational split = (cur.lo + cur.hi) / 2;
    for (unsigned den = 3; sign_at_value(q, j, split) == 0; ++den) {
      split = cur.lo + (cur.hi - cur.lo) / den;
    }
    const int vm = sign_variations(seq, split);
    stack.push_back({split, cur.hi, vm, cur.vhi});
    stack.push_back({cur.lo, split, cur.vlo, vm});
  }
  for (auto& r : roots) detect_rational(r, q);
  return roots;
}

void SamplePoint::detect_rational(Coordinate& c, const Polynomial& q) const {
  const size_t j = size();
  const auto support = q.support();
  const bool over_q = support.size() == 1 && support.front() == j;
  Rational width;
  if (over_q) {
    const Polynomial prim = integer_primitive(q);
    const Integer l = abs(leading_coefficient_in(prim, j).constant_value().get_num());
    width = Rational(1) / Rational(l * l);
  } else {
    width = Rational(1, 1024);
  }
  while (!c.is_rational() && c.hi_ - c.lo_ >= width) {
    check_deadline();
    refine_candidate(c, j);
  }
  if (c.is_rational()) return;
  const Rational candidate = simplest_between(c.lo_, c.hi_);
  if (sign_at_value(q, j, candidate) == 0) c = Coordinate::rational(candidate);
}

bool SamplePoint::separate(Coordinate& a, Coordinate& b) const {
  const size_t j = size();
  for (int round = 0;; ++round) {
    check_deadline();
    if (a.is_rational() && b.is_rational()) return a.value() == b.value();
    if (a.is_rational() || b.is_rational()) {
      const Coordinate& r = a.is_rational() ? a : b;
      Coordinate& alg = a.is_rational() ? b : a;
      if (!strictly_inside(r.value(), alg)) return false;
      if (sign_at_value(alg.defining_polynomial(), j, r.value()) == 0) return true;
      refine_candidate(alg, j);
      continue;
    }
    if (a.hi_ <= b.lo_ || b.hi_ <= a.lo_) return false;
    if (round == 4 && extended(a).is_zero(b.defining_polynomial())) return true;
    refine_candidate(a, j);
    refine_candidate(b, j);
  }
}

void SamplePoint::merge_roots(std::vector<Coordinate>& roots) const {
  std::vector<Coordinate> distinct;
  for (auto& r : roots) {
    bool duplicate = false;
    for (auto& d : distinct) {
      if (separate(d, r)) {
        if (r.is_rational() && !d.is_rational()) d = r;
        duplicate = true;
        break;
      }
    }
    if (!duplicate) distinct.push_back(std::move(r));
  }
  std::sort(distinct.begin(), distinct.end(), [](const Coordinate& x, const Coordinate& y) {
    if (x.is_rational() && y.is_rational()) return x.value() < y.value();
    return x.hi() <= y.lo();
  });
  roots = std::move(distinct);
}

RootLift SamplePoint::isolate_roots(const std::vector<Polynomial>& polys) const {
  const size_t j = size();
  if (j >= ring_.size()) throw std::logic_error("no variable left to lift");
  RootLift out;
  std::vector<Coordinate> all;
  for (size_t i = 0; i < polys.size(); ++i) {
    check_deadline();
    require_assigned(polys[i], j + 1);
    Polynomial q = trim(reduce_tower(polys[i], j, nullptr), j);
    if (q.is_zero()) {
      out.nullified.push_back(i);
      continue;
    }
    if (q.degree_in(j) <= 0) continue;
    for (auto& r : isolate_squarefree(squarefree_at(q, j))) all.push_back(std::move(r));
  }
  merge_roots(all);
  out.roots = std::move(all);
  return out;
}

std::vector<CellSample> SamplePoint::cylinder_samples(std::vector<Coordinate> roots) const {
  const size_t j = size();
  std::vector<CellSample> out;
  if (roots.empty()) {
    out.push_back({Coordinate::rational(Rational(0)), false});
    return out;
  }
  const Coordinate& first = roots.front();
  Rational below;
  if (first.is_rational()) {
    below = first.value() > 0 ? Rational(0) : Rational(ceil(first.value()) - 1);
  } else {
    below = first.lo() >= 0 ? Rational(0) : Rational(floor(first.lo()));
  }
  out.push_back({Coordinate::rational(below), false});
  for (size_t i = 0; i < roots.size(); ++i) {
    out.push_back({roots[i], true});
    if (i + 1 == roots.size()) break;
    Coordinate& a = roots[i];
    Coordinate& b = roots[i + 1];
    while (true) {
      check_deadline();
      const Rational lower = a.is_rational() ? a.value() : a.hi();
      const Rational upper = b.is_rational() ? b.value() : b.lo();
      if (lower < upper) {
        out.push_back({Coordinate::rational(simplest_between(lower, upper)), false});
        break;
      }
      if (lower == upper && !a.is_rational() && !b.is_rational()) {
        out.push_back({Coordinate::rational(lower), false});
        break;
      }
      refine_candidate(a, j);
      refine_candidate(b, j);
    }
    out[out.size() - 2].coordinate = a;
  }
  const Coordinate& last = roots.back();
  Rational above;
  if (last.is_rational()) {
    above = last.value() < 0 ? Rational(0) : Rational(floor(last.value()) + 1);
  } else {
    above = last.hi() <= 0 ? Rational(0) : Rational(ceil(last.hi()));
  }
  out.push_back({Coordinate::rational(above), false});
  return out;
}

std::string SamplePoint::to_string() const {
  std::ostringstream os;
  os << '(';
  for (size_t v = 0; v < coords_.size(); ++v) {
    if (v) os << ", ";
    os << ring_.name(v);
    if (coords_[v]->is_rational()) {
      os << " = " << rlfgen::to_string(coords_[v]->value());
    } else {
      os << " ~ " << coords_[v]->approximate();
    }
  }
  os << ')';
  return os.str();
}

namespace {

// Rewrites a polynomial in at most one variable over the single-variable ring.
Polynomial to_single_variable(const Polynomial& p, const Ring& target) {
  const auto support = p.support();
  if (support.size() > 1) throw Error("expected a univariate polynomial: " + p.to_string());
  Polynomial r(target);
  for (const auto& [m, c] : p.terms()) {
    Monomial nm(1);
    if (!support.empty()) nm[0] = m[support.front()];
    r += Polynomial::monomial(target, nm, c);
  }
  return r;
}

Ring single_ring(const Polynomial& p) {
  const auto support = p.support();
  if (support.size() > 1) throw Error("expected a univariate polynomial: " + p.to_string());
  if (!support.empty()) return Ring({p.ring().name(support.front())});
  return Ring({p.ring().size() ? p.ring().name(0) : std::string("x")});
}

}  // namespace

AlgebraicNumber::AlgebraicNumber(const Rational& value)
    : point_(SamplePoint(Ring({"x"})).extended(Coordinate::rational(value))) {}

AlgebraicNumber::AlgebraicNumber(const Polynomial& p, const Rational& lo, const Rational& hi)
    : point_(Ring({"x"})) {
  const Ring ring = single_ring(p);
  const Polynomial q = squarefree_part_in(to_single_variable(p, ring), 0);
  if (!(lo < hi)) throw Error("isolating interval must satisfy lo < hi");
  const SamplePoint base(ring);
  const auto seq = base.sturm_sequence(q);
  if (base.sign(substitute_one(q, 0, lo)) == 0 || base.sign(substitute_one(q, 0, hi)) == 0) {
    throw Error("polynomial vanishes at an interval end");
  }
  if (base.sign_variations(seq, lo) - base.sign_variations(seq, hi) != 1) {
    throw Error("interval does not isolate exactly one root");
  }
  point_ = base.extended(Coordinate::algebraic(q, lo, hi, base.sign(substitute_one(q, 0, hi))));
}

int AlgebraicNumber::sign_of(const Polynomial& q) const {
  return point_.sign(to_single_variable(q, point_.ring()));
}

int AlgebraicNumber::compare(const Rational& x) const {
  while (true) {
    const Coordinate& c = coordinate();
    if (c.is_rational()) return rlfgen::sign(Rational(c.value() - x));
    if (x <= c.lo()) return 1;
    if (x >= c.hi()) return -1;
    const Polynomial d = substitute_one(c.defining_polynomial(), 0, x);
    if (d.constant_value() == 0) return 0;
    point_.refine(0);
  }
}

std::vector<AlgebraicNumber> real_roots(const Polynomial& p) {
  if (p.is_zero()) throw Error("real roots of the zero polynomial");
  const Ring ring = single_ring(p);
  const SamplePoint base(ring);
  std::vector<AlgebraicNumber> out;
  for (const auto& r : base.isolate_roots({to_single_variable(p, ring)}).roots) {
    out.push_back(AlgebraicNumber(base.extended(r)));
  }
  return out;
}

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  const Ring ring = single_ring(p);
  return SamplePoint(ring).sturm_sequence(to_single_variable(p, ring));
}

int count_real_roots(const Polynomial& p, const Rational& lo, const Rational& hi) {
  int n = 0;
  for (const auto& r : real_roots(p)) {
    if (r.compare(lo) > 0 && r.compare(hi) <= 0) ++n;
  }
  return n;
}

}  // namespace rlfgen
