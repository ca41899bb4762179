#include "rlfgen/algebra.h"

#include <algorithm>

namespace rlfgen {

std::optional<size_t> main_variable(const Polynomial& p) {
  for (size_t v = p.ring().size(); v-- > 0;) {
    if (p.degree_in(v) > 0) return v;
  }
  return std::nullopt;
}

std::vector<Polynomial> coefficients_in(const Polynomial& p, size_t var) {
  const int d = std::max(p.degree_in(var), 0);
  std::vector<Polynomial::TermMap> parts(static_cast<size_t>(d) + 1);
  for (const auto& [m, c] : p.terms()) {
    Monomial rest(m);
    const uint32_t e = rest[var];
    rest[var] = 0;
    parts[e].emplace(std::move(rest), c);
  }
  std::vector<Polynomial> out;
  out.reserve(parts.size());
  for (auto& t : parts) out.emplace_back(p.ring(), std::move(t));
  return out;
}

Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, size_t var) {
  if (coeffs.empty()) return Polynomial();
  Polynomial r(coeffs.front().ring());
  Monomial shift(r.ring().size());
  for (size_t k = 0; k < coeffs.size(); ++k) {
    shift[var] = static_cast<uint32_t>(k);
    r.add_scaled(coeffs[k], 1, shift);
  }
  return r;
}

Polynomial leading_coefficient_in(const Polynomial& p, size_t var) {
  if (p.is_zero()) return p;
  return coefficients_in(p, var).back();
}

std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& d) {
  if (d.is_zero()) throw Error("division by the zero polynomial");
  const MonomialOrder order = MonomialOrder::storage(p.ring().size());
  if (d.is_constant()) return p * (Rational(1) / d.constant_value());
  const Monomial& lm = d.leading_monomial(order);
  const Rational lc = d.leading_coefficient(order);
  Polynomial work = p;
  Polynomial::TermMap quotient;
  while (!work.is_zero()) {
    const Monomial wm = work.leading_monomial(order);
    if (!lm.divides(wm)) return std::nullopt;
    const Rational factor = work.leading_coefficient(order) / lc;
    const Monomial shift = wm / lm;
    work.add_scaled(d, -factor, shift);
    quotient.emplace(shift, factor);
  }
  return Polynomial(p.ring(), std::move(quotient));
}

Polynomial exact_quotient(const Polynomial& p, const Polynomial& d) {
  auto q = divide_exact(p, d);
  if (!q) throw std::logic_error("exact_quotient: divisor does not divide");
  return std::move(*q);
}

Polynomial pseudo_remainder(const Polynomial& f, const Polynomial& g, size_t var) {
  const int dg = g.degree_in(var);
  if (dg < 0) throw Error("pseudo_remainder by zero");
  const Polynomial lg = leading_coefficient_in(g, var);
  Polynomial r = f;
  Monomial shift(f.ring().size());
  int df = r.degree_in(var);
  while (!r.is_zero() && df >= dg) {
    const Polynomial lr = leading_coefficient_in(r, var);
    shift[var] = static_cast<uint32_t>(df - dg);
    Polynomial next = r * lg;
    next.add_scaled(lr * g, -1, shift);
    r = std::move(next);
    df = r.degree_in(var);
  }
  return r;
}

PseudoDivision pseudo_divide(const Polynomial& f, const Polynomial& g, size_t var) {
  const int dg = g.degree_in(var);
  if (dg < 0) throw Error("pseudo_divide by zero");
  const Polynomial lg = leading_coefficient_in(g, var);
  PseudoDivision out{Polynomial(f.ring()), f, 0};
  const int df = f.degree_in(var);
  const unsigned target = df >= dg ? static_cast<unsigned>(df - dg + 1) : 0;
  Monomial shift(f.ring().size());
  int dr = df;
  while (!out.remainder.is_zero() && dr >= dg) {
    const Polynomial lr = leading_coefficient_in(out.remainder, var);
    shift[var] = static_cast<uint32_t>(dr - dg);
    out.quotient *= lg;
    out.quotient.add_scaled(lr, 1, shift);
    Polynomial next = out.remainder * lg;
    next.add_scaled(lr * g, -1, shift);
    out.remainder = std::move(next);
    ++out.exponent;
    dr = out.remainder.degree_in(var);
  }
  if (out.exponent < target) {
    const Polynomial scale = lg.pow(target - out.exponent);
    out.quotient *= scale;
    out.remainder *= scale;
    out.exponent = target;
  }
  return out;
}

Polynomial normalize_associate(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den_lcm(1);
  Integer num_gcd(0);
  for (const auto& [m, c] : p.terms()) {
    den_lcm = lcm(den_lcm, c.get_den());
    num_gcd = gcd(num_gcd, c.get_num());
  }
  Rational scale = make_rational(den_lcm, num_gcd);
  if (p.terms().rbegin()->second < 0) scale = -scale;
  return p * scale;
}

Polynomial integer_primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den_lcm(1);
  Integer num_gcd(0);
  for (const auto& [m, c] : p.terms()) {
    den_lcm = lcm(den_lcm, c.get_den());
    num_gcd = gcd(num_gcd, c.get_num());
  }
  return p * make_rational(den_lcm, abs(num_gcd));
}

bool certainly_coprime_in(const Polynomial& f, const Polynomial& g, size_t var) {
  constexpr uint64_t kPrime = 2147483647;
  const int df = f.degree_in(var);
  const int dg = g.degree_in(var);
  if (df <= 0 || dg <= 0) return false;
  auto mul = [](uint64_t a, uint64_t b) { return a * b % kPrime; };
  auto power = [&](uint64_t b, uint64_t e) {
    uint64_t r = 1;
    for (; e; e >>= 1, b = mul(b, b)) {
      if (e & 1) r = mul(r, b);
    }
    return r;
  };
  auto inverse = [&](uint64_t a) { return power(a, kPrime - 2); };
  auto reduce = [&](const Rational& c, uint64_t& out) {
    const uint64_t den = mpz_fdiv_ui(c.get_den_mpz_t(), kPrime);
    if (den == 0) return false;
    out = mul(mpz_fdiv_ui(c.get_num_mpz_t(), kPrime), inverse(den));
    return true;
  };
  using Dense = std::vector<uint64_t>;
  auto image = [&](const Polynomial& p, int degree, const std::vector<uint64_t>& at) -> std::optional<Dense> {
    Dense out(static_cast<size_t>(degree) + 1, 0);
    for (const auto& [m, c] : p.terms()) {
      uint64_t v = 0;
      if (!reduce(c, v)) return std::nullopt;
      for (size_t k = 0; k < at.size(); ++k) {
        if (k != var && m[k] > 0) v = mul(v, power(at[k], m[k]));
      }
      out[m[var]] = (out[m[var]] + v) % kPrime;
    }
    if (out.back() == 0) return std::nullopt;
    return out;
  };
  uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<uint64_t> at(f.ring().size());
    for (auto& v : at) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      v = (state >> 33) % kPrime;
    }
    auto a = image(f, df, at);
    auto b = image(g, dg, at);
    if (!a || !b) continue;
    while (!b->empty()) {
      const uint64_t lead_inv = inverse(b->back());
      while (a->size() >= b->size()) {
        const uint64_t q = mul(a->back(), lead_inv);
        const size_t shift = a->size() - b->size();
        for (size_t k = 0; k < b->size(); ++k) {
          (*a)[shift + k] = ((*a)[shift + k] + kPrime - mul(q, (*b)[k])) % kPrime;
        }
        while (!a->empty() && a->back() == 0) a->pop_back();
      }
      std::swap(*a, *b);
    }
    return a->size() == 1;
  }
  return false;
}

namespace {

bool univariate_in(const Polynomial& p, size_t var) {
  for (const auto& [m, c] : p.terms()) {
    for (size_t k = 0; k < p.ring().size(); ++k) {
      if (k != var && m[k] != 0) return false;
    }
  }
  return true;
}

/// Heuristic gcd of two univariate integer polynomials: the integer gcd of
/// their values at a large point, expanded back in that base, is accepted
/// only if it divides both inputs.
std::optional<Polynomial> heuristic_gcd(const Polynomial& f, const Polynomial& g, size_t var) {
  auto dense = [&](const Polynomial& p) {
    std::vector<Integer> out(static_cast<size_t>(p.degree_in(var)) + 1, 0);
    for (const auto& [m, c] : p.terms()) out[m[var]] = c.get_num();
    return out;
  };
  const auto a = dense(f);
  const auto b = dense(g);
  auto height = [](const std::vector<Integer>& v) {
    Integer h = 0;
    for (const auto& c : v) h = std::max<Integer>(h, abs(c));
    return h;
  };
  auto value_at = [](const std::vector<Integer>& v, const Integer& x) {
    Integer r = 0;
    for (size_t k = v.size(); k-- > 0;) r = r * x + v[k];
    return r;
  };
  Integer xi = 2 * std::min(height(a), height(b)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Integer h = gcd(value_at(a, xi), value_at(b, xi));
    Polynomial::TermMap terms;
    Monomial m(f.ring().size());
    for (uint32_t k = 0; h != 0; ++k) {
      Integer digit = h % xi;
      if (digit * 2 > xi) digit -= xi;
      if (digit * 2 < -xi) digit += xi;
      if (digit != 0) {
        m[var] = k;
        terms.emplace(m, Rational(digit));
      }
      h = (h - digit) / xi;
    }
    const Polynomial candidate = normalize_associate(Polynomial(f.ring(), std::move(terms)));
    if (!candidate.is_zero() && divide_exact(f, candidate) && divide_exact(g, candidate)) return candidate;
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

}  // namespace

namespace {

Polynomial one_like(const Polynomial& p) { return Polynomial::constant(p.ring(), 1); }

Polynomial gcd_impl(const Polynomial& f, const Polynomial& g);

Polynomial content_impl(const Polynomial& p, size_t var) {
  Polynomial c(p.ring());
  for (const auto& coeff : coefficients_in(p, var)) {
    if (coeff.is_zero()) continue;
    c = c.is_zero() ? normalize_associate(coeff) : gcd_impl(c, coeff);
    if (c.is_constant()) return one_like(p);
  }
  return c;
}

Polynomial gcd_impl(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero()) return normalize_associate(g);
  if (g.is_zero()) return normalize_associate(f);
  if (f.is_constant() || g.is_constant()) return one_like(f);
  const auto vf = main_variable(f);
  const auto vg = main_variable(g);
  const size_t v = std::max(*vf, *vg);
  if (f.degree_in(v) <= 0) return gcd_impl(f, content_impl(g, v));
  if (g.degree_in(v) <= 0) return gcd_impl(content_impl(f, v), g);
  const Polynomial cf = content_impl(f, v);
  const Polynomial cg = content_impl(g, v);
  const Polynomial c = gcd_impl(cf, cg);
  Polynomial a = normalize_associate(exact_quotient(f, cf));
  Polynomial b = normalize_associate(exact_quotient(g, cg));
  if (certainly_coprime_in(a, b, v)) return normalize_associate(c);
  if (univariate_in(a, v) && univariate_in(b, v)) {
    if (auto h = heuristic_gcd(a, b, v)) return normalize_associate(c * *h);
  }
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  // Primitive polynomial remainder sequence.
  while (true) {
    Polynomial r = pseudo_remainder(a, b, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      b = one_like(f);
      break;
    }
    a = std::move(b);
    b = normalize_associate(exact_quotient(r, content_impl(r, v)));
  }
  return normalize_associate(c * b);
}

}  // namespace

Polynomial gcd(const Polynomial& f, const Polynomial& g) {
  if (!(f.ring() == g.ring())) throw RingMismatchError("gcd: ring mismatch");
  return gcd_impl(f, g);
}

Polynomial content_in(const Polynomial& p, size_t var) {
  if (p.is_zero()) return p;
  return content_impl(p, var);
}

Polynomial primitive_part_in(const Polynomial& p, size_t var) {
  if (p.is_zero()) return p;
  return normalize_associate(exact_quotient(p, content_impl(p, var)));
}

Polynomial squarefree_part_in(const Polynomial& p, size_t var) {
  if (p.degree_in(var) <= 0) return normalize_associate(p);
  const Polynomial g = gcd(p, partial_derivative(p, var));
  return normalize_associate(exact_quotient(p, g));
}

Polynomial determinant(std::vector<std::vector<Polynomial>> m, const Ring& ring) {
  const size_t n = m.size();
  if (n == 0) return Polynomial::constant(ring, 1);
  int sign = 1;
  Polynomial prev = Polynomial::constant(ring, 1);
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t swap = k + 1;
      while (swap < n && m[swap][k].is_zero()) ++swap;
      if (swap == n) return Polynomial(ring);
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Polynomial t = m[i][j] * m[k][k];
        t -= m[i][k] * m[k][j];
        m[i][j] = exact_quotient(t, prev);
      }
    }
    prev = m[k][k];
  }
  Polynomial det = m[n - 1][n - 1];
  if (sign < 0) det = -det;
  return det;
}

Polynomial resultant(const Polynomial& f, const Polynomial& g, size_t var) {
  if (!(f.ring() == g.ring())) throw RingMismatchError("resultant: ring mismatch");
  const Ring& ring = f.ring();
  if (f.is_zero() || g.is_zero()) return Polynomial(ring);
  const int df = f.degree_in(var);
  const int dg = g.degree_in(var);
  if (df == 0 && dg == 0) return Polynomial::constant(ring, 1);
  if (df == 0) return f.pow(static_cast<unsigned>(dg));
  if (dg == 0) return g.pow(static_cast<unsigned>(df));
  const auto cf = coefficients_in(f, var);
  const auto cg = coefficients_in(g, var);
  const size_t n = static_cast<size_t>(df + dg);
  std::vector<std::vector<Polynomial>> s(n, std::vector<Polynomial>(n, Polynomial(ring)));
  for (int i = 0; i < dg; ++i) {
    for (int k = 0; k <= df; ++k) s[i][i + k] = cf[df - k];
  }
  for (int i = 0; i < df; ++i) {
    for (int k = 0; k <= dg; ++k) s[dg + i][i + k] = cg[dg - k];
  }
  return determinant(std::move(s), ring);
}

Polynomial discriminant(const Polynomial& f, size_t var) {
  if (f.degree_in(var) <= 1) return Polynomial::constant(f.ring(), 1);
  const Polynomial r = resultant(f, partial_derivative(f, var), var);
  return exact_quotient(r, leading_coefficient_in(f, var));
}

}  // namespace rlfgen
