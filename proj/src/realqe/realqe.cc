#include "rlfgen/realqe.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "rlfgen/cad.h"

namespace rlfgen {

std::string to_string(Truth t) {
  switch (t) {
    case Truth::kTrue: return "true";
    case Truth::kFalse: return "false";
    case Truth::kUnknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(Backend b) {
  switch (b) {
    case Backend::kCad: return "cad";
    case Backend::kSmt: return "smt";
    case Backend::kAuto: return "auto";
  }
  return "auto";
}

Backend parse_backend(const std::string& name) {
  if (name == "cad") return Backend::kCad;
  if (name == "smt") return Backend::kSmt;
  if (name == "auto") return Backend::kAuto;
  throw Error("unknown backend '" + name + "' (expected cad, smt or auto)");
}

std::string to_string(UnknownReason r) {
  switch (r) {
    case UnknownReason::kNone: return "none";
    case UnknownReason::kTimeout: return "timeout";
    case UnknownReason::kEnvelope: return "outside the exact backend envelope";
    case UnknownReason::kNotDefinable: return "not definable by projection factor signs";
    case UnknownReason::kSolverUnavailable: return "solver unavailable";
    case UnknownReason::kSolverUnknown: return "solver returned unknown";
  }
  return "unknown";
}

namespace {

size_t variable_count(const PrenexForm& p) {
  size_t n = free_variables(from_prenex(p)).size();
  for (const auto& b : p.prefix) n += b.variables.size();
  return n;
}

std::optional<std::string> envelope_violation(const PrenexForm& p, const QeConfig& config) {
  const size_t n = variable_count(p);
  if (n > config.max_variables) {
    return std::to_string(n) + " variables exceed the limit of " +
           std::to_string(config.max_variables);
  }
  const int d = max_degree(p.matrix);
  if (d > config.max_degree) {
    return "degree " + std::to_string(d) + " exceeds the limit of " +
           std::to_string(config.max_degree);
  }
  return std::nullopt;
}

bool is_constant(const Formula& f) {
  return f.kind() == Formula::Kind::kTrue || f.kind() == Formula::Kind::kFalse;
}

Verdict constant_verdict(const Formula& f) {
  Verdict v;
  v.truth = f.kind() == Formula::Kind::kTrue ? Truth::kTrue : Truth::kFalse;
  v.backend = "simplifier";
  return v;
}

Verdict cad_decide(const PrenexForm& p, const QeConfig& config) {
  if (is_constant(p.matrix)) return constant_verdict(p.matrix);
  Verdict v;
  v.backend = "cad";
  if (const auto why = envelope_violation(p, config)) {
    v.reason = UnknownReason::kEnvelope;
    v.detail = *why;
    return v;
  }
  const Deadline deadline = Deadline::after(config.budget);
  try {
    const Cad cad(layout(p), &deadline);
    v.truth = cad.decide() ? Truth::kTrue : Truth::kFalse;
  } catch (const TimeoutError&) {
    v.reason = UnknownReason::kTimeout;
    v.detail = "exceeded " + std::to_string(config.budget.count()) + " ms";
  }
  return v;
}

}  // namespace

Verdict decide_closed(const Formula& f, const QeConfig& config) {
  const auto free = free_variables(f);
  if (!free.empty()) throw Error("decide_closed: formula has free variable '" + *free.begin() + "'");
  const Formula s = simplify(f);
  if (is_constant(s)) return constant_verdict(s);
  switch (config.backend) {
    case Backend::kCad:
      return cad_decide(prenex(s), config);
    case Backend::kSmt:
      return smt_decide(s, config.solver, config.budget);
    case Backend::kAuto: {
      Verdict v = cad_decide(prenex(s), config);
      if (v.truth != Truth::kUnknown) return v;
      Verdict w = smt_decide(s, config.solver, config.budget);
      if (w.reason == UnknownReason::kSolverUnavailable) return v;
      return w;
    }
  }
  return {};
}

namespace {

struct Literal {
  size_t factor;
  Relation relation;
};

Relation relation_of(int sign) {
  return sign > 0 ? Relation::kGt : sign < 0 ? Relation::kLt : Relation::kEq;
}

bool satisfies(const std::vector<Literal>& lits, const std::vector<int>& signs) {
  return std::all_of(lits.begin(), lits.end(),
                     [&](const Literal& l) { return holds(l.relation, signs[l.factor]); });
}

bool hits_any(const std::vector<Literal>& lits, const std::set<std::vector<int>>& signs) {
  return std::any_of(signs.begin(), signs.end(),
                     [&](const std::vector<int>& s) { return satisfies(lits, s); });
}

std::vector<Relation> widenings(Relation r) {
  switch (r) {
    case Relation::kGt: return {Relation::kGe, Relation::kNe};
    case Relation::kLt: return {Relation::kLe, Relation::kNe};
    case Relation::kEq: return {Relation::kGe, Relation::kLe};
    default: return {};
  }
}

// Greedy description of the true sign vectors that avoids every false one.
std::vector<std::vector<Literal>> describe(const std::set<std::vector<int>>& trues,
                                          const std::set<std::vector<int>>& falses,
                                          const std::vector<Polynomial>& factors) {
  std::vector<size_t> order(factors.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const int da = factors[a].total_degree();
    const int db = factors[b].total_degree();
    return da != db ? da > db : a > b;
  });
  std::vector<std::vector<Literal>> terms;
  for (const auto& t : trues) {
    if (std::any_of(terms.begin(), terms.end(),
                    [&](const std::vector<Literal>& d) { return satisfies(d, t); })) {
      continue;
    }
    std::vector<Literal> lits;
    for (size_t i = 0; i < t.size(); ++i) lits.push_back({i, relation_of(t[i])});
    for (size_t idx : order) {
      auto pos = std::find_if(lits.begin(), lits.end(), [&](const Literal& l) { return l.factor == idx; });
      std::vector<Literal> without = lits;
      without.erase(without.begin() + (pos - lits.begin()));
      if (!hits_any(without, falses)) {
        lits = std::move(without);
        continue;
      }
      for (Relation alt : widenings(pos->relation)) {
        const Relation saved = pos->relation;
        pos->relation = alt;
        if (!hits_any(lits, falses)) break;
        pos->relation = saved;
      }
    }
    terms.push_back(std::move(lits));
  }
  // Drop terms whose true sign vectors are all covered by other terms.
  for (size_t i = terms.size(); i-- > 0;) {
    bool redundant = true;
    for (const auto& t : trues) {
      if (!satisfies(terms[i], t)) continue;
      bool other = false;
      for (size_t j = 0; j < terms.size() && !other; ++j) other = j != i && satisfies(terms[j], t);
      if (!other) {
        redundant = false;
        break;
      }
    }
    if (redundant) terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return terms;
}

QeResult unknown_result(UnknownReason reason, std::string detail) {
  QeResult r;
  r.kind = QeResult::Kind::kUnknown;
  r.reason = reason;
  r.detail = std::move(detail);
  return r;
}

QeResult formula_result(const Formula& f) {
  QeResult r;
  r.formula = simplify(f);
  r.kind = r.formula.kind() == Formula::Kind::kTrue    ? QeResult::Kind::kTrue
           : r.formula.kind() == Formula::Kind::kFalse ? QeResult::Kind::kFalse
                                                       : QeResult::Kind::kQuantifierFree;
  return r;
}

}  // namespace

QeResult qe(const Formula& f, const std::vector<std::string>& keep_free, const QeConfig& config) {
  for (const auto& v : free_variables(f)) {
    if (std::find(keep_free.begin(), keep_free.end(), v) == keep_free.end()) {
      throw Error("qe: free variable '" + v + "' is not kept");
    }
  }
  const PrenexForm p = prenex(f);
  if (p.prefix.empty()) return formula_result(p.matrix);
  if (const auto why = envelope_violation(p, config)) {
    return unknown_result(UnknownReason::kEnvelope, *why);
  }
  const Deadline deadline = Deadline::after(config.budget);
  try {
    const Cad cad(layout(p, keep_free), &deadline);
    if (cad.problem().free_count == 0) {
      return formula_result(cad.decide() ? Formula::truth() : Formula::falsity());
    }
    const auto cells = cad.free_cells();
    const auto factors = cad.free_factors();
    std::set<std::vector<int>> trues;
    std::set<std::vector<int>> falses;
    for (const auto& c : cells) (c.truth ? trues : falses).insert(c.signs);
    for (const auto& t : trues) {
      if (falses.count(t)) {
        return unknown_result(UnknownReason::kNotDefinable,
                              "true and false cells share a sign vector");
      }
    }
    const Ring out_ring(keep_free);
    std::vector<Formula> disjuncts;
    for (const auto& lits : describe(trues, falses, factors)) {
      std::vector<Formula> conj;
      for (const auto& l : lits) conj.push_back(Formula::atom(factors[l.factor].embed(out_ring), l.relation));
      disjuncts.push_back(Formula::conjunction(std::move(conj)));
    }
    return formula_result(Formula::disjunction(std::move(disjuncts)));
  } catch (const TimeoutError&) {
    return unknown_result(UnknownReason::kTimeout, "exceeded " + std::to_string(config.budget.count()) + " ms");
  }
}

Witness find_witness(const Formula& f, const QeConfig& config) {
  const PrenexForm p = prenex(f);
  std::vector<std::string> vars;
  for (const auto& v : free_variables(f)) vars.push_back(v);
  for (const auto& b : p.prefix) {
    if (b.universal) throw Error("find_witness expects a quantifier-free or existential formula");
  }
  Witness w;
  if (p.matrix.kind() == Formula::Kind::kFalse) {
    w.status = Witness::Status::kNone;
    return w;
  }
  if (p.matrix.kind() == Formula::Kind::kTrue) {
    w.status = Witness::Status::kFound;
    for (const auto& v : vars) w.point[v] = Rational(0);
    return w;
  }
  PrenexForm all{{{false, {}}}, p.matrix};
  for (const auto& v : free_variables(p.matrix)) all.prefix[0].variables.push_back(v);
  if (const auto why = envelope_violation(all, config)) {
    w.reason = UnknownReason::kEnvelope;
    w.detail = *why;
    return w;
  }
  const Deadline deadline = Deadline::after(config.budget);
  try {
    const Cad cad(layout(all), &deadline);
    const auto samples = cad.satisfying_samples(4096);
    if (samples.empty()) {
      w.status = Witness::Status::kNone;
      return w;
    }
    const SamplePoint* best = nullptr;
    std::pair<Integer, Integer> best_key;
    for (const auto& s : samples) {
      if (!s.all_rational()) continue;
      Integer max_den(1);
      Integer sum_num(0);
      for (const auto& q : s.rational_values()) {
        max_den = std::max(max_den, Integer(q.get_den()));
        sum_num += abs(q.get_num());
      }
      const auto key = std::make_pair(max_den, sum_num);
      if (!best || key < best_key) {
        best = &s;
        best_key = key;
      }
    }
    if (!best) {
      w.status = Witness::Status::kNonRationalizable;
      w.detail = "only irrational solutions, e.g. " + samples.front().to_string();
      return w;
    }
    w.status = Witness::Status::kFound;
    const auto values = best->rational_values();
    for (const auto& v : vars) w.point[v] = Rational(0);
    for (size_t i = 0; i < values.size(); ++i) w.point[best->ring().name(i)] = values[i];
  } catch (const TimeoutError&) {
    w.reason = UnknownReason::kTimeout;
    w.detail = "exceeded " + std::to_string(config.budget.count()) + " ms";
  }
  return w;
}

namespace {

void collect_atoms(const Formula& f, std::vector<Formula>& out) {
  if (f.is_atom()) {
    out.push_back(f);
    return;
  }
  if (!f.is_quantifier()) {
    for (const auto& c : f.children()) collect_atoms(c, out);
  }
}

// Radius R of an atom c*(x1^2 + ... + xn^2) - d < 0 over exactly `vars`.
std::optional<Rational> ball_radius(const Formula& body, const std::vector<std::string>& vars) {
  std::vector<Formula> atoms;
  collect_atoms(body, atoms);
  for (const auto& a : atoms) {
    if (a.relation() != Relation::kLt) continue;
    const Polynomial& p = a.polynomial();
    std::optional<Rational> scale;
    Rational constant(0);
    std::set<std::string> squares;
    bool ok = true;
    for (const auto& [m, c] : p.terms()) {
      if (m.is_one()) {
        constant = c;
        continue;
      }
      const auto support = Polynomial::monomial(p.ring(), m, 1).support();
      if (support.size() != 1 || m[support[0]] != 2 || (scale && *scale != c) || c <= 0) {
        ok = false;
        break;
      }
      scale = c;
      squares.insert(p.ring().name(support[0]));
    }
    if (!ok || !scale || constant >= 0 || squares != std::set<std::string>(vars.begin(), vars.end())) {
      continue;
    }
    const Rational r2 = -constant / *scale;
    const Integer num = sqrt(Integer(r2.get_num()));
    const Integer den = sqrt(Integer(r2.get_den()));
    if (num * num == r2.get_num() && den * den == r2.get_den()) return make_rational(num, den);
    return Rational(std::sqrt(r2.get_d()));
  }
  return std::nullopt;
}

}  // namespace

std::optional<Assignment> falsify_universal(const Formula& f, const FalsifierOptions& options) {
  if (!free_variables(f).empty()) {
    throw Error("falsify_universal needs all free variables instantiated");
  }
  const PrenexForm p = prenex(f);
  std::vector<std::string> vars;
  for (const auto& b : p.prefix) {
    if (!b.universal) throw Error("falsify_universal expects a universal formula");
    vars.insert(vars.end(), b.variables.begin(), b.variables.end());
  }
  const Formula& body = p.matrix;
  if (body.kind() == Formula::Kind::kTrue) return std::nullopt;
  Assignment point;
  for (const auto& v : vars) point[v] = Rational(0);
  auto refutes = [&](const Assignment& a) {
    if (evaluate(body, a)) return false;
    return simplify(substitute(body, a)).kind() == Formula::Kind::kFalse;
  };
  if (body.kind() == Formula::Kind::kFalse) return point;

  const Rational radius = options.radius ? *options.radius : ball_radius(body, vars).value_or(Rational(2));
  std::vector<Rational> grid{Rational(0)};
  const unsigned steps = std::max(1u, options.grid_steps);
  for (unsigned j = 1; j <= steps; ++j) {
    const Rational v = radius * j / steps;
    grid.push_back(v);
    grid.push_back(-v);
  }
  double grid_size = std::pow(static_cast<double>(grid.size()), static_cast<double>(vars.size()));
  if (grid_size <= 20000) {
    std::vector<size_t> index(vars.size(), 0);
    while (true) {
      for (size_t i = 0; i < vars.size(); ++i) point[vars[i]] = grid[index[i]];
      if (refutes(point)) return point;
      size_t i = 0;
      while (i < index.size() && ++index[i] == grid.size()) index[i++] = 0;
      if (i == index.size()) break;
    }
  }
  std::mt19937_64 rng(options.seed);
  for (size_t s = 0; s < options.random_samples; ++s) {
    for (const auto& v : vars) {
      const long den = 1 + static_cast<long>(rng() % 16);
      const Integer limit = floor(Rational(radius * den));
      const long span = 2 * limit.get_si() + 1;
      const long num = static_cast<long>(rng() % static_cast<unsigned long>(span)) - limit.get_si();
      point[v] = make_rational(num, den);
    }
    if (refutes(point)) return point;
  }
  return std::nullopt;
}

}  // namespace rlfgen
