#include "rlfgen/formula.h"

#include <algorithm>

#include "rlfgen/algebra.h"

namespace rlfgen {

std::string to_string(Relation rel) {
  switch (rel) {
    case Relation::kLt: return "<";
    case Relation::kLe: return "<=";
    case Relation::kEq: return "=";
    case Relation::kNe: return "!=";
    case Relation::kGt: return ">";
    case Relation::kGe: return ">=";
  }
  return "?";
}

Relation negate(Relation rel) {
  switch (rel) {
    case Relation::kLt: return Relation::kGe;
    case Relation::kLe: return Relation::kGt;
    case Relation::kEq: return Relation::kNe;
    case Relation::kNe: return Relation::kEq;
    case Relation::kGt: return Relation::kLe;
    case Relation::kGe: return Relation::kLt;
  }
  return rel;
}

bool holds(Relation rel, int s) {
  switch (rel) {
    case Relation::kLt: return s < 0;
    case Relation::kLe: return s <= 0;
    case Relation::kEq: return s == 0;
    case Relation::kNe: return s != 0;
    case Relation::kGt: return s > 0;
    case Relation::kGe: return s >= 0;
  }
  return false;
}

struct Formula::Node {
  Kind kind;
  Polynomial poly;
  Relation rel = Relation::kEq;
  std::vector<Formula> children;
  std::vector<std::string> vars;
};

Formula Formula::truth() {
  static const auto node = std::make_shared<const Node>(Node{Kind::kTrue, {}, {}, {}, {}});
  return Formula(node);
}

Formula Formula::falsity() {
  static const auto node = std::make_shared<const Node>(Node{Kind::kFalse, {}, {}, {}, {}});
  return Formula(node);
}

Formula Formula::atom(Polynomial p, Relation rel) {
  if (rel == Relation::kNe) return negation(atom(std::move(p), Relation::kEq));
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAtom;
  n->poly = std::move(p);
  n->rel = rel;
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kNot;
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::conjunction(std::vector<Formula> parts) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAnd;
  n->children = std::move(parts);
  return Formula(std::move(n));
}

Formula Formula::disjunction(std::vector<Formula> parts) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kOr;
  n->children = std::move(parts);
  return Formula(std::move(n));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kImplies;
  n->children.push_back(std::move(lhs));
  n->children.push_back(std::move(rhs));
  return Formula(std::move(n));
}

namespace {

void check_distinct(const std::vector<std::string>& vars) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!seen.insert(v).second) throw Error("variable '" + v + "' bound twice");
  }
}

}  // namespace

Formula Formula::forall(std::vector<std::string> vars, Formula body) {
  check_distinct(vars);
  auto n = std::make_shared<Node>();
  n->kind = Kind::kForall;
  n->vars = std::move(vars);
  n->children.push_back(std::move(body));
  return Formula(std::move(n));
}

Formula Formula::exists(std::vector<std::string> vars, Formula body) {
  check_distinct(vars);
  auto n = std::make_shared<Node>();
  n->kind = Kind::kExists;
  n->vars = std::move(vars);
  n->children.push_back(std::move(body));
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const Polynomial& Formula::polynomial() const {
  if (!is_atom()) throw Error("polynomial() on a non-atom formula");
  return node_->poly;
}

Relation Formula::relation() const {
  if (!is_atom()) throw Error("relation() on a non-atom formula");
  return node_->rel;
}

const std::vector<Formula>& Formula::children() const { return node_->children; }

const Formula& Formula::body() const {
  if (!is_quantifier()) throw Error("body() on a formula without a quantifier");
  return node_->children.front();
}

const std::vector<std::string>& Formula::bound_variables() const { return node_->vars; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::kTrue:
    case Kind::kFalse:
      return true;
    case Kind::kAtom:
      return node_->rel == other.node_->rel && node_->poly == other.node_->poly;
    default:
      return node_->vars == other.node_->vars && node_->children == other.node_->children;
  }
}

namespace {

std::string join(const std::vector<Formula>& parts, const char* sep) {
  std::string out = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i].to_string();
  }
  return out + ")";
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

}  // namespace

std::string Formula::to_string() const {
  switch (kind()) {
    case Kind::kTrue: return "true";
    case Kind::kFalse: return "false";
    case Kind::kAtom: return node_->poly.to_string() + " " + rlfgen::to_string(node_->rel) + " 0";
    case Kind::kNot: return "not " + node_->children[0].to_string();
    case Kind::kAnd: return node_->children.empty() ? "true" : join(node_->children, " and ");
    case Kind::kOr: return node_->children.empty() ? "false" : join(node_->children, " or ");
    case Kind::kImplies: return join(node_->children, " -> ");
    case Kind::kForall: return "forall " + join_names(node_->vars) + ". " + body().to_string();
    case Kind::kExists: return "exists " + join_names(node_->vars) + ". " + body().to_string();
  }
  return "?";
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue:
    case K::kFalse:
      return;
    case K::kAtom:
      for (size_t v : f.polynomial().support()) {
        const std::string& n = f.polynomial().ring().name(v);
        if (!bound.count(n)) out.insert(n);
      }
      return;
    case K::kForall:
    case K::kExists: {
      std::vector<std::string> added;
      for (const auto& v : f.bound_variables()) {
        if (bound.insert(v).second) added.push_back(v);
      }
      collect_free(f.body(), bound, out);
      for (const auto& v : added) bound.erase(v);
      return;
    }
    default:
      for (const auto& c : f.children()) collect_free(c, bound, out);
  }
}

template <typename Fn>
void for_each_atom(const Formula& f, Fn&& fn) {
  if (f.is_atom()) {
    fn(f);
    return;
  }
  for (const auto& c : f.children()) for_each_atom(c, fn);
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_variables(const Formula& f) {
  std::set<std::string> out;
  for_each_atom(f, [&](const Formula& a) {
    for (size_t v : a.polynomial().support()) out.insert(a.polynomial().ring().name(v));
  });
  return out;
}

bool is_quantifier_free(const Formula& f) {
  if (f.is_quantifier()) return false;
  for (const auto& c : f.children()) {
    if (!is_quantifier_free(c)) return false;
  }
  return true;
}

size_t atom_count(const Formula& f) {
  size_t n = 0;
  for_each_atom(f, [&](const Formula&) { ++n; });
  return n;
}

int max_degree(const Formula& f) {
  int d = -1;
  for_each_atom(f, [&](const Formula& a) { d = std::max(d, a.polynomial().total_degree()); });
  return d;
}

namespace {

Formula simplify_atom(const Polynomial& p, Relation rel) {
  if (p.is_constant()) {
    return holds(rel, sign(p.constant_value())) ? Formula::truth() : Formula::falsity();
  }
  if (rel == Relation::kNe) return Formula::negation(simplify_atom(p, Relation::kEq));
  return Formula::atom(integer_primitive(p), rel);
}

Formula simplify_impl(const Formula& f, bool negated);

Formula simplify_junction(const std::vector<Formula>& parts, bool is_and) {
  // is_and describes the resulting connective after negation handling.
  std::vector<Formula> out;
  std::vector<Formula> flat;
  for (const auto& p : parts) {
    const Formula::Kind same = is_and ? Formula::Kind::kAnd : Formula::Kind::kOr;
    if (p.kind() == same) {
      flat.insert(flat.end(), p.children().begin(), p.children().end());
    } else {
      flat.push_back(p);
    }
  }
  for (const auto& p : flat) {
    const bool absorbing = is_and ? p.kind() == Formula::Kind::kFalse
                                  : p.kind() == Formula::Kind::kTrue;
    const bool neutral = is_and ? p.kind() == Formula::Kind::kTrue
                                : p.kind() == Formula::Kind::kFalse;
    if (absorbing) return p;
    if (neutral) continue;
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  if (out.empty()) return is_and ? Formula::truth() : Formula::falsity();
  if (out.size() == 1) return out.front();
  return is_and ? Formula::conjunction(std::move(out)) : Formula::disjunction(std::move(out));
}

Formula simplify_quantifier(const Formula& f, bool negated) {
  const bool is_forall = (f.kind() == Formula::Kind::kForall) != negated;
  Formula body = simplify_impl(f.body(), negated);
  if (body.kind() == Formula::Kind::kTrue || body.kind() == Formula::Kind::kFalse) return body;
  const std::set<std::string> used = free_variables(body);
  std::vector<std::string> vars;
  for (const auto& v : f.bound_variables()) {
    if (used.count(v)) vars.push_back(v);
  }
  if (vars.empty()) return body;
  // Merge directly nested quantifiers of the same kind.
  const Formula::Kind k = is_forall ? Formula::Kind::kForall : Formula::Kind::kExists;
  if (body.kind() == k) {
    std::vector<std::string> merged = vars;
    for (const auto& v : body.bound_variables()) {
      if (std::find(merged.begin(), merged.end(), v) == merged.end()) merged.push_back(v);
    }
    const Formula inner = body.body();
    return is_forall ? Formula::forall(merged, inner) : Formula::exists(merged, inner);
  }
  return is_forall ? Formula::forall(vars, body) : Formula::exists(vars, body);
}

Formula simplify_impl(const Formula& f, bool negated) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue: return negated ? Formula::falsity() : Formula::truth();
    case K::kFalse: return negated ? Formula::truth() : Formula::falsity();
    case K::kAtom: {
      const Relation rel = negated ? negate(f.relation()) : f.relation();
      return simplify_atom(f.polynomial(), rel);
    }
    case K::kNot: return simplify_impl(f.children()[0], !negated);
    case K::kAnd:
    case K::kOr: {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(simplify_impl(c, negated));
      const bool is_and = (f.kind() == K::kAnd) != negated;
      return simplify_junction(parts, is_and);
    }
    case K::kImplies: {
      // a -> b is (not a) or b; its negation is a and (not b).
      std::vector<Formula> parts{simplify_impl(f.children()[0], !negated),
                                 simplify_impl(f.children()[1], negated)};
      return simplify_junction(parts, negated);
    }
    case K::kForall:
    case K::kExists:
      return simplify_quantifier(f, negated);
  }
  return f;
}

Formula substitute_impl(const Formula& f, const Assignment& values) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue:
    case K::kFalse:
      return f;
    case K::kAtom: {
      Assignment local;
      for (const auto& [k, v] : values) {
        if (f.polynomial().ring().index_of(k)) local[k] = v;
      }
      if (local.empty()) return f;
      return Formula::atom(substitute(f.polynomial(), local), f.relation());
    }
    case K::kNot: return Formula::negation(substitute_impl(f.children()[0], values));
    case K::kAnd:
    case K::kOr: {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(substitute_impl(c, values));
      return f.kind() == K::kAnd ? Formula::conjunction(std::move(parts))
                                 : Formula::disjunction(std::move(parts));
    }
    case K::kImplies:
      return Formula::implies(substitute_impl(f.children()[0], values),
                              substitute_impl(f.children()[1], values));
    case K::kForall:
    case K::kExists: {
      Assignment inner = values;
      for (const auto& v : f.bound_variables()) inner.erase(v);
      Formula body = substitute_impl(f.body(), inner);
      return f.kind() == K::kForall ? Formula::forall(f.bound_variables(), body)
                                    : Formula::exists(f.bound_variables(), body);
    }
  }
  return f;
}

}  // namespace

Formula simplify(const Formula& f) { return simplify_impl(f, false); }

Formula substitute(const Formula& f, const Assignment& values) {
  return substitute_impl(f, values);
}

bool evaluate(const Formula& f, const Assignment& point) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue: return true;
    case K::kFalse: return false;
    case K::kAtom: {
      const Polynomial& p = f.polynomial();
      std::vector<Rational> values(p.ring().size(), Rational(0));
      for (size_t v : p.support()) {
        const std::string& n = p.ring().name(v);
        auto it = point.find(n);
        if (it == point.end()) throw UnknownVariableError("unbound variable '" + n + "'");
        values[v] = it->second;
      }
      return holds(f.relation(), sign(evaluate(p, values)));
    }
    case K::kNot: return !evaluate(f.children()[0], point);
    case K::kAnd:
      for (const auto& c : f.children()) {
        if (!evaluate(c, point)) return false;
      }
      return true;
    case K::kOr:
      for (const auto& c : f.children()) {
        if (evaluate(c, point)) return true;
      }
      return false;
    case K::kImplies:
      return !evaluate(f.children()[0], point) || evaluate(f.children()[1], point);
    case K::kForall:
    case K::kExists:
      throw Error("evaluate: formula has quantifiers; use a decision procedure");
  }
  return false;
}

}  // namespace rlfgen
