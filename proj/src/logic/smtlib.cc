#include "rlfgen/smtlib.h"

#include <sstream>

namespace rlfgen {

std::string to_string(SmtLogic logic) { return logic == SmtLogic::kQfNra ? "QF_NRA" : "NRA"; }

namespace {

std::string integer_literal(const Integer& z) {
  if (z < 0) return "(- " + Integer(-z).get_str() + ")";
  return z.get_str();
}

std::string rational_literal(const Rational& q) {
  if (q.get_den() == 1) return integer_literal(q.get_num());
  const std::string body = "(/ " + Integer(abs(q.get_num())).get_str() + " " +
                           q.get_den().get_str() + ")";
  return q < 0 ? "(- " + body + ")" : body;
}

std::string symbol(const std::string& name) { return name; }

}  // namespace

std::string to_smtlib_term(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::vector<std::string> terms;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    std::vector<std::string> factors;
    if (c != 1 || m.is_one()) factors.push_back(rational_literal(c));
    for (size_t v = 0; v < m.arity(); ++v) {
      for (uint32_t e = 0; e < m[v]; ++e) factors.push_back(symbol(p.ring().name(v)));
    }
    if (factors.size() == 1) {
      terms.push_back(factors.front());
    } else {
      std::string t = "(*";
      for (const auto& f : factors) t += " " + f;
      terms.push_back(t + ")");
    }
  }
  if (terms.size() == 1) return terms.front();
  std::string out = "(+";
  for (const auto& t : terms) out += " " + t;
  return out + ")";
}

std::string to_smtlib_formula(const Formula& f) {
  using K = Formula::Kind;
  auto junction = [&](const char* op, const char* empty) {
    const auto& ch = f.children();
    if (ch.empty()) return std::string(empty);
    if (ch.size() == 1) return to_smtlib_formula(ch.front());
    std::string out = std::string("(") + op;
    for (const auto& c : ch) out += " " + to_smtlib_formula(c);
    return out + ")";
  };
  auto quantifier = [&](const char* op) {
    std::string out = std::string("(") + op + " (";
    for (size_t i = 0; i < f.bound_variables().size(); ++i) {
      if (i) out += " ";
      out += "(" + symbol(f.bound_variables()[i]) + " Real)";
    }
    return out + ") " + to_smtlib_formula(f.body()) + ")";
  };
  switch (f.kind()) {
    case K::kTrue: return "true";
    case K::kFalse: return "false";
    case K::kAtom: {
      const std::string t = to_smtlib_term(f.polynomial());
      if (f.relation() == Relation::kNe) return "(not (= " + t + " 0))";
      return "(" + to_string(f.relation()) + " " + t + " 0)";
    }
    case K::kNot: return "(not " + to_smtlib_formula(f.children()[0]) + ")";
    case K::kAnd: return junction("and", "true");
    case K::kOr: return junction("or", "false");
    case K::kImplies:
      return "(=> " + to_smtlib_formula(f.children()[0]) + " " +
             to_smtlib_formula(f.children()[1]) + ")";
    case K::kForall: return f.bound_variables().empty() ? to_smtlib_formula(f.body()) : quantifier("forall");
    case K::kExists: return f.bound_variables().empty() ? to_smtlib_formula(f.body()) : quantifier("exists");
  }
  return "true";
}

std::string to_smtlib(const Formula& f, SmtLogic logic) {
  if (logic == SmtLogic::kQfNra && !is_quantifier_free(f)) {
    throw Error("QF_NRA script requested for a quantified formula");
  }
  std::ostringstream out;
  out << "(set-logic " << to_string(logic) << ")\n";
  for (const auto& v : free_variables(f)) out << "(declare-const " << symbol(v) << " Real)\n";
  out << "(assert " << to_smtlib_formula(f) << ")\n";
  out << "(check-sat)\n";
  return out.str();
}

}  // namespace rlfgen
