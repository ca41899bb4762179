#include "rlfgen/builders.h"

namespace rlfgen {

namespace {

void require_positive(unsigned i, const char* what) {
  if (i == 0) throw Error(std::string(what) + ": index must be at least 1");
}

}  // namespace

FormulaBuilder::FormulaBuilder(Template p, VectorField f, std::string radius)
    : template_(std::move(p)),
      field_(std::move(f)),
      radius_(std::move(radius)),
      ring_(radius_.empty() ? template_.body().ring() : concat(template_.body().ring(), Ring({radius_}))),
      chain_(template_.body().embed(ring_), field_) {
  if (!(template_.state() == field_.state())) {
    throw Error("template state " + template_.state().to_string() +
                " differs from field state " + field_.state().to_string());
  }
}

const Polynomial& FormulaBuilder::lie(unsigned k) { return chain_.get(k); }

Polynomial FormulaBuilder::norm_squared() const {
  Polynomial n(ring_);
  for (const auto& v : field_.state().names()) {
    const Polynomial x = Polynomial::variable(ring_, v);
    n += x * x;
  }
  return n;
}

std::vector<Formula> FormulaBuilder::ball_atoms() const {
  const Polynomial n = norm_squared();
  if (whole_space()) return {Formula::atom(n, Relation::kGt)};
  const Polynomial r = Polynomial::variable(ring_, radius_);
  return {Formula::atom(n, Relation::kGt), Formula::atom(n - r * r, Relation::kLt)};
}

Formula FormulaBuilder::ball() const { return Formula::conjunction(ball_atoms()); }

Formula FormulaBuilder::guarded(Formula antecedent_extra, Formula consequent) const {
  std::vector<Formula> lhs = ball_atoms();
  if (antecedent_extra.kind() == Formula::Kind::kAnd) {
    lhs.insert(lhs.end(), antecedent_extra.children().begin(), antecedent_extra.children().end());
  } else if (antecedent_extra.kind() != Formula::Kind::kTrue) {
    lhs.push_back(std::move(antecedent_extra));
  }
  return Formula::forall(field_.state().names(),
                         Formula::implies(Formula::conjunction(std::move(lhs)), std::move(consequent)));
}

Formula FormulaBuilder::psi(unsigned i) {
  require_positive(i, "psi");
  if (i == 1) return Formula::truth();
  std::vector<Formula> parts;
  for (unsigned j = 1; j < i; ++j) parts.push_back(Formula::atom(lie(j), Relation::kEq));
  return Formula::conjunction(std::move(parts));
}

Formula FormulaBuilder::varphi_block(unsigned i) {
  require_positive(i, "varphi block");
  const Formula last = Formula::atom(lie(i), Relation::kLt);
  if (i == 1) return last;
  std::vector<Formula> parts = psi(i).children();
  parts.push_back(last);
  return Formula::conjunction(std::move(parts));
}

std::vector<Formula> FormulaBuilder::blocks(unsigned n) {
  std::vector<Formula> out;
  for (unsigned i = 1; i <= n; ++i) out.push_back(varphi_block(i));
  return out;
}

Formula FormulaBuilder::varphi(unsigned n) {
  require_positive(n, "varphi");
  if (n == 1) return varphi_block(1);
  return Formula::disjunction(blocks(n));
}

Formula FormulaBuilder::phi1() {
  Assignment origin;
  for (const auto& v : field_.state().names()) origin[v] = 0;
  return Formula::atom(substitute_keep_ring(lie(0), origin), Relation::kEq);
}

Formula FormulaBuilder::phi2() {
  if (whole_space()) return guarded(Formula::truth(), Formula::atom(lie(0), Relation::kGt));
  const Formula positive_radius =
      Formula::atom(Polynomial::variable(ring_, radius_), Relation::kGt);
  return Formula::conjunction(
      {positive_radius, guarded(Formula::truth(), Formula::atom(lie(0), Relation::kGt))});
}

Formula FormulaBuilder::phi3(unsigned n) { return guarded(Formula::truth(), varphi(n)); }

Formula FormulaBuilder::phi(unsigned n) {
  require_positive(n, "phi");
  if (!equilibrium_check(field_)) throw Error("vector field does not vanish at the origin");
  return Formula::conjunction({phi1(), phi2(), phi3(n)});
}

Formula FormulaBuilder::theta(unsigned i) {
  require_positive(i, "theta");
  return guarded(psi(i), Formula::atom(lie(i), Relation::kLt));
}

Formula FormulaBuilder::theta_bar(unsigned i) {
  require_positive(i, "theta_bar");
  return guarded(psi(i), Formula::atom(lie(i), Relation::kLe));
}

Formula FormulaBuilder::phi_bar(unsigned i) {
  require_positive(i, "phi_bar");
  std::vector<Formula> parts = blocks(i);
  parts.push_back(psi(i + 1));
  return guarded(Formula::truth(), Formula::disjunction(std::move(parts)));
}

Formula FormulaBuilder::phi_tilde(unsigned i) {
  require_positive(i, "phi_tilde");
  return guarded(Formula::truth(), varphi(i));
}

Formula build_ball(const Ring& state, const std::string& radius) {
  const Ring ring = concat(state, Ring({radius}));
  Polynomial n(ring);
  for (const auto& v : state.names()) {
    const Polynomial x = Polynomial::variable(ring, v);
    n += x * x;
  }
  const Polynomial r = Polynomial::variable(ring, radius);
  return Formula::conjunction(
      {Formula::atom(n, Relation::kGt), Formula::atom(n - r * r, Relation::kLt)});
}

Formula build_varphi(const Template& p, const VectorField& f, unsigned n) {
  return FormulaBuilder(p, f).varphi(n);
}
Formula build_phi(const Template& p, const VectorField& f, unsigned n) {
  return FormulaBuilder(p, f).phi(n);
}
Formula build_psi(const Template& p, const VectorField& f, unsigned i) {
  return FormulaBuilder(p, f).psi(i);
}
Formula build_theta(const Template& p, const VectorField& f, unsigned i) {
  return FormulaBuilder(p, f).theta(i);
}
Formula build_theta_bar(const Template& p, const VectorField& f, unsigned i) {
  return FormulaBuilder(p, f).theta_bar(i);
}
Formula build_phi_bar(const Template& p, const VectorField& f, unsigned i) {
  return FormulaBuilder(p, f).phi_bar(i);
}
Formula build_phi_tilde(const Template& p, const VectorField& f, unsigned i) {
  return FormulaBuilder(p, f).phi_tilde(i);
}

}  // namespace rlfgen
