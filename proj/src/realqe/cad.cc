#include "rlfgen/cad.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

#include "rlfgen/algebra.h"

namespace rlfgen {

Polynomial rename_variables(const Polynomial& p, const std::map<std::string, std::string>& names) {
  std::vector<std::string> out_names;
  std::vector<size_t> target(p.ring().size());
  for (size_t v = 0; v < p.ring().size(); ++v) {
    const auto it = names.find(p.ring().name(v));
    const std::string& n = it == names.end() ? p.ring().name(v) : it->second;
    const auto pos = std::find(out_names.begin(), out_names.end(), n);
    target[v] = static_cast<size_t>(pos - out_names.begin());
    if (pos == out_names.end()) out_names.push_back(n);
  }
  const Ring ring(out_names);
  Polynomial::TermMap terms;
  for (const auto& [m, c] : p.terms()) {
    Monomial nm(ring.size());
    for (size_t v = 0; v < m.arity(); ++v) nm[target[v]] += m[v];
    auto [it, inserted] = terms.try_emplace(std::move(nm), c);
    if (!inserted) it->second += c;
  }
  return Polynomial(ring, std::move(terms));
}

namespace {

using Names = std::map<std::string, std::string>;

struct RenameContext {
  std::set<std::string> reserved;
  std::set<std::string> claimed;

  std::string claim(const std::string& v) {
    std::string name = v;
    for (int k = 1; claimed.count(name) || (reserved.count(name) && name != v); ++k) {
      name = v + "_" + std::to_string(k);
    }
    claimed.insert(name);
    reserved.insert(name);
    return name;
  }
};

Formula rename_matrix(const Formula& f, const Names& names) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue:
    case K::kFalse:
      return f;
    case K::kAtom:
      return Formula::atom(rename_variables(f.polynomial(), names), f.relation());
    case K::kNot:
      return Formula::negation(rename_matrix(f.children()[0], names));
    case K::kAnd:
    case K::kOr: {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(rename_matrix(c, names));
      return f.kind() == K::kAnd ? Formula::conjunction(std::move(parts))
                                 : Formula::disjunction(std::move(parts));
    }
    default:
      throw std::logic_error("rename_matrix expects a quantifier-free formula");
  }
}

void append_block(std::vector<QuantifierBlock>& out, QuantifierBlock b) {
  if (b.variables.empty()) return;
  if (!out.empty() && out.back().universal == b.universal) {
    auto& vars = out.back().variables;
    for (auto& v : b.variables) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(std::move(v));
    }
  } else {
    out.push_back(std::move(b));
  }
}

// Merges the prefixes of two junction members. Blocks whose quantifier
// distributes over the connective share variables.
PrenexForm merge(PrenexForm a, PrenexForm b, bool is_and) {
  Names rename;
  std::vector<QuantifierBlock> out;
  size_t i = 0;
  size_t j = 0;
  while (i < a.prefix.size() && j < b.prefix.size()) {
    if (a.prefix[i].universal != b.prefix[j].universal) {
      append_block(out, a.prefix[i++]);
      continue;
    }
    QuantifierBlock block = a.prefix[i];
    const bool shareable = block.universal == is_and;
    const auto& other = b.prefix[j].variables;
    for (size_t k = 0; k < other.size(); ++k) {
      if (shareable && k < a.prefix[i].variables.size()) {
        rename[other[k]] = a.prefix[i].variables[k];
      } else {
        block.variables.push_back(other[k]);
      }
    }
    append_block(out, std::move(block));
    ++i;
    ++j;
  }
  for (; i < a.prefix.size(); ++i) append_block(out, a.prefix[i]);
  for (; j < b.prefix.size(); ++j) append_block(out, b.prefix[j]);
  Formula bm = rename.empty() ? b.matrix : rename_matrix(b.matrix, rename);
  std::vector<Formula> parts{a.matrix, bm};
  Formula m = is_and ? Formula::conjunction(std::move(parts)) : Formula::disjunction(std::move(parts));
  return {std::move(out), std::move(m)};
}

PrenexForm prenex_impl(const Formula& f, const Names& env, RenameContext& ctx) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue:
    case K::kFalse:
      return {{}, f};
    case K::kAtom:
    case K::kNot:
      return {{}, rename_matrix(f, env)};
    case K::kAnd:
    case K::kOr: {
      const bool is_and = f.kind() == K::kAnd;
      std::optional<PrenexForm> acc;
      for (const auto& c : f.children()) {
        PrenexForm part = prenex_impl(c, env, ctx);
        acc = acc ? merge(std::move(*acc), std::move(part), is_and) : std::move(part);
      }
      return std::move(*acc);
    }
    case K::kForall:
    case K::kExists: {
      Names inner = env;
      QuantifierBlock block{f.kind() == K::kForall, {}};
      for (const auto& v : f.bound_variables()) {
        const std::string name = ctx.claim(v);
        inner[v] = name;
        block.variables.push_back(name);
      }
      PrenexForm body = prenex_impl(f.body(), inner, ctx);
      std::vector<QuantifierBlock> prefix;
      append_block(prefix, std::move(block));
      for (auto& b : body.prefix) append_block(prefix, std::move(b));
      return {std::move(prefix), std::move(body.matrix)};
    }
    case K::kImplies:
      break;
  }
  throw std::logic_error("prenex: unexpected connective after simplification");
}

}  // namespace

PrenexForm prenex(const Formula& f) {
  const Formula s = simplify(f);
  RenameContext ctx;
  ctx.reserved = all_variables(s);
  for (const auto& v : free_variables(s)) ctx.claimed.insert(v);
  PrenexForm p = prenex_impl(s, {}, ctx);
  p.matrix = simplify(p.matrix);
  const auto used = free_variables(p.matrix);
  std::vector<QuantifierBlock> prefix;
  for (auto& b : p.prefix) {
    QuantifierBlock kept{b.universal, {}};
    for (auto& v : b.variables) {
      if (used.count(v)) kept.variables.push_back(v);
    }
    append_block(prefix, std::move(kept));
  }
  p.prefix = std::move(prefix);
  return p;
}

Formula from_prenex(const PrenexForm& p) {
  Formula f = p.matrix;
  for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it) {
    f = it->universal ? Formula::forall(it->variables, f) : Formula::exists(it->variables, f);
  }
  return f;
}

std::vector<std::string> order_block(std::vector<std::string> vars,
                                     const std::vector<Polynomial>& polys) {
  using Key = std::tuple<int, int, int>;
  std::map<std::string, Key> keys;
  for (const auto& v : vars) {
    int degree = 0;
    int total = 0;
    int count = 0;
    for (const auto& p : polys) {
      const auto idx = p.ring().index_of(v);
      if (!idx) continue;
      for (const auto& [m, c] : p.terms()) {
        if (m[*idx] == 0) continue;
        degree = std::max(degree, static_cast<int>(m[*idx]));
        total = std::max(total, static_cast<int>(m.total_degree()));
        ++count;
      }
    }
    keys[v] = {degree, total, count};
  }
  std::stable_sort(vars.begin(), vars.end(), [&](const std::string& a, const std::string& b) {
    if (keys[a] != keys[b]) return keys[a] > keys[b];
    return a < b;
  });
  return vars;
}

namespace {

class ProjectionBuilder {
 public:
  ProjectionBuilder(const Ring& ring, const Deadline* deadline)
      : deadline_(deadline), levels_(ring.size()) {}

  void add(const Polynomial& p) {
    if (deadline_) deadline_->check();
    if (p.is_zero() || p.is_constant()) return;
    const size_t k = *main_variable(p);
    const Polynomial c = content_in(p, k);
    if (!c.is_constant()) add(c);
    insert(k, squarefree_part_in(primitive_part_in(p, k), k));
  }

  std::vector<std::vector<Polynomial>> build() {
    for (size_t k = levels_.size(); k-- > 1;) {
      const std::vector<Polynomial> basis = levels_[k];
      for (size_t i = 0; i < basis.size(); ++i) {
        const auto coeffs = coefficients_in(basis[i], k);
        add(coeffs.back());
        for (const auto& c : coeffs) {
          if (c.is_zero()) continue;
          add(c);
          break;
        }
        add(discriminant(basis[i], k));
        for (size_t j = i + 1; j < basis.size(); ++j) add(resultant(basis[i], basis[j], k));
      }
    }
    return levels_;
  }

 private:
  void insert(size_t k, const Polynomial& q) {
    auto& basis = levels_[k];
    for (size_t i = 0; i < basis.size(); ++i) {
      const Polynomial g = gcd(q, basis[i]);
      if (g.degree_in(k) <= 0) continue;
      const Polynomial b = basis[i];
      basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
      insert(k, g);
      const Polynomial bq = exact_quotient(b, g);
      if (bq.degree_in(k) > 0) insert(k, normalize_associate(bq));
      const Polynomial qq = exact_quotient(q, g);
      if (qq.degree_in(k) > 0) insert(k, normalize_associate(qq));
      return;
    }
    basis.push_back(normalize_associate(q));
  }

  const Deadline* deadline_;
  std::vector<std::vector<Polynomial>> levels_;
};

}  // namespace

ProjectionSet project(const Ring& ring, const std::vector<Polynomial>& polys,
                      const Deadline* deadline) {
  ProjectionBuilder builder(ring, deadline);
  for (const auto& p : polys) builder.add(p.embed(ring));
  return {ring, builder.build()};
}

namespace {

/// Whether p vanishes identically once the first j + 1 coordinates of pt
/// are substituted.
bool vanishes_over(const SamplePoint& pt, const Polynomial& p, size_t j) {
  std::map<std::vector<uint32_t>, Polynomial> groups;
  for (const auto& [m, c] : p.terms()) {
    std::vector<uint32_t> upper;
    std::vector<uint32_t> lower(p.ring().size(), 0);
    for (size_t v = 0; v < p.ring().size(); ++v) {
      if (v <= j) {
        lower[v] = m[v];
      } else {
        upper.push_back(m[v]);
      }
    }
    auto [it, fresh] = groups.try_emplace(upper, p.ring());
    it->second += Polynomial::monomial(p.ring(), Monomial(std::move(lower)), c);
  }
  for (const auto& [key, coeff] : groups) {
    if (!pt.is_zero(coeff)) return false;
  }
  return true;
}

/// Lazard evaluation of a factor nullified over pt: divides out the
/// vanishing order along each coordinate in turn, expressed through
/// repeated partial derivatives.
Polynomial lazard_reduce(const SamplePoint& pt, Polynomial p) {
  for (size_t j = 0; j < pt.size(); ++j) {
    while (vanishes_over(pt, p, j)) p = partial_derivative(p, j);
  }
  return p;
}

std::vector<CellSample> lift_cells(const SamplePoint& pt, const ProjectionSet& proj, bool top) {
  const size_t k = pt.size();
  RootLift lift = pt.isolate_roots(proj.levels[k]);
  if (!lift.nullified.empty() && !top) {
    std::vector<Polynomial> reduced = proj.levels[k];
    for (size_t i : lift.nullified) reduced[i] = lazard_reduce(pt, reduced[i]);
    lift = pt.isolate_roots(reduced);
  }
  auto cells = pt.cylinder_samples(std::move(lift.roots));
  std::stable_partition(cells.begin(), cells.end(), [](const CellSample& c) { return !c.section; });
  return cells;
}

void decompose_impl(const ProjectionSet& proj, const SamplePoint& pt, std::vector<bool>& section,
                    std::vector<CadCell>& out, const Deadline* deadline) {
  if (deadline) deadline->check();
  const size_t k = pt.size();
  if (k == proj.ring.size()) {
    CadCell cell{pt, {}, section};
    for (const auto& level : proj.levels) {
      std::vector<int> s;
      for (const auto& p : level) s.push_back(pt.sign(p));
      cell.signs.push_back(std::move(s));
    }
    out.push_back(std::move(cell));
    return;
  }
  for (const auto& c : lift_cells(pt, proj, k + 1 == proj.ring.size())) {
    section.push_back(c.section);
    decompose_impl(proj, pt.extended(c.coordinate), section, out, deadline);
    section.pop_back();
  }
}

}  // namespace

std::vector<CadCell> decompose(const ProjectionSet& projection, const Deadline* deadline) {
  std::vector<CadCell> out;
  std::vector<bool> section;
  if (projection.ring.size() == 0) return out;
  decompose_impl(projection, SamplePoint(projection.ring, deadline), section, out, deadline);
  return out;
}

namespace {

void collect_polynomials(const Formula& f, std::vector<Polynomial>& out) {
  if (f.is_atom()) {
    out.push_back(f.polynomial());
    return;
  }
  if (f.kind() == Formula::Kind::kNot || f.kind() == Formula::Kind::kAnd ||
      f.kind() == Formula::Kind::kOr) {
    for (const auto& c : f.children()) collect_polynomials(c, out);
  }
}

}  // namespace

CadProblem layout(const PrenexForm& p, const std::vector<std::string>& free_order) {
  std::vector<Polynomial> polys;
  collect_polynomials(p.matrix, polys);
  const auto used = free_variables(from_prenex(p));
  std::vector<std::string> free;
  for (const auto& v : free_order) {
    if (used.count(v) && std::find(free.begin(), free.end(), v) == free.end()) free.push_back(v);
  }
  std::vector<std::string> missing;
  for (const auto& v : used) {
    if (std::find(free.begin(), free.end(), v) == free.end()) missing.push_back(v);
  }
  for (const auto& v : order_block(missing, polys)) free.push_back(v);
  CadProblem problem;
  problem.free_count = free.size();
  std::vector<std::string> names = free;
  for (const auto& block : p.prefix) {
    for (const auto& v : order_block(block.variables, polys)) {
      names.push_back(v);
      problem.universal.push_back(block.universal);
    }
  }
  problem.ring = Ring(names);
  problem.matrix = p.matrix;
  return problem;
}

Cad::Cad(CadProblem problem, const Deadline* deadline)
    : problem_(std::move(problem)), deadline_(deadline) {
  compile();
  std::vector<Polynomial> polys;
  for (const auto& a : atoms_) polys.push_back(a.poly);
  projection_ = project(problem_.ring, polys, deadline_);
}

void Cad::compile() {
  std::map<std::pair<std::string, Relation>, size_t> seen;
  auto build = [&](auto&& self, const Formula& f) -> size_t {
    using K = Formula::Kind;
    Node n{f.kind(), 0, {}};
    if (f.is_atom() || f.kind() == K::kNot) {
      const Formula& a = f.is_atom() ? f : f.children()[0];
      if (!a.is_atom() || (f.kind() == K::kNot && a.relation() != Relation::kEq)) {
        throw std::logic_error("matrix must be in negation normal form");
      }
      const Relation rel = f.is_atom() ? a.relation() : Relation::kNe;
      const Polynomial p = a.polynomial().embed(problem_.ring);
      const auto key = std::make_pair(p.to_string(), rel);
      auto it = seen.find(key);
      if (it == seen.end()) {
        size_t level = 0;
        for (size_t v : p.support()) level = std::max(level, v + 1);
        atoms_.push_back({p, rel, level});
        it = seen.emplace(key, atoms_.size() - 1).first;
      }
      n.kind = K::kAtom;
      n.atom = it->second;
    } else if (f.kind() == K::kAnd || f.kind() == K::kOr) {
      for (const auto& c : f.children()) n.children.push_back(self(self, c));
    } else if (f.kind() != K::kTrue && f.kind() != K::kFalse) {
      throw std::logic_error("matrix must be quantifier-free");
    }
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  };
  build(build, problem_.matrix);
}

void Cad::assign_atoms(const SamplePoint& pt, Values& values) const {
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (!values[i] && atoms_[i].level <= pt.size()) {
      values[i] = holds(atoms_[i].relation, pt.sign(atoms_[i].poly));
    }
  }
}

std::optional<bool> Cad::evaluate(const Values& values) const {
  std::vector<std::optional<bool>> result(nodes_.size());
  // Children are compiled before their parents.
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    using K = Formula::Kind;
    switch (n.kind) {
      case K::kTrue: result[i] = true; break;
      case K::kFalse: result[i] = false; break;
      case K::kAtom: result[i] = values[n.atom]; break;
      case K::kAnd:
      case K::kOr: {
        const bool is_and = n.kind == K::kAnd;
        bool undetermined = false;
        bool decided = false;
        for (size_t c : n.children) {
          if (!result[c]) {
            undetermined = true;
          } else if (*result[c] != is_and) {
            decided = true;
            break;
          }
        }
        if (decided) {
          result[i] = !is_and;
        } else if (!undetermined) {
          result[i] = is_and;
        }
        break;
      }
      default:
        break;
    }
  }
  return result.back();
}

std::vector<CellSample> Cad::cells_over(const SamplePoint& pt) const {
  return lift_cells(pt, projection_, pt.size() + 1 == problem_.ring.size());
}

bool Cad::decide_from(const SamplePoint& pt, Values values) const {
  if (deadline_) deadline_->check();
  assign_atoms(pt, values);
  if (const auto v = evaluate(values)) return *v;
  const size_t k = pt.size();
  if (k == problem_.ring.size()) throw std::logic_error("matrix undetermined at a full sample point");
  const bool universal = problem_.universal.at(k - problem_.free_count);
  for (const auto& c : cells_over(pt)) {
    const bool r = decide_from(pt.extended(c.coordinate), values);
    if (universal && !r) return false;
    if (!universal && r) return true;
  }
  return universal;
}

bool Cad::decide() const {
  if (problem_.free_count != 0) throw std::logic_error("decide() needs a closed problem");
  return decide_from(SamplePoint(problem_.ring, deadline_), Values(atoms_.size()));
}

std::vector<Polynomial> Cad::free_factors() const {
  std::vector<Polynomial> out;
  for (size_t k = 0; k < problem_.free_count; ++k) {
    for (const auto& p : projection_.levels[k]) out.push_back(p);
  }
  return out;
}

void Cad::enumerate_free(const SamplePoint& pt, std::vector<FreeCell>& out) const {
  if (deadline_) deadline_->check();
  if (pt.size() == problem_.free_count) {
    FreeCell cell{pt, {}, decide_from(pt, Values(atoms_.size()))};
    for (const auto& p : free_factors()) cell.signs.push_back(pt.sign(p));
    out.push_back(std::move(cell));
    return;
  }
  for (const auto& c : cells_over(pt)) enumerate_free(pt.extended(c.coordinate), out);
}

std::vector<FreeCell> Cad::free_cells() const {
  std::vector<FreeCell> out;
  enumerate_free(SamplePoint(problem_.ring, deadline_), out);
  return out;
}

void Cad::collect(const SamplePoint& pt, Values values, size_t limit,
                  std::vector<SamplePoint>& out) const {
  if (out.size() >= limit) return;
  if (deadline_) deadline_->check();
  assign_atoms(pt, values);
  const auto v = evaluate(values);
  if (v && !*v) return;
  if (v) {
    SamplePoint full = pt;
    while (full.size() < problem_.ring.size()) full = full.extended(Coordinate::rational(Rational(0)));
    out.push_back(std::move(full));
    return;
  }
  for (const auto& c : cells_over(pt)) collect(pt.extended(c.coordinate), values, limit, out);
}

std::vector<SamplePoint> Cad::satisfying_samples(size_t limit) const {
  std::vector<SamplePoint> out;
  collect(SamplePoint(problem_.ring, deadline_), Values(atoms_.size()), limit, out);
  return out;
}

}  // namespace rlfgen
