#include "rlfgen/dynamics.h"

#include <stdexcept>

namespace rlfgen {

VectorField::VectorField(Ring state, std::vector<Polynomial> components)
    : state_(std::move(state)), components_(std::move(components)) {
  if (components_.size() != state_.size()) {
    throw Error("vector field has " + std::to_string(components_.size()) +
                " components for " + std::to_string(state_.size()) + " state variables");
  }
  for (auto& c : components_) {
    if (!(c.ring() == state_)) c = c.embed(state_);
  }
}

Template::Template(Ring params, Ring state, Polynomial body)
    : params_(std::move(params)), state_(std::move(state)) {
  const Ring full = concat(params_, state_);
  body_ = body.embed(full);
}

Template::Template(Polynomial body_over_state)
    : params_(), state_(body_over_state.ring()), body_(std::move(body_over_state)) {}

Polynomial Template::instantiate(const std::vector<Rational>& values) const {
  if (values.size() != params_.size()) {
    throw Error("template expects " + std::to_string(params_.size()) + " parameter values");
  }
  Assignment a;
  for (size_t i = 0; i < values.size(); ++i) a[params_.name(i)] = values[i];
  return instantiate(a);
}

Polynomial Template::instantiate(const Assignment& values) const {
  for (const auto& n : params_.names()) {
    if (!values.count(n)) throw UnknownVariableError("unbound parameter '" + n + "'");
  }
  Assignment only_params;
  for (const auto& [k, v] : values) {
    if (params_.index_of(k)) only_params[k] = v;
  }
  return substitute(body_, only_params).embed(state_);
}

Rank Rank::finite(unsigned k) {
  if (k == 0) throw Error("finite rank must be positive");
  return Rank(k);
}

unsigned Rank::value() const {
  if (!value_) throw Error("value of an infinite rank");
  return *value_;
}

std::string Rank::to_string() const {
  return value_ ? std::to_string(*value_) : std::string("inf");
}

namespace {

// One Lie step: sum_i dp/dx_i * f_i, with f embedded into p's ring.
Polynomial lie_step(const Polynomial& p, const std::vector<size_t>& state_index,
                    const std::vector<Polynomial>& embedded) {
  Polynomial acc(p.ring());
  for (size_t i = 0; i < state_index.size(); ++i) {
    const Polynomial d = partial_derivative(p, state_index[i]);
    if (!d.is_zero()) acc += d * embedded[i];
  }
  return acc;
}

struct Embedding {
  std::vector<size_t> index;
  std::vector<Polynomial> field;
};

Embedding embed_field(const Ring& ring, const VectorField& f) {
  Embedding e;
  for (size_t i = 0; i < f.dimension(); ++i) {
    const auto idx = ring.index_of(f.state().name(i));
    if (!idx) {
      throw UnknownVariableError("polynomial ring " + ring.to_string() +
                                 " lacks state variable '" + f.state().name(i) + "'");
    }
    e.index.push_back(*idx);
    e.field.push_back(f.component(i).embed(ring));
  }
  return e;
}

void require_parameter_free(const Polynomial& p, const VectorField& f) {
  for (size_t v : p.support()) {
    if (!f.state().index_of(p.ring().name(v))) {
      throw Error("pointwise operations need an instantiated polynomial; '" +
                  p.ring().name(v) + "' is not a state variable");
    }
  }
}

Assignment point_assignment(const Polynomial& p, const VectorField& f,
                            const std::vector<Rational>& x0) {
  if (x0.size() != f.dimension()) {
    throw Error("point has " + std::to_string(x0.size()) + " coordinates, expected " +
                std::to_string(f.dimension()));
  }
  Assignment a;
  for (size_t i = 0; i < x0.size(); ++i) a[f.state().name(i)] = x0[i];
  // Unused ring variables (if p was built over a larger ring) evaluate to 0.
  for (const auto& n : p.ring().names()) a.try_emplace(n, Rational(0));
  return a;
}

}  // namespace

Polynomial lie_derivative(const Polynomial& p, const VectorField& f, unsigned k) {
  const Embedding e = embed_field(p.ring(), f);
  Polynomial cur = p;
  for (unsigned j = 0; j < k; ++j) cur = lie_step(cur, e.index, e.field);
  return cur;
}

LieChain::LieChain(Polynomial p, VectorField f) : field_(std::move(f)) {
  embed_field(p.ring(), field_);
  chain_.push_back(std::move(p));
}

const Polynomial& LieChain::get(unsigned k) {
  if (chain_.size() <= k) {
    const Embedding e = embed_field(chain_.front().ring(), field_);
    while (chain_.size() <= k) {
      chain_.push_back(lie_step(chain_.back(), e.index, e.field));
    }
  }
  return chain_[k];
}

Rank pointwise_rank(LieChain& chain, const std::vector<Rational>& x0, unsigned bound) {
  if (bound < 1) throw Error("pointwise_rank: bound must be at least 1");
  require_parameter_free(chain.base(), chain.field());
  const Assignment a = point_assignment(chain.base(), chain.field(), x0);
  for (unsigned k = 1; k <= bound; ++k) {
    if (evaluate(chain.get(k), a) != 0) return Rank::finite(k);
  }
  return Rank::infinite();
}

Rank pointwise_rank(const Polynomial& p, const VectorField& f,
                    const std::vector<Rational>& x0, unsigned bound) {
  LieChain chain(p, f);
  return pointwise_rank(chain, x0, bound);
}

bool in_transverse_set(LieChain& chain, const std::vector<Rational>& x0, unsigned bound) {
  const Rank r = pointwise_rank(chain, x0, bound);
  if (r.is_infinite()) return false;
  const Assignment a = point_assignment(chain.base(), chain.field(), x0);
  return evaluate(chain.get(r.value()), a) < 0;
}

bool in_transverse_set(const Polynomial& p, const VectorField& f,
                       const std::vector<Rational>& x0, unsigned bound) {
  LieChain chain(p, f);
  return in_transverse_set(chain, x0, bound);
}

bool equilibrium_check(const VectorField& f) {
  const std::vector<Rational> origin(f.dimension(), Rational(0));
  for (const auto& c : f.components()) {
    if (evaluate(c, origin) != 0) return false;
  }
  return true;
}

}  // namespace rlfgen
