#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rlfgen/polynomial.h"

namespace rlfgen {

/// Right-hand side f of a polynomial dynamical system x' = f(x). Component i
/// is the derivative of state variable i; every component lives over the
/// state ring.
class VectorField {
 public:
  VectorField(Ring state, std::vector<Polynomial> components);

  const Ring& state() const { return state_; }
  size_t dimension() const { return state_.size(); }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& component(size_t i) const { return components_[i]; }

 private:
  Ring state_;
  std::vector<Polynomial> components_;
};

/// Parametric polynomial p(u, x). The body ring is params ++ state.
class Template {
 public:
  Template(Ring params, Ring state, Polynomial body);
  /// A parameter-free template.
  explicit Template(Polynomial body_over_state);

  const Ring& params() const { return params_; }
  const Ring& state() const { return state_; }
  const Polynomial& body() const { return body_; }
  size_t parameter_count() const { return params_.size(); }

  /// Instantiation p_{u0}(x), a polynomial over the state ring.
  Polynomial instantiate(const std::vector<Rational>& values) const;
  Polynomial instantiate(const Assignment& values) const;

 private:
  Ring params_;
  Ring state_;
  Polynomial body_;
};

/// Pointwise rank: a positive order or infinity.
class Rank {
 public:
  static Rank infinite() { return Rank(std::nullopt); }
  static Rank finite(unsigned k);

  bool is_infinite() const { return !value_; }
  unsigned value() const;
  std::string to_string() const;
  bool operator==(const Rank& other) const = default;

 private:
  explicit Rank(std::optional<unsigned> v) : value_(v) {}
  std::optional<unsigned> value_;
};

/// k-th Lie derivative of p along f. p's ring must contain the state
/// variables; any other variables (template parameters) are constants.
Polynomial lie_derivative(const Polynomial& p, const VectorField& f, unsigned k);

/// Memoized chain L^0 p, L^1 p, ... for one (polynomial, field) pair. The
/// caller owns the cache; concurrent use of a single instance needs external
/// synchronization.
class LieChain {
 public:
  LieChain(Polynomial p, VectorField f);

  /// L^k p, extending the chain as needed.
  const Polynomial& get(unsigned k);
  const Polynomial& base() const { return chain_.front(); }
  const VectorField& field() const { return field_; }
  size_t computed() const { return chain_.size(); }

 private:
  VectorField field_;
  std::vector<Polynomial> chain_;
};

/// Smallest k in [1, bound] with L^k p(x0) != 0, or infinity. `bound` must be
/// at least the chain bound of p (then the cutoff is exact); p must be
/// parameter-free, i.e. use only state variables.
Rank pointwise_rank(const Polynomial& p, const VectorField& f,
                    const std::vector<Rational>& x0, unsigned bound);
Rank pointwise_rank(LieChain& chain, const std::vector<Rational>& x0, unsigned bound);

/// True iff the rank at x0 is finite and L^rank p(x0) < 0.
bool in_transverse_set(const Polynomial& p, const VectorField& f,
                       const std::vector<Rational>& x0, unsigned bound);
bool in_transverse_set(LieChain& chain, const std::vector<Rational>& x0, unsigned bound);

/// True iff f vanishes at the origin.
bool equilibrium_check(const VectorField& f);

}  // namespace rlfgen
