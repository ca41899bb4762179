#pragma once

#include <optional>
#include <vector>

#include "rlfgen/dynamics.h"
#include "rlfgen/polynomial.h"

namespace rlfgen {

/// Raised when Buchberger completion exceeds its guardrails.
class GroebnerLimitError : public LimitExceededError {
 public:
  using LimitExceededError::LimitExceededError;
};

struct GroebnerLimits {
  size_t max_basis_size = 256;
  int max_degree = 40;
  size_t max_pairs = 100000;
  /// Record how each basis element combines the generators. Only
  /// membership_certificate needs this, and it dominates the cost on
  /// larger inputs.
  bool track_cofactors = true;
};

/// Generators of an ideal together with its reduced Groebner basis under a
/// fixed order. Each basis element g_i is recorded as a combination
/// g_i = sum_j cofactors[i][j] * generators[j], which certifies that the
/// basis lies in the ideal.
class IdealBasis {
 public:
  IdealBasis(Ring ring, std::vector<Polynomial> generators, MonomialOrder order,
             std::vector<Polynomial> groebner,
             std::vector<std::vector<Polynomial>> cofactors);

  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Polynomial>& groebner() const { return groebner_; }
  /// Empty when the basis was computed without cofactor tracking.
  const std::vector<std::vector<Polynomial>>& cofactors() const { return cofactors_; }
  bool is_zero_ideal() const { return groebner_.empty(); }

 private:
  Ring ring_;
  std::vector<Polynomial> generators_;
  MonomialOrder order_;
  std::vector<Polynomial> groebner_;
  std::vector<std::vector<Polynomial>> cofactors_;
};

/// Reduced Groebner basis by Buchberger's algorithm with the normal selection
/// strategy and both Buchberger criteria. Zero generators are dropped; `ring`
/// is used when the list is empty.
IdealBasis groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                          const GroebnerLimits& limits = {});
IdealBasis groebner_basis(const Ring& ring, const std::vector<Polynomial>& gens,
                          const MonomialOrder& order, const GroebnerLimits& limits = {});

/// S-polynomial of f and g under `order`.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);

/// True iff p lies in the ideal.
bool member(const Polynomial& p, const IdealBasis& basis);

/// Cofactors c_j with p = sum_j c_j * generators[j], or nullopt when p is not
/// in the ideal. Throws Error if the basis has no cofactors.
std::optional<std::vector<Polynomial>> membership_certificate(const Polynomial& p,
                                                              const IdealBasis& basis);

struct ChainOptions {
  GroebnerLimits limits{.track_cofactors = false};
  /// Largest chain length attempted before giving up.
  unsigned max_length = 32;
};

/// Diagnostics of the ascending chain <L^1 p> in <L^1 p, L^2 p> in ...
struct ChainReport {
  unsigned bound = 0;
  /// basis_sizes[i-1] is the size of the reduced basis of I_i.
  std::vector<size_t> basis_sizes;
  /// chain[k] is L^k p for k = 0..bound+1.
  std::vector<Polynomial> chain;
};

/// The default order for chain computations: grevlex over the template ring
/// (parameters first).
MonomialOrder chain_order(const Template& p);

/// Least i >= 1 with L^{i+1} p in <L^1 p, ..., L^i p>, parameters treated as
/// ring variables.
unsigned chain_bound(const Template& p, const VectorField& f, const ChainOptions& options = {});
ChainReport chain_bound_report(const Template& p, const VectorField& f,
                               const ChainOptions& options = {});

}  // namespace rlfgen
