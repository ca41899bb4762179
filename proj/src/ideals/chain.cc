#include "rlfgen/ideals.h"

namespace rlfgen {

MonomialOrder chain_order(const Template& p) {
  return MonomialOrder::grevlex(p.body().ring().size());
}

ChainReport chain_bound_report(const Template& p, const VectorField& f,
                               const ChainOptions& options) {
  const Ring& ring = p.body().ring();
  const MonomialOrder order = chain_order(p);
  LieChain chain(p.body(), f);
  ChainReport report;
  std::vector<Polynomial> gens;
  for (unsigned i = 1; i <= options.max_length; ++i) {
    gens.push_back(chain.get(i));
    const IdealBasis basis = groebner_basis(ring, gens, order, options.limits);
    report.basis_sizes.push_back(basis.groebner().size());
    if (member(chain.get(i + 1), basis)) {
      report.bound = i;
      for (unsigned k = 0; k <= i + 1; ++k) report.chain.push_back(chain.get(k));
      return report;
    }
  }
  throw LimitExceededError("ideal chain did not stabilize within " +
                           std::to_string(options.max_length) + " Lie derivatives");
}

unsigned chain_bound(const Template& p, const VectorField& f, const ChainOptions& options) {
  return chain_bound_report(p, f, options).bound;
}

}  // namespace rlfgen
