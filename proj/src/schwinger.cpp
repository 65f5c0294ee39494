#include <cmath>

#include "lgt/error.hpp"
#include "lgt/hamiltonians.hpp"
#include "terms.hpp"

namespace lgt {

SparseOperator schwinger_hamiltonian(const SchwingerParams& p, const BasisPtr& basis) {
  const auto& g = basis->geometry();
  if (g.dim() != 1) throw InvalidArgument("the Schwinger model lives on a 1D chain");
  if (!basis->has_matter() || !basis->has_links()) {
    throw InvalidArgument("the Schwinger model needs matter sites and link variables");
  }
  if (!(p.t >= 0.0) || !(p.g2 >= 0.0) || !std::isfinite(p.m)) {
    throw InvalidArgument("Schwinger couplings need t >= 0, g^2 >= 0 and finite m");
  }

  detail::GaugeMatterTerms terms;
  const cplx hop = p.phase == HoppingPhase::imaginary ? cplx{0.0, -p.t} : cplx{-p.t, 0.0};
  terms.hop.assign(g.num_links(), hop);
  terms.electric.assign(g.num_links(), 0.5 * p.g2);
  terms.mass.resize(g.num_sites());
  for (std::size_t r = 0; r < g.num_sites(); ++r) terms.mass[r] = p.m * sign(g.parity(r));
  return detail::build_gauge_matter(basis, terms);
}

}  // namespace lgt
