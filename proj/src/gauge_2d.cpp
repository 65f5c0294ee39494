#include <cmath>

#include "lgt/error.hpp"
#include "lgt/hamiltonians.hpp"
#include "terms.hpp"

namespace lgt {

SparseOperator pure_gauge_2d_hamiltonian(const BasisPtr& basis, double g2) {
  const auto& g = basis->geometry();
  if (g.dim() != 2) throw InvalidArgument("the plaquette model needs a 2D lattice");
  if (basis->has_matter()) throw InvalidArgument("the plaquette model is pure gauge");
  if (!basis->has_links()) throw InvalidArgument("the plaquette model needs link variables");
  if (!(g2 > 0.0) || !std::isfinite(g2)) throw InvalidArgument("g^2 must be positive and finite");

  detail::GaugeMatterTerms terms;
  terms.electric.assign(g.num_links(), 0.5 * g2);
  terms.plaquette = 1.0 / (4.0 * g2);
  return detail::build_gauge_matter(basis, terms);
}

SparseOperator pure_gauge_2d_hamiltonian(const LatticeGeometry& geometry, double g2,
                                         const LinkKind& link_kind) {
  if (geometry.dim() != 2) throw InvalidArgument("the plaquette model needs a 2D lattice");
  return pure_gauge_2d_hamiltonian(enumerate_basis(geometry, link_kind, std::nullopt, false), g2);
}

SparseOperator staggered_hamiltonian_2d(const Staggered2DParams& p, const BasisPtr& basis) {
  const auto& g = basis->geometry();
  if (g.dim() != 2) throw InvalidArgument("the staggered 2D model needs a 2D lattice");
  if (!basis->has_matter() || !basis->has_links()) {
    throw InvalidArgument("the staggered 2D model needs matter sites and link variables");
  }
  const double t_y = p.t_y.value_or(p.t);
  const double g2_y = p.g2_y.value_or(p.g2);
  if (!p.plaquette && !(p.g2 > 0.0)) {
    throw InvalidArgument("plaquette coupling 1/(4 g^2) needs g^2 > 0");
  }

  detail::GaugeMatterTerms terms;
  terms.hop.resize(g.num_links());
  terms.electric.resize(g.num_links());
  for (std::size_t l = 0; l < g.num_links(); ++l) {
    const auto& link = g.link(l);
    if (link.dir == Direction::x) {
      terms.hop[l] = cplx{0.0, -p.t};
      terms.electric[l] = 0.5 * p.g2;
    } else {
      // eta_y = (-1)^{r_1} on the 1-based x label.
      const double eta = (g.coordinates(link.origin)[0] + 1) % 2 == 0 ? 1.0 : -1.0;
      terms.hop[l] = cplx{0.0, -t_y * eta};
      terms.electric[l] = 0.5 * g2_y;
    }
  }
  terms.mass.resize(g.num_sites());
  for (std::size_t r = 0; r < g.num_sites(); ++r) terms.mass[r] = p.m * sign(g.parity(r));
  terms.plaquette = p.plaquette.value_or(p.g2 > 0.0 ? 1.0 / (4.0 * p.g2) : 0.0);
  return detail::build_gauge_matter(basis, terms);
}

}  // namespace lgt
