#include <cmath>

#include "lgt/error.hpp"
#include "terms.hpp"

namespace lgt::detail {

SparseOperator build_gauge_matter(const BasisPtr& basis, const GaugeMatterTerms& terms) {
  const auto& g = basis->geometry();
  const auto& kind = basis->link_kind();
  const std::size_t nl = basis->num_links();
  if (!basis->has_links()) throw InvalidArgument("gauge-matter Hamiltonian needs link variables");
  if ((!terms.hop.empty() && terms.hop.size() != nl) ||
      (!terms.electric.empty() && terms.electric.size() != nl) ||
      (!terms.mass.empty() && terms.mass.size() != g.num_sites())) {
    throw InvalidArgument("coupling tables do not match the lattice");
  }
  const bool hopping = !terms.hop.empty() && basis->has_matter();
  const bool plaquettes = terms.plaquette != 0.0 && g.num_plaquettes() > 0;

  TripletSink forward(*basis);
  std::vector<Triplet> diagonal;
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const ProductState s = basis->state(i);

    double d = 0.0;
    if (basis->has_matter() && !terms.mass.empty()) {
      for (std::size_t r = 0; r < g.num_sites(); ++r) {
        if ((s.occupations >> r) & 1U) d += terms.mass[r];
      }
    }
    if (!terms.electric.empty()) {
      for (std::size_t l = 0; l < nl; ++l) {
        const double v = kind.value(s.link_digits[l]);
        d += terms.electric[l] * v * v;
      }
    }
    if (d != 0.0) diagonal.emplace_back(static_cast<int>(i), static_cast<int>(i), d);

    if (hopping) {
      for (std::size_t l = 0; l < nl; ++l) {
        if (terms.hop[l] == cplx{0.0, 0.0}) continue;
        const auto& link = g.link(l);
        const int k = s.link_digits[l];
        const double amp = kind.raise_amplitude(k);
        if (amp == 0.0) continue;
        const auto h = hop(s.occupations, link.origin, link.target);
        if (!h) continue;
        ProductState target = s;
        target.occupations = h->occupations;
        target.link_digits[l] = k + 1;
        forward.add(i, target, terms.hop[l] * (h->sign * amp));
      }
    }

    if (plaquettes) {
      for (std::size_t p = 0; p < g.num_plaquettes(); ++p) {
        ProductState target = s;
        double amp = 1.0;
        for (const auto& ol : g.plaquette_links(p)) {
          int& k = target.link_digits[ol.link];
          if (ol.forward) {
            amp *= kind.raise_amplitude(k);
            ++k;
          } else {
            amp *= kind.raise_amplitude(k - 1);
            --k;
          }
          if (amp == 0.0) break;
        }
        if (amp != 0.0) forward.add(i, target, -terms.plaquette * amp);
      }
    }
  }
  return with_adjoint(basis, forward.triplets(), diagonal);
}

}  // namespace lgt::detail
