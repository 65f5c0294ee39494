#pragma once

#include <vector>

#include "lgt/basis.hpp"
#include "lgt/sparse_operator.hpp"

namespace lgt {

/// Dynamical plus static charge of `site` in basis state `i`:
/// Q_r = n_r - (1 - (-1)^r)/2 + q_r. Pure-gauge bases carry only q_r.
double site_charge(const SectorBasis& basis, std::size_t i, std::size_t site, const GaussLaw& law);

/// Eigenvalue of G_site on basis state `i` (generators are diagonal here).
double gauss_value(const SectorBasis& basis, std::size_t i, std::size_t site, const GaussLaw& law);

/// Same, evaluated on a decoded product state.
double gauss_value(const SectorBasis& basis, const ProductState& s, std::size_t site,
                   const GaussLaw& law);

/// Sites whose generator is imposed by `law` on this geometry.
std::vector<std::size_t> constrained_sites(const LatticeGeometry& geometry, const GaussLaw& law);

/// G_r as a diagonal sparse operator.
SparseOperator gauss_generator(const BasisPtr& basis, std::size_t site, const GaussLaw& law = {});

/// Generators of every constrained site, in site order.
std::vector<SparseOperator> gauss_generators(const BasisPtr& basis, const GaussLaw& law = {});

/// States of `basis` annihilated by every constrained generator.
/// An empty result is returned as an empty basis, not an error.
BasisPtr project_gauss_sector(const BasisPtr& basis, const GaussLaw& law);

/// Builds the Gauss sector directly without materializing the product
/// space. In 1D the link values are solved site by site from the fermion
/// configuration; in 2D the product space is streamed and filtered.
BasisPtr gauss_sector_basis(const LatticeGeometry& geometry, const LinkKind& link_kind,
                            const GaussLaw& law, std::optional<int> fermion_number = std::nullopt,
                            bool has_matter = true);

/// Electric field L on one link, lifted to the many-body basis.
SparseOperator electric_field(const BasisPtr& basis, std::size_t link);
/// Link raising operator U on one link, lifted to the many-body basis.
SparseOperator link_raising(const BasisPtr& basis, std::size_t link);
/// Fermion number operator n_site.
SparseOperator number_operator(const BasisPtr& basis, std::size_t site);
/// Total fermion number.
SparseOperator total_number(const BasisPtr& basis);

}  // namespace lgt
