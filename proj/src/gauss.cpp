#include "lgt/gauss.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "lgt/error.hpp"

namespace lgt {

namespace {

constexpr double kGaussTol = 1e-9;
constexpr double kMaxStreamed = 1u << 28;

double static_charge(const GaussLaw& law, std::size_t site) {
  return law.static_charges.empty() ? 0.0 : law.static_charges.at(site);
}

void check_law(const SectorBasis& basis, const GaussLaw& law) {
  if (!basis.has_links()) throw InvalidArgument("Gauss law needs link degrees of freedom");
  if (!law.static_charges.empty() && law.static_charges.size() != basis.num_sites()) {
    throw InvalidArgument("static charges must list one value per site");
  }
}

bool is_open_chain(const LatticeGeometry& g) {
  return g.dim() == 1 && g.boundary(Direction::x) == Boundary::open;
}

double staggered_offset(const LatticeGeometry& g, std::size_t site) {
  return g.parity(site) == SiteParity::odd ? 1.0 : 0.0;
}

template <class LinkValue>
double divergence(const LatticeGeometry& g, std::size_t site, const GaussLaw& law, LinkValue&& lv) {
  double div = 0.0;
  for (int d = 0; d < g.dim(); ++d) {
    const auto dir = static_cast<Direction>(d);
    if (const auto* out = g.outgoing(site, dir)) {
      div += lv(*out);
    } else if (is_open_chain(g)) {
      div += law.right_edge.value_or(0.0);
    }
    if (const auto* in = g.incoming(site, dir)) {
      div -= lv(*in);
    } else if (is_open_chain(g)) {
      div -= law.background;
    }
  }
  return div;
}

}  // namespace

double site_charge(const SectorBasis& basis, std::size_t i, std::size_t site, const GaussLaw& law) {
  double q = static_charge(law, site);
  if (basis.has_matter()) {
    q += (basis.occupied(i, site) ? 1.0 : 0.0) - staggered_offset(basis.geometry(), site);
  }
  return q;
}

double gauss_value(const SectorBasis& basis, std::size_t i, std::size_t site, const GaussLaw& law) {
  const auto& g = basis.geometry();
  if (site >= g.num_sites()) throw InvalidArgument("site index out of range");
  const double div = divergence(g, site, law, [&](std::size_t l) { return basis.link_value(i, l); });
  return div - site_charge(basis, i, site, law);
}

double gauss_value(const SectorBasis& basis, const ProductState& s, std::size_t site,
                   const GaussLaw& law) {
  const auto& g = basis.geometry();
  if (site >= g.num_sites()) throw InvalidArgument("site index out of range");
  const auto& kind = basis.link_kind();
  const double div =
      divergence(g, site, law, [&](std::size_t l) { return kind.value(s.link_digits[l]); });
  double q = static_charge(law, site);
  if (basis.has_matter()) {
    q += static_cast<double>((s.occupations >> site) & 1U) - staggered_offset(g, site);
  }
  return div - q;
}

std::vector<std::size_t> constrained_sites(const LatticeGeometry& geometry, const GaussLaw& law) {
  std::vector<std::size_t> sites;
  for (std::size_t s = 0; s < geometry.num_sites(); ++s) {
    const bool free_right_edge =
        is_open_chain(geometry) && s + 1 == geometry.num_sites() && !law.right_edge;
    if (!free_right_edge) sites.push_back(s);
  }
  return sites;
}

SparseOperator gauss_generator(const BasisPtr& basis, std::size_t site, const GaussLaw& law) {
  check_law(*basis, law);
  std::vector<Triplet> t;
  t.reserve(basis->size());
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const double v = gauss_value(*basis, i, site, law);
    if (v != 0.0) t.emplace_back(static_cast<int>(i), static_cast<int>(i), v);
  }
  return SparseOperator::from_triplets(basis, t);
}

std::vector<SparseOperator> gauss_generators(const BasisPtr& basis, const GaussLaw& law) {
  std::vector<SparseOperator> out;
  for (auto s : constrained_sites(basis->geometry(), law)) out.push_back(gauss_generator(basis, s, law));
  return out;
}

BasisPtr project_gauss_sector(const BasisPtr& basis, const GaussLaw& law) {
  check_law(*basis, law);
  const auto sites = constrained_sites(basis->geometry(), law);
  std::vector<std::uint64_t> kept;
  for (std::size_t i = 0; i < basis->size(); ++i) {
    bool ok = true;
    for (auto s : sites) {
      if (std::abs(gauss_value(*basis, i, s, law)) > kGaussTol) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(basis->code(i));
  }
  SectorTag tag = basis->tag();
  tag.gauss = law;
  return std::make_shared<const SectorBasis>(basis->geometry(), basis->link_kind(),
                                             basis->has_matter(), std::move(kept), std::move(tag));
}

BasisPtr gauss_sector_basis(const LatticeGeometry& geometry, const LinkKind& link_kind,
                            const GaussLaw& law, std::optional<int> fermion_number,
                            bool has_matter) {
  SectorTag tag;
  tag.fermion_number = fermion_number;
  tag.gauss = law;
  // Codec only: an empty basis over the same space.
  const SectorBasis frame(geometry, link_kind, has_matter, {}, tag);
  check_law(frame, law);
  if (fermion_number && !has_matter) throw InvalidArgument("fermion number needs matter sites");

  const std::size_t ns = geometry.num_sites();
  const std::size_t nl = geometry.num_links();
  const std::uint64_t n_bits = has_matter ? (std::uint64_t{1} << ns) : 1;
  std::vector<std::uint64_t> codes;

  auto charge = [&](std::uint64_t bits, std::size_t s) {
    double q = static_charge(law, s);
    if (has_matter) q += static_cast<double>((bits >> s) & 1U) - staggered_offset(geometry, s);
    return q;
  };

  if (geometry.dim() == 1) {
    const bool periodic = geometry.boundary(Direction::x) == Boundary::periodic;
    ProductState st;
    st.link_digits.assign(nl, 0);
    for (std::uint64_t bits = 0; bits < n_bits; ++bits) {
      if (fermion_number && std::popcount(bits) != *fermion_number) continue;
      st.occupations = bits;
      // Incoming field of site 0: background (open) or each allowed wrap value (periodic).
      const int n_start = periodic ? link_kind.dim() : 1;
      for (int k = 0; k < n_start; ++k) {
        double field = periodic ? link_kind.value(k) : law.background;
        bool ok = true;
        for (std::size_t s = 0; s + 1 < ns; ++s) {
          field += charge(bits, s);
          const int digit = link_kind.index_of(field);
          if (digit < 0) {
            ok = false;
            break;
          }
          st.link_digits[s] = digit;
        }
        if (!ok) continue;
        const double leaving = field + charge(bits, ns - 1);
        if (periodic) {
          if (std::abs(leaving - link_kind.value(k)) > kGaussTol) continue;
          st.link_digits[nl - 1] = k;
        } else if (law.right_edge && std::abs(leaving - *law.right_edge) > kGaussTol) {
          continue;
        }
        codes.push_back(frame.encode(st));
      }
    }
    std::sort(codes.begin(), codes.end());
  } else {
    if (frame.product_dimension() > kMaxStreamed) {
      throw CapacityError("product space too large to filter", frame.product_dimension(), kMaxStreamed);
    }
    const auto link_codes = static_cast<std::uint64_t>(
        std::pow(static_cast<double>(link_kind.dim()), static_cast<double>(nl)));
    const auto sites = constrained_sites(geometry, law);
    for (std::uint64_t bits = 0; bits < n_bits; ++bits) {
      if (fermion_number && std::popcount(bits) != *fermion_number) continue;
      for (std::uint64_t lc = 0; lc < link_codes; ++lc) {
        const std::uint64_t code = bits * link_codes + lc;
        const ProductState st = frame.decode(code);
        bool ok = true;
        for (auto s : sites) {
          if (std::abs(gauss_value(frame, st, s, law)) > kGaussTol) {
            ok = false;
            break;
          }
        }
        if (ok) codes.push_back(code);
      }
    }
  }
  if (codes.size() > kMaxBasisStates) {
    throw CapacityError("Gauss sector exceeds the state cap", static_cast<double>(codes.size()),
                        static_cast<double>(kMaxBasisStates));
  }
  return std::make_shared<const SectorBasis>(geometry, link_kind, has_matter, std::move(codes),
                                             std::move(tag));
}

namespace {

template <class F>
SparseOperator diagonal_operator(const BasisPtr& basis, F&& value) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const double v = value(i);
    if (v != 0.0) t.emplace_back(static_cast<int>(i), static_cast<int>(i), v);
  }
  return SparseOperator::from_triplets(basis, t);
}

}  // namespace

SparseOperator electric_field(const BasisPtr& basis, std::size_t link) {
  if (link >= basis->num_links()) throw InvalidArgument("link index out of range");
  return diagonal_operator(basis, [&](std::size_t i) { return basis->link_value(i, link); });
}

SparseOperator link_raising(const BasisPtr& basis, std::size_t link) {
  if (link >= basis->num_links()) throw InvalidArgument("link index out of range");
  const auto& kind = basis->link_kind();
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < basis->size(); ++i) {
    ProductState s = basis->state(i);
    const int k = s.link_digits[link];
    const double amp = kind.raise_amplitude(k);
    if (amp == 0.0) continue;
    s.link_digits[link] = k + 1;
    if (auto j = basis->find(s)) t.emplace_back(static_cast<int>(*j), static_cast<int>(i), amp);
  }
  return SparseOperator::from_triplets(basis, t);
}

SparseOperator number_operator(const BasisPtr& basis, std::size_t site) {
  if (!basis->has_matter()) throw InvalidArgument("basis has no matter sites");
  if (site >= basis->num_sites()) throw InvalidArgument("site index out of range");
  return diagonal_operator(basis, [&](std::size_t i) { return basis->occupied(i, site) ? 1.0 : 0.0; });
}

SparseOperator total_number(const BasisPtr& basis) {
  if (!basis->has_matter()) throw InvalidArgument("basis has no matter sites");
  return diagonal_operator(
      basis, [&](std::size_t i) { return static_cast<double>(std::popcount(basis->occupations(i))); });
}

}  // namespace lgt
