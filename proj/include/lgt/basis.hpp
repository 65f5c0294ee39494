#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lgt/lattice.hpp"
#include "lgt/link.hpp"

namespace lgt {

/// Maximum number of basis states held in memory.
inline constexpr std::uint64_t kMaxBasisStates = std::uint64_t{1} << 26;

/// Parameters of the Gauss-law constraint G_r = div L - Q_r - q_r = 0.
///
/// In 1D open chains the field entering the first site is `background`
/// (L_0). The field leaving the last site is free unless `right_edge`
/// pins it, in which case the last site is constrained as well. In 2D
/// absent boundary links contribute nothing.
struct GaussLaw {
  double background = 0.0;
  std::vector<int> static_charges;  ///< empty or one entry per site
  std::optional<double> right_edge;

  friend bool operator==(const GaussLaw&, const GaussLaw&) = default;
};

/// Which restrictions were applied when the basis was built.
struct SectorTag {
  std::optional<int> fermion_number;
  std::optional<GaussLaw> gauss;

  friend bool operator==(const SectorTag&, const SectorTag&) = default;
};

/// Decoded product state: fermion occupations plus one local index per link.
struct ProductState {
  std::uint64_t occupations = 0;  ///< bit s set <=> site s occupied
  std::vector<int> link_digits;   ///< local link index, see LinkKind::value
};

/// Ordered many-body basis of staggered fermions and link variables.
///
/// Each state is stored as a mixed-radix code
///   code = occupations * d^nL + sum_l digit_l * d^l,
/// and states are kept sorted by code, which orders them first by the
/// fermion bitstring and then by link values.
class SectorBasis {
 public:
  SectorBasis(LatticeGeometry geometry, LinkKind link_kind, bool has_matter,
              std::vector<std::uint64_t> codes, SectorTag tag);

  const LatticeGeometry& geometry() const noexcept { return geometry_; }
  const LinkKind& link_kind() const noexcept { return link_kind_; }
  bool has_matter() const noexcept { return has_matter_; }
  bool has_links() const noexcept { return link_kind_.has_links(); }
  const SectorTag& tag() const noexcept { return tag_; }

  std::size_t size() const noexcept { return codes_.size(); }
  std::size_t num_sites() const noexcept { return geometry_.num_sites(); }
  std::size_t num_links() const noexcept { return has_links() ? geometry_.num_links() : 0; }

  std::span<const std::uint64_t> codes() const noexcept { return codes_; }
  std::uint64_t code(std::size_t i) const { return codes_.at(i); }

  std::optional<std::size_t> find(std::uint64_t code) const;
  std::optional<std::size_t> find(const ProductState& s) const { return find(encode(s)); }

  std::uint64_t encode(const ProductState& s) const;
  ProductState decode(std::uint64_t code) const;
  ProductState state(std::size_t i) const { return decode(codes_.at(i)); }

  std::uint64_t occupations(std::size_t i) const { return codes_.at(i) / matter_stride_; }
  bool occupied(std::size_t i, std::size_t site) const;
  int link_digit(std::size_t i, std::size_t link) const;
  double link_value(std::size_t i, std::size_t link) const;

  /// Number of product states of the unrestricted space (may exceed the cap).
  double product_dimension() const;

 private:
  LatticeGeometry geometry_;
  LinkKind link_kind_;
  bool has_matter_;
  std::vector<std::uint64_t> codes_;
  SectorTag tag_;
  std::vector<std::uint64_t> link_stride_;  // d^l
  std::uint64_t matter_stride_ = 1;         // d^nL
};

using BasisPtr = std::shared_ptr<const SectorBasis>;

/// Full product basis, optionally restricted to a fixed fermion number.
/// Pure-gauge bases are requested with `has_matter = false`.
BasisPtr enumerate_basis(const LatticeGeometry& geometry, const LinkKind& link_kind,
                         std::optional<int> fermion_number = std::nullopt,
                         bool has_matter = true);

/// Matter-only basis of 2^N spin-1/2 (fermion) states on a chain.
BasisPtr spin_chain_basis(std::size_t n_sites, std::optional<int> fermion_number = std::nullopt);

}  // namespace lgt
