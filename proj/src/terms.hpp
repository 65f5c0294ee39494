#pragma once

// Matrix-element helpers shared by the Hamiltonian builders.

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "lgt/basis.hpp"
#include "lgt/sparse_operator.hpp"

namespace lgt::detail {

/// c†_to c_from on an occupation bitstring, with the Jordan-Wigner sign
/// given by the parity of occupied sites strictly between the two.
struct HopResult {
  std::uint64_t occupations;
  double sign;
};

inline std::optional<HopResult> hop(std::uint64_t occ, std::size_t to, std::size_t from) {
  const std::uint64_t to_bit = std::uint64_t{1} << to;
  const std::uint64_t from_bit = std::uint64_t{1} << from;
  if (to == from) return (occ & from_bit) ? std::optional<HopResult>({occ, 1.0}) : std::nullopt;
  if (!(occ & from_bit) || (occ & to_bit)) return std::nullopt;
  const std::size_t lo = std::min(to, from);
  const std::size_t hi = std::max(to, from);
  const std::uint64_t between = ((std::uint64_t{1} << hi) - 1) & ~((std::uint64_t{1} << (lo + 1)) - 1);
  const double sign = (std::popcount(occ & between) % 2 == 0) ? 1.0 : -1.0;
  return HopResult{(occ & ~from_bit) | to_bit, sign};
}

/// Accumulates triplets column by column; target states outside the basis
/// are dropped, which projects the operator onto the basis.
class TripletSink {
 public:
  explicit TripletSink(const SectorBasis& basis) : basis_(basis) {}

  void add(std::size_t column, const ProductState& target, cplx amplitude) {
    if (amplitude == cplx{0.0, 0.0}) return;
    if (auto row = basis_.find(target)) {
      triplets_.emplace_back(static_cast<int>(*row), static_cast<int>(column), amplitude);
    }
  }
  void add_diagonal(std::size_t i, double value) {
    if (value != 0.0) triplets_.emplace_back(static_cast<int>(i), static_cast<int>(i), value);
  }
  std::vector<Triplet>& triplets() { return triplets_; }

 private:
  const SectorBasis& basis_;
  std::vector<Triplet> triplets_;
};

/// Adds coeff * X + conj(coeff) * X† to the sink for a generator X that maps
/// basis state `i` to `target` with amplitude `amp`. X† is added by
/// transposition once all columns are processed, see `with_adjoint`.
inline SparseOperator with_adjoint(const BasisPtr& basis, const std::vector<Triplet>& forward,
                                   const std::vector<Triplet>& diagonal) {
  std::vector<Triplet> all;
  all.reserve(2 * forward.size() + diagonal.size());
  for (const auto& t : forward) {
    all.push_back(t);
    all.emplace_back(t.col(), t.row(), std::conj(t.value()));
  }
  all.insert(all.end(), diagonal.begin(), diagonal.end());
  return SparseOperator::from_triplets(basis, all);
}

}  // namespace lgt::detail

namespace lgt::detail {

/// Generic gauge-matter Hamiltonian on a basis with links:
///   sum_l hop_l c†_o(l) U_l c_t(l) + h.c. + sum_r mass_r n_r
///   + sum_l electric_l L_l^2 - plaquette * sum_p (U_p + U_p†).
struct GaugeMatterTerms {
  std::vector<cplx> hop;
  std::vector<double> mass;
  std::vector<double> electric;
  double plaquette = 0.0;
};

SparseOperator build_gauge_matter(const BasisPtr& basis, const GaugeMatterTerms& terms);

}  // namespace lgt::detail
