#include "lgt/basis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "lgt/error.hpp"

namespace lgt {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

}  // namespace

SectorBasis::SectorBasis(LatticeGeometry geometry, LinkKind link_kind, bool has_matter,
                         std::vector<std::uint64_t> codes, SectorTag tag)
    : geometry_(std::move(geometry)),
      link_kind_(link_kind),
      has_matter_(has_matter),
      codes_(std::move(codes)),
      tag_(std::move(tag)) {
  if (geometry_.num_sites() > 63) throw CapacityError("too many sites", geometry_.num_sites(), 63);
  if (product_dimension() > 9.2e18) {
    throw CapacityError("product space not representable", product_dimension(), 9.2e18);
  }
  const auto d = static_cast<std::uint64_t>(link_kind_.dim());
  std::uint64_t stride = 1;
  for (std::size_t l = 0; l < num_links(); ++l) {
    link_stride_.push_back(stride);
    stride *= d;
  }
  matter_stride_ = stride;
  if (!std::is_sorted(codes_.begin(), codes_.end()) ||
      std::adjacent_find(codes_.begin(), codes_.end()) != codes_.end()) {
    throw InvalidArgument("basis codes must be strictly increasing");
  }
}

double SectorBasis::product_dimension() const {
  double dim = has_matter_ ? std::ldexp(1.0, static_cast<int>(num_sites())) : 1.0;
  return dim * std::pow(static_cast<double>(link_kind_.dim()), static_cast<double>(num_links()));
}

std::optional<std::size_t> SectorBasis::find(std::uint64_t code) const {
  const auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
  if (it == codes_.end() || *it != code) return std::nullopt;
  return static_cast<std::size_t>(it - codes_.begin());
}

std::uint64_t SectorBasis::encode(const ProductState& s) const {
  if (s.link_digits.size() != num_links()) throw InvalidArgument("wrong number of link digits");
  if (has_matter_ && num_sites() < 64 && (s.occupations >> num_sites()) != 0) {
    throw InvalidArgument("occupation bits beyond the last site");
  }
  std::uint64_t code = s.occupations * matter_stride_;
  for (std::size_t l = 0; l < num_links(); ++l) {
    if (s.link_digits[l] < 0 || s.link_digits[l] >= link_kind_.dim()) {
      throw InvalidArgument("link digit out of range");
    }
    code += static_cast<std::uint64_t>(s.link_digits[l]) * link_stride_[l];
  }
  return code;
}

ProductState SectorBasis::decode(std::uint64_t code) const {
  ProductState s;
  s.occupations = code / matter_stride_;
  std::uint64_t rest = code % matter_stride_;
  const auto d = static_cast<std::uint64_t>(link_kind_.dim());
  s.link_digits.resize(num_links());
  for (std::size_t l = 0; l < num_links(); ++l) {
    s.link_digits[l] = static_cast<int>(rest % d);
    rest /= d;
  }
  return s;
}

bool SectorBasis::occupied(std::size_t i, std::size_t site) const {
  return ((codes_.at(i) / matter_stride_) >> site) & 1U;
}

int SectorBasis::link_digit(std::size_t i, std::size_t link) const {
  const auto d = static_cast<std::uint64_t>(link_kind_.dim());
  return static_cast<int>((codes_.at(i) / link_stride_.at(link)) % d);
}

double SectorBasis::link_value(std::size_t i, std::size_t link) const {
  return link_kind_.value(link_digit(i, link));
}

BasisPtr enumerate_basis(const LatticeGeometry& geometry, const LinkKind& link_kind,
                         std::optional<int> fermion_number, bool has_matter) {
  if (fermion_number && !has_matter) {
    throw InvalidArgument("a fermion number restriction needs matter sites");
  }
  const auto ns = static_cast<int>(geometry.num_sites());
  const std::size_t nl = link_kind.has_links() ? geometry.num_links() : 0;
  if (fermion_number && (*fermion_number < 0 || *fermion_number > ns)) {
    throw InvalidArgument("fermion number outside [0, number of sites]");
  }
  const double link_space = std::pow(static_cast<double>(link_kind.dim()), static_cast<double>(nl));
  const double matter_space = !has_matter      ? 1.0
                              : fermion_number ? binomial(ns, *fermion_number)
                                               : std::ldexp(1.0, ns);
  const double count = matter_space * link_space;
  if (count > static_cast<double>(kMaxBasisStates)) {
    throw CapacityError("basis dimension exceeds the state cap", count,
                        static_cast<double>(kMaxBasisStates));
  }

  const auto link_codes = static_cast<std::uint64_t>(link_space);
  std::vector<std::uint64_t> codes;
  codes.reserve(static_cast<std::size_t>(count));
  const std::uint64_t n_bits = has_matter ? (std::uint64_t{1} << ns) : 1;
  for (std::uint64_t bits = 0; bits < n_bits; ++bits) {
    if (fermion_number && std::popcount(bits) != *fermion_number) continue;
    for (std::uint64_t lc = 0; lc < link_codes; ++lc) codes.push_back(bits * link_codes + lc);
  }
  SectorTag tag;
  tag.fermion_number = fermion_number;
  return std::make_shared<const SectorBasis>(geometry, link_kind, has_matter, std::move(codes),
                                             std::move(tag));
}

BasisPtr spin_chain_basis(std::size_t n_sites, std::optional<int> fermion_number) {
  return enumerate_basis(chain(n_sites), LinkKind::none(), fermion_number, true);
}

}  // namespace lgt
