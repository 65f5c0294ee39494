#include <cmath>

#include "lgt/error.hpp"
#include "lgt/hamiltonians.hpp"
#include "terms.hpp"

namespace lgt {

namespace {

// (-1)^l on the 1-based label of 0-based site s.
double stagger(std::size_t s) { return (s + 1) % 2 == 0 ? 1.0 : -1.0; }

void validate(const SpinModelParams& p) {
  if (p.n_sites < 2) throw InvalidArgument("the encoded model needs at least 2 sites");
  if (!(p.t >= 0.0) || !(p.g2 >= 0.0) || !std::isfinite(p.m) || !std::isfinite(p.background)) {
    throw InvalidArgument("encoded model couplings need t >= 0, g^2 >= 0, finite m and L0");
  }
}

}  // namespace

SpinModelCoefficients spin_model_coefficients(const SpinModelParams& p) {
  validate(p);
  const std::size_t n = p.n_sites;
  SpinModelCoefficients c;
  c.field = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  c.coupling = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  // m (-1)^l n_l = (m/2)(-1)^l sz_l + (m/2)(-1)^l
  for (std::size_t l = 0; l < n; ++l) {
    c.field(l) += 0.5 * p.m * stagger(l);
    c.constant += 0.5 * p.m * stagger(l);
  }

  // L_k = offset_k + 1/2 sum_{l<=k} sz_l, offset_k = L0 + 1/2 sum_{l<=k} (-1)^l
  // L_k^2 = offset^2 + offset sum sz + (k+1)/4 + 1/2 sum_{l<j<=k} sz_l sz_j
  double offset = p.background;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    offset += 0.5 * stagger(k);
    const double w = 0.5 * p.g2;
    c.constant += w * (offset * offset + 0.25 * static_cast<double>(k + 1));
    for (std::size_t l = 0; l <= k; ++l) {
      c.field(l) += w * offset;
      for (std::size_t j = l + 1; j <= k; ++j) {
        c.coupling(l, j) += 0.5 * w;
        c.coupling(j, l) += 0.5 * w;
      }
    }
  }
  return c;
}

double encoded_link_field(std::uint64_t occupations, std::size_t n_sites, std::size_t link,
                          double background) {
  if (link + 1 >= n_sites) throw InvalidArgument("link index out of range for the open chain");
  double field = background;
  for (std::size_t l = 0; l <= link; ++l) {
    const double sz = ((occupations >> l) & 1U) ? 1.0 : -1.0;
    field += 0.5 * (sz + stagger(l));
  }
  return field;
}

SparseOperator spin_encoded_hamiltonian(const SpinModelParams& p) {
  validate(p);
  return spin_encoded_hamiltonian(p, spin_chain_basis(p.n_sites));
}

namespace {

// bonds: -1 all, 0 even bonds only, 1 odd bonds only, 2 none.
SparseOperator build_encoded(const SpinModelParams& p, const BasisPtr& basis, bool with_diagonal,
                             int bonds) {
  const auto coeff = spin_model_coefficients(p);
  if (basis->has_links() || !basis->has_matter() || basis->geometry().dim() != 1 ||
      basis->num_sites() != p.n_sites) {
    throw InvalidArgument("the encoded model needs a matter-only chain basis of matching length");
  }
  const std::size_t n = p.n_sites;
  detail::TripletSink forward(*basis);
  std::vector<Triplet> diagonal;
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const std::uint64_t occ = basis->occupations(i);
    double d = coeff.constant;
    for (std::size_t l = 0; l < n; ++l) {
      const double sl = ((occ >> l) & 1U) ? 1.0 : -1.0;
      d += coeff.field(l) * sl;
      for (std::size_t j = l + 1; j < n; ++j) {
        const double sj = ((occ >> j) & 1U) ? 1.0 : -1.0;
        d += coeff.coupling(l, j) * sl * sj;
      }
    }
    if (with_diagonal && d != 0.0) diagonal.emplace_back(static_cast<int>(i), static_cast<int>(i), d);

    if (p.t != 0.0) {
      // s+_l s-_{l+1}: spin flips on neighbors carry no string.
      for (std::size_t l = 0; l + 1 < n; ++l) {
        if (bonds == 2 || (bonds >= 0 && static_cast<int>(l % 2) != bonds)) continue;
        const std::uint64_t lo = std::uint64_t{1} << l;
        const std::uint64_t hi = std::uint64_t{1} << (l + 1);
        if ((occ & hi) && !(occ & lo)) {
          ProductState target;
          target.occupations = (occ & ~hi) | lo;
          forward.add(i, target, p.t);
        }
      }
    }
  }
  return detail::with_adjoint(basis, forward.triplets(), diagonal);
}

}  // namespace

SparseOperator spin_encoded_hamiltonian(const SpinModelParams& p, const BasisPtr& basis) {
  return build_encoded(p, basis, true, -1);
}

std::vector<SparseOperator> spin_encoded_terms(const SpinModelParams& p, const BasisPtr& basis) {
  return {build_encoded(p, basis, false, 0), build_encoded(p, basis, false, 1),
          build_encoded(p, basis, true, 2)};
}

std::vector<SparseOperator> spin_encoded_terms(const SpinModelParams& p) {
  validate(p);
  return spin_encoded_terms(p, spin_chain_basis(p.n_sites));
}

}  // namespace lgt
