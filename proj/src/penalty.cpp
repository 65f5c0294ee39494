#include <cmath>

#include "lgt/error.hpp"
#include "lgt/gauss.hpp"
#include "lgt/hamiltonians.hpp"
#include "terms.hpp"

namespace lgt {

namespace {

void validate(const PenaltyParams& p, const SectorBasis& basis) {
  if (p.twice_spin < 1) throw InvalidArgument("bosons per link 2S must be a positive integer");
  const auto& kind = basis.link_kind();
  if (basis.geometry().dim() != 1 || !basis.has_matter() ||
      kind.family() != LinkKind::Family::quantum_link ||
      kind.dim() != p.twice_spin + 1) {
    throw InvalidArgument("penalty model needs a 1D matter basis with (2S+1)-dim boson links");
  }
  if (!(p.gamma > 0.0) || !std::isfinite(p.gamma)) throw InvalidArgument("Gamma must be positive");
  const auto ns = basis.num_sites();
  const auto nl = basis.num_links();
  if ((!p.v_f.empty() && p.v_f.size() != ns) || (!p.v_b1.empty() && p.v_b1.size() != nl) ||
      (!p.v_b2.empty() && p.v_b2.size() != nl)) {
    throw InvalidArgument("on-site potential tables do not match the lattice");
  }
}

double at(const std::vector<double>& v, std::size_t i) { return v.empty() ? 0.0 : v[i]; }

}  // namespace

SparseOperator penalty_bare_hamiltonian(const PenaltyParams& p, const BasisPtr& basis) {
  validate(p, *basis);
  const auto& g = basis->geometry();
  const int two_s = p.twice_spin;
  detail::TripletSink forward(*basis);
  std::vector<Triplet> diagonal;
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const ProductState s = basis->state(i);
    double d = 0.0;
    for (std::size_t r = 0; r < g.num_sites(); ++r) {
      if ((s.occupations >> r) & 1U) d += at(p.v_f, r);
    }
    for (std::size_t l = 0; l < g.num_links(); ++l) {
      const int n2 = s.link_digits[l];
      const int n1 = two_s - n2;
      d += at(p.v_b1, l) * n1 + at(p.v_b2, l) * n2 + p.u * double(n2 - n1) * double(n2 - n1);

      const auto& link = g.link(l);
      if (p.t_f != 0.0) {
        if (auto h = detail::hop(s.occupations, link.origin, link.target)) {
          ProductState target = s;
          target.occupations = h->occupations;
          forward.add(i, target, -p.t_f * h->sign);
        }
      }
      if (p.t_b != 0.0 && n1 > 0) {
        ProductState target = s;
        target.link_digits[l] = n2 + 1;
        forward.add(i, target, p.t_b * std::sqrt(double(n2 + 1) * double(n1)));
      }
    }
    if (d != 0.0) diagonal.emplace_back(static_cast<int>(i), static_cast<int>(i), d);
  }
  return detail::with_adjoint(basis, forward.triplets(), diagonal);
}

SparseOperator penalty_hamiltonian(const PenaltyParams& p, const BasisPtr& basis) {
  SparseOperator h = penalty_bare_hamiltonian(p, basis);
  const auto sites = constrained_sites(basis->geometry(), p.law);
  std::vector<Triplet> pen;
  for (std::size_t i = 0; i < basis->size(); ++i) {
    double s = 0.0;
    for (auto r : sites) {
      const double gv = gauss_value(*basis, i, r, p.law);
      s += gv * gv;
    }
    if (s != 0.0) pen.emplace_back(static_cast<int>(i), static_cast<int>(i), p.gamma * s);
  }
  return h + SparseOperator::from_triplets(basis, pen);
}

}  // namespace lgt
