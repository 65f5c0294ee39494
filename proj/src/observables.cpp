#include "lgt/observables.hpp"

#include <cmath>
#include <map>

#include "lgt/dense.hpp"
#include "lgt/error.hpp"
#include "lgt/hamiltonians.hpp"

namespace lgt {

namespace {

const SectorBasis& basis_of(const QuantumState& s) {
  if (!s.basis()) throw InvalidArgument("state carries no basis");
  if (static_cast<std::size_t>(s.dim()) != s.basis()->size()) {
    throw InvalidArgument("state dimension does not match its basis");
  }
  return *s.basis();
}

using Key = std::vector<int>;

// Local configuration of the sites selected by `mask` (and their outgoing links).
Key block_key(const SectorBasis& b, std::size_t i, const SiteBlock& mask) {
  Key k;
  const std::uint64_t occ = b.has_matter() ? b.occupations(i) : 0;
  for (std::size_t s = 0; s < b.num_sites(); ++s) {
    if (mask[s] && b.has_matter()) k.push_back(static_cast<int>((occ >> s) & 1U));
  }
  for (std::size_t l = 0; l < b.num_links(); ++l) {
    if (mask[b.geometry().link(l).origin]) k.push_back(b.link_digit(i, l));
  }
  return k;
}

struct Indexer {
  std::map<Key, std::size_t> index;
  std::size_t operator()(const Key& k) { return index.try_emplace(k, index.size()).first->second; }
  std::size_t size() const { return index.size(); }
};

void check_block(const SectorBasis& b, const SiteBlock& block) {
  if (block.size() != b.num_sites()) throw InvalidArgument("block mask needs one entry per site");
}

}  // namespace

std::vector<double> site_densities(const QuantumState& state) {
  const auto& b = basis_of(state);
  if (!b.has_matter()) throw InvalidArgument("particle density needs a basis with matter");
  std::vector<double> occ(b.num_sites(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double p = std::norm(state.amplitudes()(static_cast<Eigen::Index>(i)));
    if (p == 0.0) continue;
    for (std::size_t s = 0; s < b.num_sites(); ++s) {
      if (b.occupied(i, s)) occ[s] += p;
    }
  }
  const double norm2 = state.amplitudes().squaredNorm();
  for (std::size_t s = 0; s < b.num_sites(); ++s) {
    if (b.geometry().parity(s) == SiteParity::odd) occ[s] = norm2 - occ[s];
  }
  return occ;
}

double particle_density(const QuantumState& state) {
  const auto nu = site_densities(state);
  double total = 0.0;
  for (double x : nu) total += x;
  return total / static_cast<double>(nu.size());
}

std::vector<cplx> vacuum_persistence(const EvolutionResult& trajectory, const QuantumState& psi0) {
  std::vector<cplx> out;
  out.reserve(trajectory.states.size());
  for (const auto& psi : trajectory.states) {
    if (psi.size() != psi0.dim()) throw InvalidArgument("trajectory and initial state dimensions differ");
    out.push_back(psi0.amplitudes().dot(psi));
  }
  return out;
}

std::vector<double> electric_field_profile(const QuantumState& state) {
  const auto& b = basis_of(state);
  if (!b.has_links()) {
    throw InvalidArgument("basis has no link variables; use the encoded reconstruction");
  }
  std::vector<double> field(b.num_links(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double p = std::norm(state.amplitudes()(static_cast<Eigen::Index>(i)));
    if (p == 0.0) continue;
    for (std::size_t l = 0; l < b.num_links(); ++l) field[l] += p * b.link_value(i, l);
  }
  return field;
}

std::vector<double> electric_field_profile_encoded(const QuantumState& state, double background) {
  const auto& b = basis_of(state);
  if (b.has_links() || !b.has_matter() || b.geometry().dim() != 1) {
    throw InvalidArgument("encoded reconstruction needs a matter-only chain basis");
  }
  const std::size_t n = b.num_sites();
  std::vector<double> field(n - 1, 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double p = std::norm(state.amplitudes()(static_cast<Eigen::Index>(i)));
    if (p == 0.0) continue;
    for (std::size_t l = 0; l + 1 < n; ++l) {
      field[l] += p * encoded_link_field(b.occupations(i), n, l, background);
    }
  }
  return field;
}

double gauss_violation(const QuantumState& state, const std::vector<SparseOperator>& generators) {
  double total = 0.0;
  for (const auto& g : generators) {
    if (g.dim() != state.dim()) throw InvalidArgument("generator and state dimensions differ");
    total += (g.matrix() * state.amplitudes()).squaredNorm();
  }
  return total;
}

SiteBlock left_block(std::size_t n_sites, std::size_t cut) {
  if (cut < 1 || cut >= n_sites) {
    throw InvalidArgument("cut must satisfy 1 <= cut < " + std::to_string(n_sites));
  }
  SiteBlock b(n_sites, false);
  for (std::size_t s = 0; s < cut; ++s) b[s] = true;
  return b;
}

DenseMatrix reduced_density_matrix(const QuantumState& state, const SiteBlock& block) {
  const auto& b = basis_of(state);
  check_block(b, block);
  SiteBlock rest(block.size());
  for (std::size_t s = 0; s < block.size(); ++s) rest[s] = !block[s];
  Indexer ia;
  Indexer ic;
  std::vector<std::pair<std::size_t, std::size_t>> where(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    where[i] = {ia(block_key(b, i, block)), ic(block_key(b, i, rest))};
  }
  require_dense_capacity(static_cast<Eigen::Index>(ia.size()), "reduced density matrix");
  DenseMatrix psi = DenseMatrix::Zero(ia.size(), ic.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    psi(where[i].first, where[i].second) += state.amplitudes()(static_cast<Eigen::Index>(i));
  }
  return psi * psi.adjoint();
}

double von_neumann_entropy(const DenseMatrix& rho) {
  double s = 0.0;
  for (double p : eigenvalues(rho)) {
    if (p > 1e-14) s -= p * std::log(p);
  }
  return s;
}

double renyi_half_entropy(const DenseMatrix& rho) {
  double tr = 0.0;
  for (double p : eigenvalues(rho)) {
    if (p > 1e-14) tr += std::sqrt(p);
  }
  return 2.0 * std::log(tr);
}

double entanglement_entropy(const QuantumState& state, std::size_t cut) {
  return entanglement_entropy(state, left_block(basis_of(state).num_sites(), cut));
}

double entanglement_entropy(const QuantumState& state, const SiteBlock& block) {
  return von_neumann_entropy(reduced_density_matrix(state, block));
}

double logarithmic_negativity(const QuantumState& state, const SiteBlock& a, const SiteBlock& bm) {
  const auto& b = basis_of(state);
  check_block(b, a);
  check_block(b, bm);
  SiteBlock rest(a.size());
  bool a_any = false;
  bool b_any = false;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a[s] && bm[s]) throw InvalidArgument("negativity blocks must be disjoint");
    a_any = a_any || a[s];
    b_any = b_any || bm[s];
    rest[s] = !a[s] && !bm[s];
  }
  if (!a_any || !b_any) throw InvalidArgument("negativity blocks must be non-empty");

  Indexer ia;
  Indexer ib;
  Indexer ic;
  struct Pos {
    std::size_t a, b, c;
  };
  std::vector<Pos> where(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    where[i] = {ia(block_key(b, i, a)), ib(block_key(b, i, bm)), ic(block_key(b, i, rest))};
  }
  const std::size_t na = ia.size();
  const std::size_t nb = ib.size();
  require_dense_capacity(static_cast<Eigen::Index>(na * nb), "logarithmic negativity");
  DenseMatrix m = DenseMatrix::Zero(na * nb, ic.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    m(where[i].a * nb + where[i].b, where[i].c) += state.amplitudes()(static_cast<Eigen::Index>(i));
  }
  const DenseMatrix rho = m * m.adjoint();
  DenseMatrix pt(na * nb, na * nb);
  for (std::size_t a1 = 0; a1 < na; ++a1) {
    for (std::size_t b1 = 0; b1 < nb; ++b1) {
      for (std::size_t a2 = 0; a2 < na; ++a2) {
        for (std::size_t b2 = 0; b2 < nb; ++b2) {
          pt(a1 * nb + b1, a2 * nb + b2) = rho(a1 * nb + b2, a2 * nb + b1);
        }
      }
    }
  }
  double trace_norm = 0.0;
  for (double e : eigenvalues(pt)) trace_norm += std::abs(e);
  return std::log(trace_norm);
}

double logarithmic_negativity(const QuantumState& state) {
  const std::size_t n = basis_of(state).num_sites();
  if (n < 2) throw InvalidArgument("negativity needs at least two sites");
  SiteBlock a(n, false);
  SiteBlock b(n, false);
  for (std::size_t s = 0; s < n; ++s) (s < n / 2 ? a : b)[s] = true;
  return logarithmic_negativity(state, a, b);
}

std::vector<TrajectoryRecord> record_trajectory(const EvolutionResult& trajectory,
                                                const QuantumState& psi0,
                                                const RecordOptions& options) {
  const auto& b = basis_of(psi0);
  const std::size_t cut = options.cut == 0 ? b.num_sites() / 2 : options.cut;
  const auto persistence = vacuum_persistence(trajectory, psi0);
  std::vector<TrajectoryRecord> out;
  out.reserve(trajectory.states.size());
  for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
    const QuantumState s = trajectory.state(k, psi0.basis());
    TrajectoryRecord r;
    r.time = trajectory.times[k];
    r.nu = particle_density(s);
    r.persistence = persistence[k];
    if (options.encoded_background) {
      r.field = electric_field_profile_encoded(s, *options.encoded_background);
    } else if (b.has_links()) {
      r.field = electric_field_profile(s);
    }
    r.gauss_violation = gauss_violation(s, options.generators);
    r.entropy = entanglement_entropy(s, cut);
    if (options.negativity) r.negativity = logarithmic_negativity(s);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace lgt
