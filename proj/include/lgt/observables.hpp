#pragma once

#include <optional>
#include <vector>

#include "lgt/dynamics.hpp"
#include "lgt/sparse_operator.hpp"

namespace lgt {

/// nu = (1/N) sum_n nu_n with nu_n = n_n on even sites and 1 - n_n on odd
/// sites (1-based labels), so the bare vacuum has nu = 0.
double particle_density(const QuantumState& state);
/// Per-site nu_n.
std::vector<double> site_densities(const QuantumState& state);

/// <psi0|psi(t_k)> for every recorded time.
std::vector<cplx> vacuum_persistence(const EvolutionResult& trajectory, const QuantumState& psi0);

/// <L_l> for every link of a basis with link variables.
std::vector<double> electric_field_profile(const QuantumState& state);
/// <L_n> reconstructed from the spins of an open-chain encoded state.
std::vector<double> electric_field_profile_encoded(const QuantumState& state, double background);

/// sum_r <psi|G_r^2|psi>.
double gauss_violation(const QuantumState& state, const std::vector<SparseOperator>& generators);

/// Site membership of a bipartition; links follow their origin site.
using SiteBlock = std::vector<bool>;

/// Sites [0, cut) of a chain basis.
SiteBlock left_block(std::size_t n_sites, std::size_t cut);

/// Reduced density matrix of the sites in `block`.
DenseMatrix reduced_density_matrix(const QuantumState& state, const SiteBlock& block);

/// Von Neumann entropy (natural log) of a density matrix; eigenvalues
/// below 1e-14 are dropped.
double von_neumann_entropy(const DenseMatrix& rho);
/// Renyi entropy of order 1/2, 2 ln tr sqrt(rho).
double renyi_half_entropy(const DenseMatrix& rho);

/// S of the sites [0, cut), 1 <= cut < N.
double entanglement_entropy(const QuantumState& state, std::size_t cut);
/// S of an arbitrary block.
double entanglement_entropy(const QuantumState& state, const SiteBlock& block);

/// ln || rho_AB^{T_B} ||_1 for disjoint blocks A and B; the partial
/// transpose acts on the qubit (Jordan-Wigner) representation.
double logarithmic_negativity(const QuantumState& state, const SiteBlock& a, const SiteBlock& b);
/// Half/half default: A = first N/2 sites, B = the rest.
double logarithmic_negativity(const QuantumState& state);

struct TrajectoryRecord {
  double time = 0.0;
  double nu = 0.0;
  cplx persistence;
  std::vector<double> field;
  double gauss_violation = 0.0;
  double entropy = 0.0;
  std::optional<double> negativity;
};

struct RecordOptions {
  /// Reconstruct fields from the encoded spins with this L0 (matter-only bases).
  std::optional<double> encoded_background;
  std::vector<SparseOperator> generators;
  std::size_t cut = 0;  ///< 0 = N/2
  bool negativity = false;
};

std::vector<TrajectoryRecord> record_trajectory(const EvolutionResult& trajectory,
                                                const QuantumState& psi0,
                                                const RecordOptions& options);

}  // namespace lgt
