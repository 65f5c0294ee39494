#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "lgt/basis.hpp"
#include "lgt/sparse_operator.hpp"

namespace lgt {

/// Phase convention of the gauge-matter hopping.
///   imaginary: -i t sum (c†_n U_n c_{n+1} - h.c.)
///   real:        -t sum (c†_n U_n c_{n+1} + h.c.)
/// The two are related by c_n -> (-i)^n c_n.
enum class HoppingPhase { imaginary, real };

/// Couplings of the 1D staggered-fermion gauge model. Chain length,
/// boundary, link kind and background field live in the basis.
struct SchwingerParams {
  double t = 1.0;
  double m = 0.0;
  double g2 = 0.0;
  HoppingPhase phase = HoppingPhase::imaginary;
};

/// H = hop + m sum (-1)^n n_n + (g^2/2) sum L_n^2 on a 1D basis with links.
SparseOperator schwinger_hamiltonian(const SchwingerParams& params, const BasisPtr& basis);

// ---------------------------------------------------------------------------
// Link-free spin model obtained by solving Gauss's law on an open chain.

struct SpinModelParams {
  std::size_t n_sites = 2;
  double t = 1.0;
  double m = 0.0;
  double g2 = 0.0;
  double background = 0.0;  ///< L_0
};

/// Diagonal part of the encoded model written as
///   constant + sum_l h_l sz_l + sum_{l<k} J_lk sz_l sz_k.
struct SpinModelCoefficients {
  double constant = 0.0;
  Eigen::VectorXd field;     ///< h_l
  Eigen::MatrixXd coupling;  ///< J, symmetric with zero diagonal
};

/// Exact expansion of m sum (-1)^n n_n + (g^2/2) sum_{n<N} L_n^2 with
/// L_n = L_0 + 1/2 sum_{l<=n} (sz_l + (-1)^l).
SpinModelCoefficients spin_model_coefficients(const SpinModelParams& params);

/// t sum (s+_n s-_{n+1} + h.c.) plus the diagonal block above, on the
/// 2^N spin basis (up = occupied).
SparseOperator spin_encoded_hamiltonian(const SpinModelParams& params);
/// Same operator restricted to a given matter-only chain basis.
SparseOperator spin_encoded_hamiltonian(const SpinModelParams& params, const BasisPtr& basis);

/// The encoded model split as {hopping on even bonds, hopping on odd bonds,
/// diagonal part}; the three terms sum to spin_encoded_hamiltonian.
std::vector<SparseOperator> spin_encoded_terms(const SpinModelParams& params);
std::vector<SparseOperator> spin_encoded_terms(const SpinModelParams& params, const BasisPtr& basis);

/// Reconstructed field L_n on link n (0-based, n < N-1) for a spin basis state.
double encoded_link_field(std::uint64_t occupations, std::size_t n_sites, std::size_t link,
                          double background);

// ---------------------------------------------------------------------------
// Energy-penalty model with Schwinger bosons on the links.

/// Each link holds 2S bosons split between a left (sigma = 1) and right
/// (sigma = 2) mode; the basis is a quantum-link basis of spin S with
/// n2 = k and n1 = 2S - k for local index k, so L = (n2 - n1)/2.
struct PenaltyParams {
  double t_f = 1.0;
  double t_b = 1.0;
  std::vector<double> v_f;   ///< per site, empty = 0
  std::vector<double> v_b1;  ///< per link, empty = 0
  std::vector<double> v_b2;  ///< per link, empty = 0
  double u = 0.0;
  double gamma = 1.0;
  int twice_spin = 1;
  GaussLaw law;  ///< defines which G_n enter the penalty
};

/// Gauge-violating part H_0 of the penalty model.
SparseOperator penalty_bare_hamiltonian(const PenaltyParams& params, const BasisPtr& basis);
/// H_0 + Gamma sum_n G_n^2.
SparseOperator penalty_hamiltonian(const PenaltyParams& params, const BasisPtr& basis);

/// Second-order low-energy Hamiltonian
///   G H0 G - (1/Gamma) G H0 P (sum G_x^2)^+ P H0 G
/// restricted to the common kernel of the generators.
struct EffectiveHamiltonian {
  DenseMatrix kernel;  ///< orthonormal kernel vectors as columns (parent basis)
  DenseMatrix first_order;
  DenseMatrix second_order;  ///< already divided by -Gamma
  SparseOperator h_eff;      ///< first_order + second_order on the kernel
  std::size_t kernel_dim() const { return static_cast<std::size_t>(kernel.cols()); }
};

EffectiveHamiltonian effective_second_order(const SparseOperator& h0,
                                            const std::vector<SparseOperator>& generators,
                                            double gamma);

// ---------------------------------------------------------------------------
// Two-dimensional models.

/// (g^2/2) sum L^2 - (1/(4 g^2)) sum_plaquettes (U_p + U_p†) on a pure-gauge basis.
SparseOperator pure_gauge_2d_hamiltonian(const BasisPtr& basis, double g2);
/// Convenience overload over the full pure-gauge product basis.
SparseOperator pure_gauge_2d_hamiltonian(const LatticeGeometry& geometry, double g2,
                                         const LinkKind& link_kind);

struct Staggered2DParams {
  double t = 1.0;
  double m = 0.0;
  double g2 = 1.0;
  std::optional<double> t_y;        ///< defaults to t
  std::optional<double> g2_y;       ///< electric coupling on y links, defaults to g2
  std::optional<double> plaquette;  ///< defaults to 1/(4 g2)
};

/// -i sum eta_i(r) t_i (c†_r U c_{r+i} - h.c.) + m sum (-1)^r n_r
/// + sum (g_i^2/2) L^2 - K sum (U_p + U_p†), eta_x = 1, eta_y = (-1)^{r_1}.
SparseOperator staggered_hamiltonian_2d(const Staggered2DParams& params, const BasisPtr& basis);

}  // namespace lgt
