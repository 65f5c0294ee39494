#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "lgt/lattice.hpp"
#include "lgt/sparse_operator.hpp"

namespace lgt {

/// One Fourier harmonic of a periodic drive: V_{n+} e^{i n w t} + V_{n-} e^{-i n w t}.
/// V_{n-} defaults to V_{n+}†; when given it must equal it.
struct Harmonic {
  int n = 1;
  SparseOperator v_plus;
  std::optional<SparseOperator> v_minus;
};

/// H(t) = H0 + sum_n (V_{n+} e^{i n w t} + V_{n-} e^{-i n w t}).
struct DriveSpec {
  SparseOperator h0;
  std::vector<Harmonic> harmonics;
  double omega = 1.0;

  double period() const;
  /// Checks n >= 1, distinct n, matching dimensions and V_{n-} = V_{n+}†.
  void validate() const;
  SparseOperator v_minus(std::size_t k) const;
  /// H(t) as a dense matrix.
  DenseMatrix at(double t) const;
};

/// H0 + (1/w) sum_n (1/n) [V_{n+}, V_{n-}].
SparseOperator effective_hamiltonian_first_order(const DriveSpec& drive);

/// (i/T) log U with the principal branch.
DenseMatrix floquet_hamiltonian(const DenseMatrix& u, double period);

/// Operator-norm distance between H_eff and (i/T) log U(0 -> T).
double floquet_deviation(const DriveSpec& drive, std::size_t n_substeps);

// ---------------------------------------------------------------------------
// Lattice shaking.

/// v(t) = offset + amplitude * cos(harmonic * w t + phase), w = 2 pi / T.
struct SinusoidalOffset {
  double offset = 0.0;
  double amplitude = 0.0;
  int harmonic = 1;
  double phase = 0.0;
};

/// v sampled at t_k = k T / (M - 1), k = 0..M-1; first and last sample coincide.
struct SampledOffset {
  std::vector<double> samples;
};

using SiteOffset = std::variant<SinusoidalOffset, SampledOffset>;

/// Periodic on-site energy offsets v_r(t) with period T.
struct ShakingProtocol {
  double period = 1.0;
  std::vector<SiteOffset> offsets;  ///< one per site
  std::size_t quadrature_points = 4096;
};

/// Renormalization <exp(i dw_l(t))>_T for every link of the geometry, where
/// dw_l is the time integral of v_origin - v_target with its mean removed
/// and the resulting phase also centered.
std::vector<cplx> shaken_hopping_factors(const ShakingProtocol& protocol,
                                         const LatticeGeometry& geometry);

/// Modulus of the relative drive between two sinusoidal sites, |dv|/w_n.
double relative_drive_amplitude(const SinusoidalOffset& a, const SinusoidalOffset& b,
                                double period);

// ---------------------------------------------------------------------------
// Laser-assisted tunnelling.

/// Single-particle Hamiltonian with y hopping -t and x hopping whose amplitude
/// for the hop x -> x+1 is -K exp(-i s Phi y), s = +1 from even x, -1 from odd x.
/// Plaquette fluxes alternate +Phi, -Phi along x.
DenseMatrix laser_assisted_model(double phi, double coupling, const LatticeGeometry& geometry,
                                 double t_y = 1.0);

}  // namespace lgt
