#pragma once

#include <optional>
#include <vector>

#include "lgt/lattice.hpp"
#include "lgt/sparse_operator.hpp"

namespace lgt {

/// Static link phases theta_l, one per link in geometry order.
/// The hop origin -> target of link l carries exp(i theta_l).
struct PeierlsField {
  std::vector<double> theta;

  /// Landau gauge theta_x = 0, theta_y(x, y) = sum_{x' < x} Phi(x', y) for
  /// fluxes given per plaquette in plaquette order.
  static PeierlsField landau(const LatticeGeometry& geometry, const std::vector<double>& fluxes);
  /// Uniform flux per plaquette.
  static PeierlsField uniform(const LatticeGeometry& geometry, double flux);
  /// theta_l -> theta_l + chi(origin) - chi(target); leaves all fluxes unchanged.
  PeierlsField gauge_transformed(const LatticeGeometry& geometry, const std::vector<double>& chi) const;
};

/// -t sum_l (e^{i theta_l} a†_target a_origin + h.c.) as a dense matrix.
DenseMatrix peierls_hamiltonian(const LatticeGeometry& geometry, const PeierlsField& field,
                                double t = 1.0);

/// Phase of H(r+x,r) H(r+x+y,r+x) H(r+y,r+x+y) H(r,r+y) for each plaquette,
/// in (-pi, pi]. The sign of the hopping amplitude is removed first.
std::vector<double> plaquette_fluxes(const LatticeGeometry& geometry, const DenseMatrix& h);

// ---------------------------------------------------------------------------
// Hofstadter model at flux alpha = p/q per plaquette.

struct HofstadterGrid {
  std::size_t nx = 20;  ///< points along k_x in [0, 2 pi / q)
  std::size_t ny = 20;  ///< points along k_y in [0, 2 pi)
};

struct HofstadterBands {
  int p = 0;
  int q = 1;
  HofstadterGrid grid;
  std::vector<double> kx;
  std::vector<double> ky;
  /// energies[(ix * ny + iy) * q + n], bands ascending
  std::vector<double> energies;
  /// eigenvectors per k-point (columns ordered like the energies)
  std::vector<DenseMatrix> states;

  double energy(std::size_t ix, std::size_t iy, std::size_t n) const {
    return energies[(ix * grid.ny + iy) * static_cast<std::size_t>(q) + n];
  }
};

/// q x q magnetic Bloch Hamiltonian, periodic in k_x with 2 pi / q and in k_y with 2 pi.
DenseMatrix hofstadter_bloch(int p, int q, double kx, double ky, double t = 1.0);

HofstadterBands hofstadter_spectrum(int p, int q, const HofstadterGrid& grid, double t = 1.0);

/// Smallest direct gap between band n and its neighbours over the grid.
double band_gap(const HofstadterBands& bands, std::size_t n);

/// Lattice field-strength Chern numbers; nullopt for bands touching a neighbour
/// (direct gap below `gap_tol` somewhere on the grid).
std::vector<std::optional<int>> chern_numbers(const HofstadterBands& bands, double gap_tol = 1e-6);

// ---------------------------------------------------------------------------
// Dressed two-level atom.

/// Row-major grids with x fastest: value(ix, iy) = data[ix + nx * iy].
struct TwoLevelField {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double dx = 1.0;
  double dy = 1.0;
  bool periodic_x = false;
  bool periodic_y = false;
  std::vector<double> theta;  ///< mixing angle in [0, pi]
  std::vector<double> phi;    ///< phase in [0, 2 pi)
  double omega = 1.0;         ///< Rabi frequency
  double mass = 1.0;

  void validate() const;
};

struct DressedPotentials {
  std::vector<double> ax;
  std::vector<double> ay;
  std::vector<double> v;
};

/// (Omega/2) [[cos th, e^{-i phi} sin th], [e^{i phi} sin th, -cos th]].
Eigen::Matrix2cd dressed_coupling(double theta, double phi, double omega);

/// Upper dressed state of dressed_coupling with its first component made real
/// and non-negative; equals (cos th/2, e^{i phi} sin th/2).
Eigen::Vector2cd dressed_state(double theta, double phi, double omega = 1.0);

/// A_i = (cos th - 1)/2 d_i phi and V = ((grad th)^2 + sin^2 th (grad phi)^2)/(8 m)
/// with second-order finite differences (one-sided at open edges).
DressedPotentials dressed_potentials(const TwoLevelField& field);

/// i <chi|d_i chi> from finite differences of the diagonalized dressed state
/// (fourth-order centred in the interior).
DressedPotentials eigenvector_berry_connection(const TwoLevelField& field);

/// Sum of the trapezoidal circulations of (ax, ay) around every grid cell,
/// i.e. the lattice Stokes flux of the connection.
double berry_flux(const TwoLevelField& field, const DressedPotentials& a);

/// Gauge-invariant lattice flux from products of dressed-state overlaps.
double berry_flux_from_states(const TwoLevelField& field);

/// Spherical-angle texture theta = polar angle, phi = azimuth on an
/// (n_theta x n_phi) grid covering [0, pi] x [0, 2 pi), periodic in phi.
TwoLevelField monopole_texture(std::size_t n_theta, std::size_t n_phi);

/// Berry phase of the upper dressed state around the latitude theta0:
/// closed-form quadrature and discrete overlap product.
double latitude_berry_phase(double theta0, std::size_t n_points);
double latitude_berry_phase_discrete(double theta0, std::size_t n_points);

}  // namespace lgt
