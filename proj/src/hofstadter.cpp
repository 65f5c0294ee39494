#include <cmath>
#include <limits>
#include <numeric>
#include <numbers>

#include "lgt/error.hpp"
#include "lgt/static_gauge.hpp"

namespace lgt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_flux(int p, int q) {
  if (q < 1 || q > 50) throw InvalidArgument("Hofstadter q must be in [1, 50]");
  if (p < 0) throw InvalidArgument("Hofstadter p must be non-negative");
  if (std::gcd(p, q) != 1) {
    throw InvalidArgument("Hofstadter flux p/q = " + std::to_string(p) + "/" + std::to_string(q) +
                          " is not in lowest terms");
  }
}

cplx link_variable(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const cplx o = a.dot(b);
  const double m = std::abs(o);
  if (m < 1e-14) throw NumericalError("vanishing overlap in the lattice field strength");
  return o / m;
}

}  // namespace

DenseMatrix hofstadter_bloch(int p, int q, double kx, double ky, double t) {
  check_flux(p, q);
  const double alpha = static_cast<double>(p) / q;
  DenseMatrix h = DenseMatrix::Zero(q, q);
  for (int m = 0; m < q; ++m) h(m, m) = -2.0 * t * std::cos(ky + kTwoPi * alpha * m);
  for (int m = 0; m + 1 < q; ++m) {
    h(m + 1, m) += -t;
    h(m, m + 1) += -t;
  }
  // Bond from the last site of a cell into the first site of the next one.
  const cplx wrap = -t * std::polar(1.0, q * kx);
  h(0, q - 1) += std::conj(wrap);
  h(q - 1, 0) += wrap;
  return h;
}

HofstadterBands hofstadter_spectrum(int p, int q, const HofstadterGrid& grid, double t) {
  check_flux(p, q);
  if (grid.nx < 2 || grid.ny < 2) throw InvalidArgument("Hofstadter grid needs at least 2x2 points");
  HofstadterBands b;
  b.p = p;
  b.q = q;
  b.grid = grid;
  for (std::size_t i = 0; i < grid.nx; ++i) b.kx.push_back(kTwoPi / q * i / grid.nx);
  for (std::size_t j = 0; j < grid.ny; ++j) b.ky.push_back(kTwoPi * j / grid.ny);
  b.energies.reserve(grid.nx * grid.ny * q);
  b.states.reserve(grid.nx * grid.ny);
  for (std::size_t i = 0; i < grid.nx; ++i) {
    for (std::size_t j = 0; j < grid.ny; ++j) {
      Eigen::SelfAdjointEigenSolver<DenseMatrix> es(hofstadter_bloch(p, q, b.kx[i], b.ky[j], t));
      for (int n = 0; n < q; ++n) b.energies.push_back(es.eigenvalues()(n));
      b.states.push_back(es.eigenvectors());
    }
  }
  return b;
}

double band_gap(const HofstadterBands& b, std::size_t n) {
  double gap = std::numeric_limits<double>::infinity();
  const auto q = static_cast<std::size_t>(b.q);
  for (std::size_t i = 0; i < b.grid.nx; ++i) {
    for (std::size_t j = 0; j < b.grid.ny; ++j) {
      if (n > 0) gap = std::min(gap, b.energy(i, j, n) - b.energy(i, j, n - 1));
      if (n + 1 < q) gap = std::min(gap, b.energy(i, j, n + 1) - b.energy(i, j, n));
    }
  }
  return gap;
}

std::vector<std::optional<int>> chern_numbers(const HofstadterBands& b, double gap_tol) {
  const std::size_t nx = b.grid.nx;
  const std::size_t ny = b.grid.ny;
  std::vector<std::optional<int>> out;
  for (int n = 0; n < b.q; ++n) {
    if (band_gap(b, n) < gap_tol) {
      out.push_back(std::nullopt);
      continue;
    }
    auto u = [&](std::size_t i, std::size_t j) -> Eigen::VectorXcd {
      return b.states[(i % nx) * ny + (j % ny)].col(n);
    };
    double total = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t j = 0; j < ny; ++j) {
        const cplx ux = link_variable(u(i, j), u(i + 1, j));
        const cplx uy = link_variable(u(i + 1, j), u(i + 1, j + 1));
        const cplx ux2 = link_variable(u(i, j + 1), u(i + 1, j + 1));
        const cplx uy2 = link_variable(u(i, j), u(i, j + 1));
        total += std::arg(ux * uy * std::conj(ux2) * std::conj(uy2));
      }
    }
    const double c = total / kTwoPi;
    const double r = std::round(c);
    if (std::abs(c - r) > 1e-6) throw NumericalError("lattice Chern number is not an integer");
    out.push_back(static_cast<int>(r));
  }
  return out;
}

}  // namespace lgt
