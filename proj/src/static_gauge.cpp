#include "lgt/static_gauge.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lgt/error.hpp"
#include "lgt/floquet.hpp"

namespace lgt {

namespace {

void require_2d(const LatticeGeometry& g, const char* what) {
  if (g.dim() != 2) throw InvalidArgument(std::string(what) + " needs a 2D lattice");
}

std::size_t plaquette_at(const LatticeGeometry& g, std::size_t x, std::size_t y) {
  // Plaquettes are stored in origin-site order, so a linear scan is fine here.
  const std::size_t site = g.site_index({x, y});
  for (std::size_t p = 0; p < g.num_plaquettes(); ++p) {
    if (g.plaquette_origin(p) == site) return p;
  }
  throw InvalidArgument("no plaquette at the requested corner");
}

}  // namespace

PeierlsField PeierlsField::landau(const LatticeGeometry& g, const std::vector<double>& fluxes) {
  require_2d(g, "Landau gauge");
  if (fluxes.size() != g.num_plaquettes()) {
    throw InvalidArgument("flux table needs one entry per plaquette");
  }
  const std::size_t lx = g.extents()[0];
  const std::size_t ly = g.extents()[1];
  const std::size_t rows = g.boundary(Direction::y) == Boundary::periodic ? ly : ly - 1;
  const std::size_t cols = g.boundary(Direction::x) == Boundary::periodic ? lx : lx - 1;
  PeierlsField f;
  f.theta.assign(g.num_links(), 0.0);
  for (std::size_t y = 0; y < rows; ++y) {
    double acc = 0.0;
    for (std::size_t x = 0; x < lx; ++x) {
      f.theta[g.link_index(g.site_index({x, y}), Direction::y)] = acc;
      if (x < cols) acc += fluxes[plaquette_at(g, x, y)];
    }
    if (cols == lx && std::abs(std::remainder(acc, 2.0 * std::numbers::pi)) > 1e-9) {
      throw InvalidArgument("periodic x needs the row flux to vanish modulo 2 pi for the Landau gauge");
    }
  }
  return f;
}

PeierlsField PeierlsField::uniform(const LatticeGeometry& g, double flux) {
  require_2d(g, "uniform flux");
  return landau(g, std::vector<double>(g.num_plaquettes(), flux));
}

PeierlsField PeierlsField::gauge_transformed(const LatticeGeometry& g,
                                             const std::vector<double>& chi) const {
  if (chi.size() != g.num_sites()) throw InvalidArgument("gauge function needs one value per site");
  if (theta.size() != g.num_links()) throw InvalidArgument("phase table incomplete");
  PeierlsField f = *this;
  for (std::size_t l = 0; l < g.num_links(); ++l) {
    f.theta[l] += chi[g.link(l).origin] - chi[g.link(l).target];
  }
  return f;
}

DenseMatrix peierls_hamiltonian(const LatticeGeometry& g, const PeierlsField& field, double t) {
  require_2d(g, "Peierls substitution");
  if (field.theta.size() != g.num_links()) throw InvalidArgument("phase table incomplete");
  const auto n = static_cast<Eigen::Index>(g.num_sites());
  DenseMatrix h = DenseMatrix::Zero(n, n);
  for (std::size_t l = 0; l < g.num_links(); ++l) {
    const auto& link = g.link(l);
    const cplx a = -t * std::polar(1.0, field.theta[l]);
    h(link.target, link.origin) += a;
    h(link.origin, link.target) += std::conj(a);
  }
  return h;
}

std::vector<double> plaquette_fluxes(const LatticeGeometry& g, const DenseMatrix& h) {
  require_2d(g, "plaquette flux");
  if (h.rows() != static_cast<Eigen::Index>(g.num_sites())) {
    throw InvalidArgument("single-particle matrix does not match the lattice");
  }
  std::vector<double> out;
  out.reserve(g.num_plaquettes());
  for (std::size_t p = 0; p < g.num_plaquettes(); ++p) {
    cplx prod{1.0, 0.0};
    for (const auto& ol : g.plaquette_links(p)) {
      const auto& link = g.link(ol.link);
      prod *= ol.forward ? -h(link.target, link.origin) : -h(link.origin, link.target);
    }
    out.push_back(std::abs(prod) == 0.0 ? std::numeric_limits<double>::quiet_NaN() : std::arg(prod));
  }
  return out;
}

DenseMatrix laser_assisted_model(double phi, double coupling, const LatticeGeometry& g, double t_y) {
  require_2d(g, "laser-assisted model");
  if (!std::isfinite(phi) || !std::isfinite(coupling) || !std::isfinite(t_y)) {
    throw InvalidArgument("laser-assisted model parameters must be finite");
  }
  const auto n = static_cast<Eigen::Index>(g.num_sites());
  DenseMatrix h = DenseMatrix::Zero(n, n);
  for (const auto& link : g.links()) {
    const auto c = g.coordinates(link.origin);
    cplx a;
    if (link.dir == Direction::y) {
      a = -t_y;
    } else {
      const double s = c[0] % 2 == 0 ? 1.0 : -1.0;
      a = -coupling * std::polar(1.0, -s * phi * static_cast<double>(c[1]));
    }
    h(link.target, link.origin) += a;
    h(link.origin, link.target) += std::conj(a);
  }
  return h;
}

}  // namespace lgt
