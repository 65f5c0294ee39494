#include "lgt/lattice.hpp"

#include <string>

#include "lgt/error.hpp"

namespace lgt {

LatticeGeometry::LatticeGeometry(int dim, std::vector<std::size_t> extents,
                                 std::vector<Boundary> boundary)
    : dim_(dim), extents_(std::move(extents)), boundary_(std::move(boundary)) {
  if (dim_ != 1 && dim_ != 2) {
    throw InvalidArgument("lattice dimension must be 1 or 2, got " + std::to_string(dim_));
  }
  if (extents_.size() != static_cast<std::size_t>(dim_)) {
    throw InvalidArgument("expected " + std::to_string(dim_) + " extents");
  }
  if (boundary_.size() == 1 && dim_ == 2) boundary_.push_back(boundary_.front());
  if (boundary_.size() != static_cast<std::size_t>(dim_)) {
    throw InvalidArgument("expected one boundary condition per direction");
  }
  num_sites_ = 1;
  for (auto e : extents_) {
    if (e < 2) throw InvalidArgument("every lattice extent must be at least 2");
    num_sites_ *= e;
  }

  out_.assign(num_sites_, {npos, npos});
  in_.assign(num_sites_, {npos, npos});
  for (std::size_t s = 0; s < num_sites_; ++s) {
    for (int d = 0; d < dim_; ++d) {
      const auto dir = static_cast<Direction>(d);
      if (!has_neighbor(s, dir)) continue;
      const std::size_t t = neighbor(s, dir);
      out_[s][d] = links_.size();
      in_[t][d] = links_.size();
      links_.push_back({s, t, dir});
    }
  }

  if (dim_ == 2) {
    for (std::size_t s = 0; s < num_sites_; ++s) {
      if (has_neighbor(s, Direction::x) && has_neighbor(s, Direction::y)) {
        plaquettes_.push_back(s);
      }
    }
  }
}

std::array<std::size_t, 2> LatticeGeometry::coordinates(std::size_t site) const {
  if (site >= num_sites_) throw InvalidArgument("site index out of range");
  if (dim_ == 1) return {site, 0};
  return {site % extents_[0], site / extents_[0]};
}

std::size_t LatticeGeometry::site_index(std::array<std::size_t, 2> c) const {
  if (c[0] >= extents_[0] || (dim_ == 2 && c[1] >= extents_[1]) || (dim_ == 1 && c[1] != 0)) {
    throw InvalidArgument("coordinates outside the lattice");
  }
  return dim_ == 1 ? c[0] : c[0] + extents_[0] * c[1];
}

SiteParity LatticeGeometry::parity(std::size_t site) const {
  const auto c = coordinates(site);
  std::size_t label_sum = c[0] + 1;
  if (dim_ == 2) label_sum += c[1] + 1;
  return label_sum % 2 == 0 ? SiteParity::even : SiteParity::odd;
}

bool LatticeGeometry::has_neighbor(std::size_t site, Direction d) const {
  const int k = static_cast<int>(d);
  if (k >= dim_) return false;
  const auto c = coordinates(site);
  return boundary_[k] == Boundary::periodic || c[k] + 1 < extents_[k];
}

std::size_t LatticeGeometry::neighbor(std::size_t site, Direction d) const {
  if (!has_neighbor(site, d)) throw InvalidArgument("site has no neighbor in that direction");
  const int k = static_cast<int>(d);
  auto c = coordinates(site);
  c[k] = (c[k] + 1) % extents_[k];
  return site_index(c);
}

const std::size_t* LatticeGeometry::outgoing(std::size_t site, Direction d) const {
  const auto& slot = out_.at(site)[static_cast<int>(d)];
  return slot == npos ? nullptr : &slot;
}

const std::size_t* LatticeGeometry::incoming(std::size_t site, Direction d) const {
  const auto& slot = in_.at(site)[static_cast<int>(d)];
  return slot == npos ? nullptr : &slot;
}

std::size_t LatticeGeometry::link_index(std::size_t site, Direction d) const {
  const auto* l = outgoing(site, d);
  if (l == nullptr) throw InvalidArgument("no link leaves this site in that direction");
  return *l;
}

std::size_t LatticeGeometry::plaquette_origin(std::size_t plaquette) const {
  if (dim_ == 1) throw InvalidArgument("no plaquettes in 1D");
  if (plaquette >= plaquettes_.size()) throw InvalidArgument("plaquette index out of range");
  return plaquettes_[plaquette];
}

std::array<OrientedLink, 4> LatticeGeometry::plaquette_links(std::size_t plaquette) const {
  const std::size_t r = plaquette_origin(plaquette);
  const std::size_t rx = neighbor(r, Direction::x);
  const std::size_t ry = neighbor(r, Direction::y);
  return {{{link_index(r, Direction::x), true},
           {link_index(rx, Direction::y), true},
           {link_index(ry, Direction::x), false},
           {link_index(r, Direction::y), false}}};
}

LatticeGeometry build_lattice(int dim, std::vector<std::size_t> extents,
                              std::vector<Boundary> boundary) {
  return LatticeGeometry(dim, std::move(extents), std::move(boundary));
}

LatticeGeometry chain(std::size_t n_sites, Boundary boundary) {
  return LatticeGeometry(1, {n_sites}, {boundary});
}

}  // namespace lgt
