#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace lgt {

enum class Boundary { open, periodic };
enum class Direction : int { x = 0, y = 1 };

/// Staggering sign of a site. Parity is evaluated on 1-based lattice labels,
/// so in 1D the first site (label 1) is odd.
enum class SiteParity { even, odd };

inline int sign(SiteParity p) { return p == SiteParity::even ? 1 : -1; }

struct Link {
  std::size_t origin;  ///< site r
  std::size_t target;  ///< site r + j (wrapped on periodic boundaries)
  Direction dir;
};

/// A link traversed inside a plaquette; `forward == false` means U^dagger.
struct OrientedLink {
  std::size_t link;
  bool forward;
  friend bool operator==(const OrientedLink&, const OrientedLink&) = default;
};

/// Square lattice in one or two dimensions with unit spacing.
///
/// Sites are numbered with x running fastest: site = x + Lx * y.
/// Links are ordered by origin site, then direction (x before y).
/// Plaquettes are indexed by their lower-left corner in site order and
/// traverse r -> r+x -> r+x+y -> r+y -> r.
class LatticeGeometry {
 public:
  LatticeGeometry(int dim, std::vector<std::size_t> extents,
                  std::vector<Boundary> boundary);

  int dim() const noexcept { return dim_; }
  const std::vector<std::size_t>& extents() const noexcept { return extents_; }
  Boundary boundary(Direction d) const { return boundary_.at(static_cast<int>(d)); }

  std::size_t num_sites() const noexcept { return num_sites_; }
  std::size_t num_links() const noexcept { return links_.size(); }
  std::size_t num_plaquettes() const noexcept { return plaquettes_.size(); }

  const std::vector<Link>& links() const noexcept { return links_; }
  const Link& link(std::size_t l) const { return links_.at(l); }

  std::array<std::size_t, 2> coordinates(std::size_t site) const;
  std::size_t site_index(std::array<std::size_t, 2> coords) const;

  SiteParity parity(std::size_t site) const;

  /// Link leaving `site` in direction `d`, if it exists.
  const std::size_t* outgoing(std::size_t site, Direction d) const;
  /// Link entering `site` from direction `d` (i.e. the link r - d -> r).
  const std::size_t* incoming(std::size_t site, Direction d) const;

  /// Index of the link (site, d); throws if absent.
  std::size_t link_index(std::size_t site, Direction d) const;

  /// Neighbor of `site` one step along `d`, if inside the lattice.
  bool has_neighbor(std::size_t site, Direction d) const;
  std::size_t neighbor(std::size_t site, Direction d) const;

  /// Ordered links of a plaquette with orientation (+, +, -, -).
  std::array<OrientedLink, 4> plaquette_links(std::size_t plaquette) const;
  std::size_t plaquette_origin(std::size_t plaquette) const;

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  int dim_;
  std::vector<std::size_t> extents_;
  std::vector<Boundary> boundary_;
  std::size_t num_sites_ = 0;
  std::vector<Link> links_;
  std::vector<std::array<std::size_t, 2>> out_;  // per site, per direction
  std::vector<std::array<std::size_t, 2>> in_;
  std::vector<std::size_t> plaquettes_;  // origin sites
};

/// Validating constructor used by front ends; same checks as the class.
LatticeGeometry build_lattice(int dim, std::vector<std::size_t> extents,
                              std::vector<Boundary> boundary);

/// Convenience for the 1D chains used by the Schwinger-type models.
LatticeGeometry chain(std::size_t n_sites, Boundary boundary = Boundary::open);

}  // namespace lgt
