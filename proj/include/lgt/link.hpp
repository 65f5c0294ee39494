#pragma once

#include <Eigen/Dense>
#include <string>

namespace lgt {

/// Local Hilbert space of a gauge link.
///
/// Local states are indexed k = 0 .. dim()-1 in ascending electric field,
/// so `value(k)` runs from -S (or -cutoff) to +S (or +cutoff).
class LinkKind {
 public:
  enum class Family { none, quantum_link, truncated_wilson };

  /// No link degrees of freedom (matter-only or encoded spin bases).
  static LinkKind none() { return LinkKind(Family::none, 0); }
  /// Spin-S quantum link, U = L+ / sqrt(S(S+1)). Takes 2S.
  static LinkKind quantum_link(int twice_spin);
  /// Electric field truncated to |L| <= cutoff with unit raising amplitude.
  static LinkKind truncated_wilson(int cutoff);

  Family family() const noexcept { return family_; }
  bool has_links() const noexcept { return family_ != Family::none; }
  int dim() const noexcept;
  double spin() const;  ///< S for quantum links
  int cutoff() const;   ///< cutoff for truncated Wilson links

  double value(int k) const;
  /// Local index of the field value `l`, or -1 if `l` is not in the spectrum.
  int index_of(double l) const;
  /// <k+1| U |k>; zero for k = dim()-1.
  double raise_amplitude(int k) const;

  Eigen::MatrixXd electric_matrix() const;
  Eigen::MatrixXd raising_matrix() const;

  std::string describe() const;

  friend bool operator==(const LinkKind&, const LinkKind&) = default;

 private:
  LinkKind(Family f, int p) : family_(f), param_(p) {}
  Family family_;
  int param_;  // 2S or cutoff
};

}  // namespace lgt
