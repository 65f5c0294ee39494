#include "lgt/link.hpp"

#include <cmath>

#include "lgt/error.hpp"

namespace lgt {

LinkKind LinkKind::quantum_link(int twice_spin) {
  if (twice_spin < 1) throw InvalidArgument("quantum link spin must be a positive half-integer");
  return LinkKind(Family::quantum_link, twice_spin);
}

LinkKind LinkKind::truncated_wilson(int cutoff) {
  if (cutoff < 0) throw InvalidArgument("truncated Wilson cutoff must be non-negative");
  return LinkKind(Family::truncated_wilson, cutoff);
}

int LinkKind::dim() const noexcept {
  switch (family_) {
    case Family::none: return 1;
    case Family::quantum_link: return param_ + 1;
    case Family::truncated_wilson: return 2 * param_ + 1;
  }
  return 1;
}

double LinkKind::spin() const {
  if (family_ != Family::quantum_link) throw InvalidArgument("link kind has no spin");
  return 0.5 * param_;
}

int LinkKind::cutoff() const {
  if (family_ != Family::truncated_wilson) throw InvalidArgument("link kind has no cutoff");
  return param_;
}

double LinkKind::value(int k) const {
  switch (family_) {
    case Family::none: return 0.0;
    case Family::quantum_link: return -0.5 * param_ + k;
    case Family::truncated_wilson: return static_cast<double>(k - param_);
  }
  return 0.0;
}

int LinkKind::index_of(double l) const {
  const double k = l - value(0);
  const double r = std::round(k);
  if (std::abs(k - r) > 1e-9 || r < 0 || r >= dim()) return -1;
  return static_cast<int>(r);
}

double LinkKind::raise_amplitude(int k) const {
  if (k < 0 || k + 1 >= dim()) return 0.0;
  if (family_ == Family::truncated_wilson) return 1.0;
  const double s = spin();
  const double m = value(k);
  return std::sqrt(s * (s + 1) - m * (m + 1)) / std::sqrt(s * (s + 1));
}

Eigen::MatrixXd LinkKind::electric_matrix() const {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(dim(), dim());
  for (int k = 0; k < dim(); ++k) l(k, k) = value(k);
  return l;
}

Eigen::MatrixXd LinkKind::raising_matrix() const {
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dim(), dim());
  for (int k = 0; k + 1 < dim(); ++k) u(k + 1, k) = raise_amplitude(k);
  return u;
}

std::string LinkKind::describe() const {
  switch (family_) {
    case Family::none: return "none";
    case Family::quantum_link:
      return param_ % 2 == 0 ? "quantum_link(S=" + std::to_string(param_ / 2) + ")"
                             : "quantum_link(S=" + std::to_string(param_) + "/2)";
    case Family::truncated_wilson: return "truncated_wilson(cutoff=" + std::to_string(param_) + ")";
  }
  return "unknown";
}

}  // namespace lgt
