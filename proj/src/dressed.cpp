#include <cmath>
#include <numbers>

#include "lgt/error.hpp"
#include "lgt/static_gauge.hpp"

namespace lgt {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double d) { return std::remainder(d, 2.0 * kPi); }

// Grid accessor helpers for a field stored with x fastest.
struct Axis {
  std::size_t n;
  std::size_t stride;
  double h;
  bool periodic;
};

Axis axis_of(const TwoLevelField& f, int dir) {
  return dir == 0 ? Axis{f.nx, 1, f.dx, f.periodic_x} : Axis{f.ny, f.nx, f.dy, f.periodic_y};
}

// d/d(axis) of a scalar grid; `angle` wraps differences into (-pi, pi].
std::vector<double> derivative(const TwoLevelField& f, const std::vector<double>& v, int dir,
                               bool angle) {
  const Axis a = axis_of(f, dir);
  auto diff = [&](double hi, double lo) { return angle ? wrap_angle(hi - lo) : hi - lo; };
  std::vector<double> out(v.size());
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    const std::size_t i = (idx / a.stride) % a.n;
    const std::size_t base = idx - i * a.stride;
    auto at = [&](std::size_t k) { return v[base + (k % a.n) * a.stride]; };
    if (a.periodic || (i > 0 && i + 1 < a.n)) {
      out[idx] = diff(at(i + 1), at(i + a.n - 1)) / (2.0 * a.h);
    } else if (i == 0) {
      out[idx] = (4.0 * diff(at(1), at(0)) - diff(at(2), at(0))) / (2.0 * a.h);
    } else {
      out[idx] = (diff(at(i - 2), at(i)) - 4.0 * diff(at(i - 1), at(i))) / (2.0 * a.h);
    }
  }
  return out;
}

// Fourth-order derivative of a vector-valued grid (one-sided near open edges).
std::vector<Eigen::Vector2cd> derivative4(const TwoLevelField& f,
                                          const std::vector<Eigen::Vector2cd>& v, int dir) {
  const Axis a = axis_of(f, dir);
  if (a.n < 5) throw InvalidArgument("grid too coarse for fourth-order differences (need >= 5 points)");
  std::vector<Eigen::Vector2cd> out(v.size());
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    const std::size_t i = (idx / a.stride) % a.n;
    const std::size_t base = idx - i * a.stride;
    auto at = [&](long k) {
      const long n = static_cast<long>(a.n);
      return v[base + static_cast<std::size_t>(((k % n) + n) % n) * a.stride];
    };
    const long k = static_cast<long>(i);
    const long last = static_cast<long>(a.n) - 1;
    Eigen::Vector2cd d;
    if (a.periodic || (k >= 2 && k <= last - 2)) {
      d = -at(k + 2) + 8.0 * at(k + 1) - 8.0 * at(k - 1) + at(k - 2);
    } else if (k == 0) {
      d = -25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4);
    } else if (k == 1) {
      d = -3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4);
    } else if (k == last) {
      d = 25.0 * at(last) - 48.0 * at(last - 1) + 36.0 * at(last - 2) - 16.0 * at(last - 3) +
          3.0 * at(last - 4);
    } else {
      d = 3.0 * at(last) + 10.0 * at(last - 1) - 18.0 * at(last - 2) + 6.0 * at(last - 3) -
          at(last - 4);
    }
    out[idx] = d / (12.0 * a.h);
  }
  return out;
}

std::size_t cells(const Axis& a) { return a.periodic ? a.n : a.n - 1; }

}  // namespace

void TwoLevelField::validate() const {
  if (nx < 3 || ny < 3) throw InvalidArgument("dressed-field grids need at least 3 points per axis");
  if (theta.size() != nx * ny || phi.size() != nx * ny) {
    throw InvalidArgument("theta and phi grids must have nx * ny entries");
  }
  if (!(dx > 0.0) || !(dy > 0.0)) throw InvalidArgument("grid spacings must be positive");
  if (!(mass > 0.0)) throw InvalidArgument("mass must be positive");
  if (!(omega > 0.0)) throw InvalidArgument("Rabi frequency must be positive");
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!(theta[i] >= -1e-12 && theta[i] <= kPi + 1e-12)) {
      throw InvalidArgument("theta must lie in [0, pi]");
    }
    if (!(phi[i] >= 0.0 && phi[i] < 2.0 * kPi)) throw InvalidArgument("phi must lie in [0, 2 pi)");
  }
}

Eigen::Matrix2cd dressed_coupling(double theta, double phi, double omega) {
  Eigen::Matrix2cd u;
  const cplx e = std::polar(1.0, phi);
  u << std::cos(theta), std::conj(e) * std::sin(theta), e * std::sin(theta), -std::cos(theta);
  return 0.5 * omega * u;
}

Eigen::Vector2cd dressed_state(double theta, double phi, double omega) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(dressed_coupling(theta, phi, omega));
  Eigen::Vector2cd v = es.eigenvectors().col(1);
  if (std::abs(v(0)) > 1e-8) {
    v *= std::conj(v(0)) / std::abs(v(0));
  } else {
    v *= std::polar(1.0, phi) * std::conj(v(1)) / std::abs(v(1));
  }
  return v;
}

DressedPotentials dressed_potentials(const TwoLevelField& f) {
  f.validate();
  const auto dth_x = derivative(f, f.theta, 0, false);
  const auto dth_y = derivative(f, f.theta, 1, false);
  const auto dph_x = derivative(f, f.phi, 0, true);
  const auto dph_y = derivative(f, f.phi, 1, true);
  DressedPotentials p;
  const std::size_t n = f.theta.size();
  p.ax.resize(n);
  p.ay.resize(n);
  p.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = 0.5 * (std::cos(f.theta[i]) - 1.0);
    p.ax[i] = c * dph_x[i];
    p.ay[i] = c * dph_y[i];
    const double s = std::sin(f.theta[i]);
    p.v[i] = (dth_x[i] * dth_x[i] + dth_y[i] * dth_y[i] +
              s * s * (dph_x[i] * dph_x[i] + dph_y[i] * dph_y[i])) /
             (8.0 * f.mass);
  }
  return p;
}

DressedPotentials eigenvector_berry_connection(const TwoLevelField& f) {
  f.validate();
  std::vector<Eigen::Vector2cd> chi(f.theta.size());
  for (std::size_t i = 0; i < chi.size(); ++i) chi[i] = dressed_state(f.theta[i], f.phi[i], f.omega);
  const auto dx = derivative4(f, chi, 0);
  const auto dy = derivative4(f, chi, 1);
  DressedPotentials p;
  p.ax.resize(chi.size());
  p.ay.resize(chi.size());
  p.v.assign(chi.size(), 0.0);
  for (std::size_t i = 0; i < chi.size(); ++i) {
    p.ax[i] = -chi[i].dot(dx[i]).imag();
    p.ay[i] = -chi[i].dot(dy[i]).imag();
  }
  return p;
}

double berry_flux(const TwoLevelField& f, const DressedPotentials& a) {
  f.validate();
  if (a.ax.size() != f.theta.size() || a.ay.size() != f.theta.size()) {
    throw InvalidArgument("connection grids do not match the field");
  }
  const Axis x = axis_of(f, 0);
  const Axis y = axis_of(f, 1);
  auto id = [&](std::size_t i, std::size_t j) { return (i % f.nx) + f.nx * (j % f.ny); };
  double total = 0.0;
  for (std::size_t j = 0; j < cells(y); ++j) {
    for (std::size_t i = 0; i < cells(x); ++i) {
      total += 0.5 * f.dx * (a.ax[id(i, j)] + a.ax[id(i + 1, j)]);
      total += 0.5 * f.dy * (a.ay[id(i + 1, j)] + a.ay[id(i + 1, j + 1)]);
      total -= 0.5 * f.dx * (a.ax[id(i, j + 1)] + a.ax[id(i + 1, j + 1)]);
      total -= 0.5 * f.dy * (a.ay[id(i, j)] + a.ay[id(i, j + 1)]);
    }
  }
  return total;
}

double berry_flux_from_states(const TwoLevelField& f) {
  f.validate();
  std::vector<Eigen::Vector2cd> chi(f.theta.size());
  for (std::size_t i = 0; i < chi.size(); ++i) chi[i] = dressed_state(f.theta[i], f.phi[i], f.omega);
  const Axis x = axis_of(f, 0);
  const Axis y = axis_of(f, 1);
  auto id = [&](std::size_t i, std::size_t j) { return (i % f.nx) + f.nx * (j % f.ny); };
  double total = 0.0;
  for (std::size_t j = 0; j < cells(y); ++j) {
    for (std::size_t i = 0; i < cells(x); ++i) {
      const cplx loop = chi[id(i, j)].dot(chi[id(i + 1, j)]) *
                        chi[id(i + 1, j)].dot(chi[id(i + 1, j + 1)]) *
                        chi[id(i + 1, j + 1)].dot(chi[id(i, j + 1)]) *
                        chi[id(i, j + 1)].dot(chi[id(i, j)]);
      if (std::abs(loop) > 1e-14) total -= std::arg(loop);
    }
  }
  return total;
}

TwoLevelField monopole_texture(std::size_t n_theta, std::size_t n_phi) {
  if (n_theta < 3 || n_phi < 3) throw InvalidArgument("monopole grid needs at least 3 points per axis");
  TwoLevelField f;
  f.nx = n_theta;
  f.ny = n_phi;
  f.dx = kPi / static_cast<double>(n_theta - 1);
  f.dy = 2.0 * kPi / static_cast<double>(n_phi);
  f.periodic_y = true;
  f.theta.resize(n_theta * n_phi);
  f.phi.resize(n_theta * n_phi);
  for (std::size_t j = 0; j < n_phi; ++j) {
    for (std::size_t i = 0; i < n_theta; ++i) {
      f.theta[i + n_theta * j] = std::min(kPi, f.dx * static_cast<double>(i));
      f.phi[i + n_theta * j] = f.dy * static_cast<double>(j);
    }
  }
  return f;
}

double latitude_berry_phase(double theta0, std::size_t n_points) {
  if (n_points < 3) throw InvalidArgument("latitude loop needs at least 3 points");
  const double dphi = 2.0 * kPi / static_cast<double>(n_points);
  double total = 0.0;
  for (std::size_t k = 0; k < n_points; ++k) total += 0.5 * (std::cos(theta0) - 1.0) * dphi;
  return total;
}

double latitude_berry_phase_discrete(double theta0, std::size_t n_points) {
  if (n_points < 3) throw InvalidArgument("latitude loop needs at least 3 points");
  const double dphi = 2.0 * kPi / static_cast<double>(n_points);
  double total = 0.0;
  for (std::size_t k = 0; k < n_points; ++k) {
    const auto a = dressed_state(theta0, dphi * static_cast<double>(k));
    const auto b = dressed_state(theta0, std::fmod(dphi * static_cast<double>(k + 1), 2.0 * kPi));
    total -= std::arg(a.dot(b));
  }
  return total;
}

}  // namespace lgt
