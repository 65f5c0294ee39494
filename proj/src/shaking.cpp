#include <cmath>
#include <numbers>

#include "lgt/error.hpp"
#include "lgt/floquet.hpp"

namespace lgt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Fourier coefficients c_n (n = 0..M/2) of a real periodic signal given
// at M equally spaced points, plus the signal mean.
struct Spectrum {
  std::vector<cplx> coeff;  // c_n for n >= 1; c_{-n} = conj(c_n)
  double mean = 0.0;
};

Spectrum real_dft(const std::vector<double>& v) {
  const std::size_t m = v.size();
  Spectrum s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(m);
  const std::size_t nmax = (m - 1) / 2;
  s.coeff.resize(nmax + 1);
  for (std::size_t n = 1; n <= nmax; ++n) {
    cplx c{0.0, 0.0};
    for (std::size_t k = 0; k < m; ++k) {
      const double a = -kTwoPi * static_cast<double>(n * k % m) / static_cast<double>(m);
      c += v[k] * cplx{std::cos(a), std::sin(a)};
    }
    s.coeff[n] = c / static_cast<double>(m);
  }
  return s;
}

// Sampled drive values over one period, without the duplicated endpoint.
std::vector<double> samples_of(const SiteOffset& o, double period) {
  if (const auto* s = std::get_if<SampledOffset>(&o)) {
    if (s->samples.size() < 3) throw InvalidArgument("sampled offsets need at least 3 points");
    if (std::abs(s->samples.front() - s->samples.back()) > 1e-12) {
      throw InvalidArgument("sampled offset is not periodic (first and last samples differ)");
    }
    for (double x : s->samples) {
      if (!std::isfinite(x)) throw InvalidArgument("sampled offset contains non-finite values");
    }
    return {s->samples.begin(), s->samples.end() - 1};
  }
  (void)period;
  return {};
}

void check_sinusoid(const SinusoidalOffset& s) {
  if (s.harmonic < 1) throw InvalidArgument("sinusoidal offsets need a harmonic index >= 1");
  if (!std::isfinite(s.offset) || !std::isfinite(s.amplitude) || !std::isfinite(s.phase)) {
    throw InvalidArgument("sinusoidal offset parameters must be finite");
  }
}

// Phase w(t) = integral of (v_a - v_b - mean), evaluated on the quadrature grid.
// Constant shifts are irrelevant because the caller centers the result.
std::vector<double> integrated_phase(const SiteOffset& a, const SiteOffset& b, double period,
                                     std::size_t q) {
  std::vector<double> w(q, 0.0);
  const double omega = kTwoPi / period;
  auto add = [&](const SiteOffset& o, double sign) {
    if (const auto* s = std::get_if<SinusoidalOffset>(&o)) {
      check_sinusoid(*s);
      const double wn = omega * s->harmonic;
      for (std::size_t k = 0; k < q; ++k) {
        const double t = period * static_cast<double>(k) / static_cast<double>(q);
        w[k] += sign * s->amplitude / wn * std::sin(wn * t + s->phase);
      }
      return;
    }
    const Spectrum sp = real_dft(samples_of(o, period));
    for (std::size_t n = 1; n < sp.coeff.size(); ++n) {
      const double wn = omega * static_cast<double>(n);
      // c_n e^{i n w t} + c.c. integrates to 2 Re(c_n e^{i n w t} / (i n w)).
      const cplx c = sp.coeff[n] / cplx{0.0, wn};
      if (std::abs(c) == 0.0) continue;
      for (std::size_t k = 0; k < q; ++k) {
        const double arg = wn * period * static_cast<double>(k) / static_cast<double>(q);
        w[k] += sign * 2.0 * (c * cplx{std::cos(arg), std::sin(arg)}).real();
      }
    }
  };
  add(a, 1.0);
  add(b, -1.0);
  double mean = 0.0;
  for (double x : w) mean += x;
  mean /= static_cast<double>(q);
  for (double& x : w) x -= mean;
  return w;
}

}  // namespace

double relative_drive_amplitude(const SinusoidalOffset& a, const SinusoidalOffset& b,
                                double period) {
  check_sinusoid(a);
  check_sinusoid(b);
  if (a.harmonic != b.harmonic) {
    throw InvalidArgument("relative amplitude needs both sites driven at the same harmonic");
  }
  const double wn = kTwoPi / period * a.harmonic;
  const cplx d = a.amplitude * cplx{std::cos(a.phase), std::sin(a.phase)} -
                 b.amplitude * cplx{std::cos(b.phase), std::sin(b.phase)};
  return std::abs(d) / wn;
}

std::vector<cplx> shaken_hopping_factors(const ShakingProtocol& p, const LatticeGeometry& geometry) {
  if (!(p.period > 0.0) || !std::isfinite(p.period)) throw InvalidArgument("shaking period must be positive");
  if (p.offsets.size() != geometry.num_sites()) {
    throw InvalidArgument("shaking protocol needs one offset per site");
  }
  if (p.quadrature_points < 1000) throw InvalidArgument("quadrature needs at least 1000 points");
  std::vector<cplx> out;
  out.reserve(geometry.num_links());
  for (const auto& link : geometry.links()) {
    const auto w = integrated_phase(p.offsets[link.origin], p.offsets[link.target], p.period,
                                    p.quadrature_points);
    cplx avg{0.0, 0.0};
    for (double x : w) avg += cplx{std::cos(x), std::sin(x)};
    out.push_back(avg / static_cast<double>(w.size()));
  }
  return out;
}

}  // namespace lgt
