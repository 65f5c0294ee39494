// Acceptance run: one PASS/FAIL line per criterion.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scenario.hpp"
#include "lgt/dense.hpp"
#include "lgt/dynamics.hpp"
#include "lgt/floquet.hpp"
#include "lgt/gauss.hpp"
#include "lgt/hamiltonians.hpp"
#include "lgt/observables.hpp"
#include "lgt/static_gauge.hpp"

using namespace lgt;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= double(x.size());
  my /= double(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

std::uint64_t vacuum_bits(std::size_t n) {
  std::uint64_t occ = 0;
  for (std::size_t s = 0; s < n; s += 2) occ |= std::uint64_t{1} << s;
  return occ;
}

Outcome gauge_invariance() {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  double worst = 0.0;
  for (int twice_spin : {1, 2}) {
    for (std::size_t n : {2u, 4u, 6u}) {
      const auto b = enumerate_basis(chain(n), LinkKind::quantum_link(twice_spin));
      GaussLaw law;
      law.right_edge = 0.0;
      const auto gens = gauss_generators(b, law);
      if (gens.size() != n) return {false, "not every site is constrained"};
      for (int rep = 0; rep < 3; ++rep) {
        const auto h = schwinger_hamiltonian({u(rng), u(rng) - 1.0, u(rng)}, b);
        for (const auto& g : gens) worst = std::max(worst, commutator(h, g).max_abs());
      }
    }
  }
  return {worst < 1e-12, "max |[H,G_r]| = " + fmt("%.2e", worst)};
}

Outcome encoding_equivalence() {
  std::mt19937 rng(977);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  double worst = 0.0;
  int sets = 0;
  for (std::size_t n : {2u, 4u, 6u}) {
    for (double l0 : {0.0, 1.0}) {
      for (int rep = 0; rep < 5; ++rep) {
        const SpinModelParams sp{n, u(rng), u(rng) - 1.0, u(rng), l0};
        GaussLaw law;
        law.background = l0;
        const int cutoff = static_cast<int>(n / 2 + std::abs(l0) + 1);
        const auto sector = gauss_sector_basis(chain(n), LinkKind::truncated_wilson(cutoff), law);
        if (sector->size() != (std::size_t{1} << n)) return {false, "sector dimension mismatch"};
        const auto a = eigenvalues(spin_encoded_hamiltonian(sp));
        const auto b = eigenvalues(schwinger_hamiltonian({sp.t, sp.m, sp.g2}, sector));
        worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
        ++sets;
      }
    }
  }
  return {worst < 1e-10, std::to_string(sets) + " parameter sets, max deviation " + fmt("%.2e", worst)};
}

Outcome penalty_convergence() {
  PenaltyParams p;
  p.t_f = 1.0;
  p.t_b = 1.0;
  p.u = 0.3;
  p.v_f = {0.2, -0.1};
  p.twice_spin = 1;
  p.law.background = 0.5;
  p.law.right_edge = 0.5;
  const auto basis = enumerate_basis(chain(2), LinkKind::quantum_link(1));
  const auto gens = gauss_generators(basis, p.law);
  std::vector<double> residual;
  for (double gamma : {100.0, 200.0}) {
    p.gamma = gamma;
    const auto eff = effective_second_order(penalty_bare_hamiltonian(p, basis), gens, gamma);
    const auto full = eigenvalues(penalty_hamiltonian(p, basis));
    const auto low = eigenvalues(eff.h_eff);
    double worst = 0.0;
    for (Eigen::Index k = 0; k < low.size(); ++k) worst = std::max(worst, std::abs(full(k) - low(k)));
    residual.push_back(worst);
  }
  const double ratio = residual[0] / residual[1];
  return {ratio > 3.2 && ratio < 4.8,
          "residuals " + fmt("%.3e", residual[0]) + " -> " + fmt("%.3e", residual[1]) + ", ratio " +
              fmt("%.3f", ratio)};
}

Outcome floquet_validity() {
  const std::vector<double> taus{0.1, 0.05, 0.025, 0.0125};
  auto slope_for = [&](DriveSpec drive) {
    std::vector<double> dev;
    for (double tau : taus) {
      drive.omega = 2.0 * kPi / tau;
      dev.push_back(floquet_deviation(drive, 2000));
    }
    return log_slope(taus, dev);
  };
  DriveSpec two;
  two.h0 = SparseOperator::from_triplets(2, {});
  two.harmonics.push_back({1, SparseOperator::from_triplets(2, {{0, 1, 1.0}}), std::nullopt});

  // 4-site chain: staggering-free field h sum sz with a hopping drive that commutes with it.
  const auto b = spin_chain_basis(4);
  const auto hop = spin_encoded_hamiltonian({4, 1.0, 0.0, 0.0, 0.0}, b);
  std::vector<Triplet> lower, field;
  for (int k = 0; k < hop.matrix().outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(hop.matrix(), k); it; ++it) {
      if (it.row() > it.col()) lower.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (std::size_t i = 0; i < b->size(); ++i) {
    double z = 0.0;
    for (std::size_t s = 0; s < 4; ++s) z += b->occupied(i, s) ? 1.0 : -1.0;
    field.emplace_back(static_cast<int>(i), static_cast<int>(i), 0.5 * z);
  }
  DriveSpec chain4;
  chain4.h0 = SparseOperator::from_triplets(b, field);
  chain4.harmonics.push_back({1, SparseOperator::from_triplets(b, lower), std::nullopt});

  const double s1 = slope_for(two);
  const double s2 = slope_for(chain4);
  return {std::abs(s1 - 2.0) < 0.1 && std::abs(s2 - 2.0) < 0.1,
          "slopes two-level " + fmt("%.3f", s1) + ", 4-site " + fmt("%.3f", s2)};
}

double bessel_j0_series(double x) {
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= -(x * x / 4.0) / (double(k) * double(k));
    sum += term;
  }
  return sum;
}

Outcome dynamic_localization() {
  const double period = 1.0, omega = 2.0 * kPi / period;
  auto factor = [&](double a) {
    ShakingProtocol p;
    p.period = period;
    p.offsets = {SinusoidalOffset{0.0, a * omega, 1, 0.0}, SinusoidalOffset{}};
    return shaken_hopping_factors(p, chain(2))[0];
  };
  double worst = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double a = 0.05 * k;
    worst = std::max(worst, std::abs(factor(a) - bessel_j0_series(a)));
  }
  const double zero = std::abs(factor(2.4048));
  return {worst < 1e-8 && zero < 1e-3,
          "max |f - J0| = " + fmt("%.2e", worst) + ", |f(2.4048)| = " + fmt("%.2e", zero)};
}

Outcome chern_numbers_check() {
  std::string detail;
  bool ok = true;
  for (int q : {3, 5}) {
    std::vector<std::optional<int>> ref;
    for (std::size_t n : {20u, 40u}) {
      const auto c = chern_numbers(hofstadter_spectrum(1, q, {n, n}));
      int sum = 0;
      for (const auto& x : c) {
        if (!x) ok = false;
        else sum += *x;
      }
      ok = ok && sum == 0;
      if (ref.empty()) ref = c;
      ok = ok && c == ref;
    }
    detail += "1/" + std::to_string(q) + ": [";
    for (std::size_t k = 0; k < ref.size(); ++k) {
      detail += (k ? " " : "") + (ref[k] ? std::to_string(*ref[k]) : std::string("?"));
    }
    detail += "] ";
  }
  return {ok, detail + "(20^2 and 40^2)"};
}

Outcome berry_connection() {
  const auto f = monopole_texture(200, 200);
  const auto a = dressed_potentials(f);
  const auto e = eigenvector_berry_connection(f);
  double dev = 0.0;
  for (std::size_t k = 0; k < a.ax.size(); ++k) {
    dev = std::max({dev, std::abs(a.ax[k] - e.ax[k]), std::abs(a.ay[k] - e.ay[k])});
  }
  const double flux = berry_flux(f, a);
  return {dev < 1e-6 && std::abs(flux + 2.0 * kPi) < 1e-3,
          "connection deviation " + fmt("%.2e", dev) + ", flux " + fmt("%.7f", flux)};
}

Outcome pair_production() {
  std::string detail;
  bool ok = true;
  const double dt = 0.05, t_final = 10.0;
  const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
  for (std::size_t n : {4u, 6u, 8u}) {
    const auto b = spin_chain_basis(n);
    const auto h = spin_encoded_hamiltonian({n, 1.0, 0.5, 1.0, 0.0}, b);
    const auto psi0 = QuantumState::basis_state(b, *b->find(ProductState{vacuum_bits(n), {}}));
    std::vector<double> times;
    for (std::size_t k = 0; k <= steps; ++k) times.push_back(dt * double(k));
    const auto traj = evolve_exact(h, psi0, times);
    std::vector<double> nu;
    for (const auto& s : traj.states) nu.push_back(particle_density(QuantumState(b, s, false)));
    bool in_range = true;
    for (double x : nu) in_range = in_range && x >= -1e-12 && x <= 1.0 + 1e-12;
    const bool rise = nu[1] > 0.0 && nu[2] > nu[1];
    std::size_t peak = 0;
    for (std::size_t k = 1; k + 1 < nu.size(); ++k) {
      if (nu[k] > nu[k - 1] && nu[k] > nu[k + 1]) {
        peak = k;
        break;
      }
    }
    const bool falls = peak > 0 && *std::min_element(nu.begin() + peak, nu.end()) < nu[peak];

    // Same quench in the spin-1/2 link representation at fixed fermion number.
    const auto qb = enumerate_basis(chain(n), LinkKind::quantum_link(1), static_cast<int>(n / 2));
    GaussLaw law;
    law.background = 0.5;
    const auto hq = schwinger_hamiltonian({1.0, 0.5, 1.0}, qb);
    ProductState vac{vacuum_bits(n), std::vector<int>(n - 1, 1)};
    const auto q0 = QuantumState::basis_state(qb, *qb->find(vac));
    const auto qt = evolve_krylov(hq, q0, dt, steps);
    const auto gens = gauss_generators(qb, law);
    double violation = 0.0;
    for (const auto& s : qt.states) violation = std::max(violation, gauss_violation(QuantumState(qb, s, false), gens));

    const bool pass = std::abs(nu[0]) < 1e-14 && in_range && rise && falls && violation < 1e-10;
    ok = ok && pass;
    detail += "N=" + std::to_string(n) + " peak " + fmt("%.3f", peak ? nu[peak] : 0.0) + " at t=" +
              fmt("%.2f", dt * double(peak)) + ", G^2 " + fmt("%.1e", violation) + "; ";
  }
  return {ok, detail};
}

Outcome trotter_orders() {
  const SpinModelParams sp{4, 1.0, 0.5, 1.0, 0.0};
  const auto b = spin_chain_basis(4);
  const auto h = spin_encoded_hamiltonian(sp, b);
  const auto split = TermSplit::create(h, spin_encoded_terms(sp, b));
  const auto psi0 = QuantumState::basis_state(b, *b->find(ProductState{vacuum_bits(4), {}}));
  const double t = 2.0;
  const Vector exact = evolve_exact(h, psi0, std::vector<double>{t}).states.back();
  std::vector<double> ns, e1, e2;
  for (std::size_t n : {16u, 32u, 64u, 128u, 256u}) {
    ns.push_back(double(n));
    e1.push_back((trotter_evolve(split, psi0, t, n, 1, n).states.back() - exact).norm());
    e2.push_back((trotter_evolve(split, psi0, t, n, 2, n).states.back() - exact).norm());
  }
  const double s1 = log_slope(ns, e1), s2 = log_slope(ns, e2);
  return {std::abs(s1 + 1.0) < 0.1 && std::abs(s2 + 2.0) < 0.1,
          "slopes " + fmt("%.3f", s1) + " and " + fmt("%.3f", s2)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const json chain_model = {{"type", "encoded"}, {"n_sites", 4}, {"t", 1.0},
                            {"m", 0.5},          {"g2", 1.0},    {"background", 0.0}};
  const std::vector<std::pair<std::string, json>> runs{
      {"spectrum", {{"model", chain_model}}},
      {"evolve", {{"model", chain_model}, {"numerics", {{"t_final", 1.0}, {"dt", 0.1}, {"negativity", true}}}}},
      {"trotter", {{"model", chain_model}, {"numerics", {{"n_steps", {8, 16}}}}}},
      {"floquet-compare",
       {{"model", {{"system", "two-level"}, {"amplitude", 1.0}, {"field", 0.0}}},
        {"numerics", {{"taus", {0.1, 0.05}}, {"n_substeps", 200}}}}},
      {"shaking",
       {{"model",
         {{"lattice", {{"extents", {3}}}},
          {"period", 1.0},
          {"offsets", {{{"amplitude", 3.0}}, {{"amplitude", 0.0}, {"offset", 1.0}}, {{"samples", {0.0, 2.0, -1.0, 0.0}}}}}}},
        {"numerics", {{"bessel_sweep", {{"points", 11}}}}}}},
      {"hofstadter", {{"model", {{"p", 1}, {"q", 3}, {"t", 1.0}}}, {"numerics", {{"nx", 6}, {"ny", 6}}}}},
      {"chern", {{"model", {{"p", 1}, {"q", 3}, {"t", 1.0}}}, {"numerics", {{"grids", {8}}}}}},
      {"berry", {{"model", {{"texture", "monopole"}, {"mass", 1.0}, {"omega", 1.0}}}, {"numerics", {{"n", 20}}}}},
      {"penalty-check",
       {{"model",
         {{"n_sites", 2}, {"t_f", 1.0}, {"t_b", 1.0}, {"u", 0.3}, {"twice_spin", 1}, {"background", 0.5},
          {"right_edge", 0.5}}}}},
      {"equivalence-check",
       {{"model", {{"n_sites", 4}, {"t", 1.0}, {"m", 0.5}, {"g2", 1.0}, {"background", 0.0}, {"cutoff", 3}}}}},
  };
  const fs::path root = fs::temp_directory_path() / ("lgt_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  bool ok = true;
  std::size_t files = 0;
  std::string bad;
  for (const auto& [kind, cfg] : runs) {
    const auto cfg_path = root / (kind + ".json");
    std::ofstream(cfg_path) << cfg.dump();
    std::vector<fs::path> outs{root / (kind + "_a"), root / (kind + "_b")};
    for (const auto& out : outs) {
      cli::RunOptions o;
      o.kind = kind;
      o.config = cfg_path;
      o.out = out;
      if (cli::run_to_directory(o) != cli::kExitOk) {
        ok = false;
        bad += kind + "(exit) ";
      }
    }
    if (!fs::exists(outs[0]) || !fs::exists(outs[1])) continue;
    for (const auto& entry : fs::directory_iterator(outs[0])) {
      if (entry.path().extension() != ".csv") continue;
      ++files;
      if (slurp(entry.path()) != slurp(outs[1] / entry.path().filename())) {
        ok = false;
        bad += kind + "/" + entry.path().filename().string() + " ";
      }
    }
  }
  fs::remove_all(root);
  if (runs.size() != cli::scenario_kinds().size()) {
    ok = false;
    bad += "(scenario list incomplete) ";
  }
  return {ok && files >= runs.size(),
          std::to_string(runs.size()) + " scenarios, " + std::to_string(files) + " CSV files compared" +
              (bad.empty() ? "" : ", differing: " + bad)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;
  };
  const std::vector<Criterion> criteria{
      {"gauge invariance", gauge_invariance, 10},
      {"encoding equivalence", encoding_equivalence, 30},
      {"penalty convergence", penalty_convergence, 20},
      {"Floquet validity", floquet_validity, 10},
      {"dynamic localization", dynamic_localization, 5},
      {"Hofstadter Chern numbers", chern_numbers_check, 30},
      {"Berry connection", berry_connection, 10},
      {"pair production", pair_production, 60},
      {"Trotter orders", trotter_orders, 30},
      {"determinism", determinism, 1e9},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > criteria[k].budget_s) {
      o.pass = false;
      o.detail += " (over the " + fmt("%.0f", criteria[k].budget_s) + " s budget)";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %zu: %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].name,
                o.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
