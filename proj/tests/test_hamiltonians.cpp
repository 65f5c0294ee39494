#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lgt/dense.hpp"
#include "lgt/error.hpp"
#include "lgt/gauss.hpp"
#include "lgt/hamiltonians.hpp"

using namespace lgt;

namespace {

GaussLaw pinned(double l0 = 0.0, double right = 0.0) {
  GaussLaw law;
  law.background = l0;
  law.right_edge = right;
  return law;
}

double max_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  REQUIRE(a.size() == b.size());
  return (a - b).cwiseAbs().maxCoeff();
}

// Many-body spectrum of free fermions: all subset sums of single-particle levels.
Eigen::VectorXd free_fermion_spectrum(const Eigen::MatrixXd& h1) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h1);
  const auto n = h1.rows();
  Eigen::VectorXd out(1 << n);
  for (int mask = 0; mask < (1 << n); ++mask) {
    double e = 0.0;
    for (int k = 0; k < n; ++k) {
      if (mask & (1 << k)) e += es.eigenvalues()(k);
    }
    out(mask) = e;
  }
  std::sort(out.data(), out.data() + out.size());
  return out;
}

}  // namespace

TEST_CASE("two-site sector gives the two-level oracle") {
  const auto b = gauss_sector_basis(chain(2), LinkKind::truncated_wilson(1), pinned());
  REQUIRE(b->size() == 2);
  {
    const auto h = schwinger_hamiltonian({1.0, 0.0, 0.0}, b);
    const auto ev = eigenvalues(h);
    CHECK(ev(0) == doctest::Approx(-1.0));
    CHECK(ev(1) == doctest::Approx(1.0));
  }
  const double t = 0.7, m = 0.3, g2 = 0.8;
  const auto ev = eigenvalues(schwinger_hamiltonian({t, m, g2}, b));
  const double a = -m, d = m + 0.5 * g2;
  const double r = std::sqrt(0.25 * (d - a) * (d - a) + t * t);
  CHECK(ev(0) == doctest::Approx(0.5 * (a + d) - r));
  CHECK(ev(1) == doctest::Approx(0.5 * (a + d) + r));
}

TEST_CASE("zero hopping is diagonal") {
  const auto b = enumerate_basis(chain(4), LinkKind::quantum_link(1));
  const auto h = schwinger_hamiltonian({0.0, 0.4, 1.1}, b);
  CHECK(h.is_diagonal());
  // mass term alone on a known state
  ProductState s;
  s.occupations = 0b0101;
  s.link_digits = {1, 1, 1};
  const auto i = b->find(s);
  REQUIRE(i.has_value());
  const auto hm = schwinger_hamiltonian({0.0, 0.4, 0.0}, b);
  CHECK(hm.matrix().coeff(*i, *i).real() == doctest::Approx(-0.8));
}

TEST_CASE("Schwinger Hamiltonian is gauge invariant and number conserving") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int twice_spin : {1, 2}) {
    for (std::size_t n : {2u, 4u}) {
      const auto b = enumerate_basis(chain(n), LinkKind::quantum_link(twice_spin));
      const SchwingerParams p{u(rng), u(rng) - 1.0, u(rng)};
      const auto h = schwinger_hamiltonian(p, b);
      CHECK(h.is_hermitian());
      for (const auto& g : gauss_generators(b)) CHECK(commutator(h, g).max_abs() < 1e-12);
      CHECK(commutator(h, total_number(b)).max_abs() < 1e-12);
    }
  }
  const auto tw = enumerate_basis(chain(3, Boundary::periodic), LinkKind::truncated_wilson(1));
  const auto h = schwinger_hamiltonian({1.0, 0.5, 0.7}, tw);
  for (const auto& g : gauss_generators(tw)) CHECK(commutator(h, g).max_abs() < 1e-12);
}

TEST_CASE("hopping phase conventions are unitarily equivalent") {
  const auto b = gauss_sector_basis(chain(6), LinkKind::truncated_wilson(3), GaussLaw{});
  const SchwingerParams im{0.8, 0.3, 1.2, HoppingPhase::imaginary};
  SchwingerParams re = im;
  re.phase = HoppingPhase::real;
  CHECK(max_diff(eigenvalues(schwinger_hamiltonian(im, b)), eigenvalues(schwinger_hamiltonian(re, b))) <
        1e-10);
}

TEST_CASE("encoded model at g = 0 is a free-fermion chain") {
  const std::size_t n = 5;
  const double t = 0.9, m = 0.35;
  Eigen::MatrixXd h1 = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t l = 0; l < n; ++l) h1(l, l) = (l % 2 == 0) ? -m : m;
  for (std::size_t l = 0; l + 1 < n; ++l) h1(l, l + 1) = h1(l + 1, l) = t;
  const auto h = spin_encoded_hamiltonian({n, t, m, 0.0, 0.0});
  CHECK(max_diff(eigenvalues(h), free_fermion_spectrum(h1)) < 1e-10);
}

TEST_CASE("encoded model reproduces the gauge theory in its sector") {
  for (double l0 : {0.0, 1.0, -2.0}) {
    const std::size_t n = 4;
    const SpinModelParams sp{n, 1.0, 0.5, 1.3, l0};
    const auto kind = LinkKind::truncated_wilson(4);
    GaussLaw law;
    law.background = l0;
    const auto b = gauss_sector_basis(chain(n), kind, law);
    REQUIRE(b->size() == 16);
    const auto hs = schwinger_hamiltonian({sp.t, sp.m, sp.g2}, b);
    CHECK(max_diff(eigenvalues(hs), eigenvalues(spin_encoded_hamiltonian(sp))) < 1e-10);
    // diagonal entries agree state by state
    const auto he = spin_encoded_hamiltonian(sp);
    const auto sb = spin_chain_basis(n);
    for (std::size_t i = 0; i < b->size(); ++i) {
      const auto j = sb->find(ProductState{b->occupations(i), {}});
      REQUIRE(j.has_value());
      CHECK(he.matrix().coeff(*j, *j).real() == doctest::Approx(hs.matrix().coeff(i, i).real()));
      for (std::size_t k = 0; k + 1 < n; ++k) {
        CHECK(encoded_link_field(b->occupations(i), n, k, l0) == b->link_value(i, k));
      }
    }
  }
}

TEST_CASE("coefficient expansion matches the direct diagonal") {
  const SpinModelParams sp{6, 0.0, 0.7, 0.9, 0.5};
  const auto c = spin_model_coefficients(sp);
  CHECK(c.coupling.isApprox(c.coupling.transpose()));
  CHECK(c.coupling.diagonal().cwiseAbs().maxCoeff() == 0.0);
  const auto h = spin_encoded_hamiltonian(sp);
  const auto b = spin_chain_basis(6);
  for (std::size_t i = 0; i < b->size(); ++i) {
    const auto occ = b->occupations(i);
    double e = 0.0;
    for (std::size_t l = 0; l < 6; ++l) {
      if ((occ >> l) & 1U) e += (l % 2 == 0 ? -sp.m : sp.m);
    }
    for (std::size_t k = 0; k < 5; ++k) {
      const double f = encoded_link_field(occ, 6, k, sp.background);
      e += 0.5 * sp.g2 * f * f;
    }
    CHECK(h.matrix().coeff(i, i).real() == doctest::Approx(e));
  }
}

TEST_CASE("large mass selects the staggered configuration") {
  const auto h = spin_encoded_hamiltonian({6, 1.0, 1e3, 1.0, 0.0});
  const auto es = eigensystem(h.dense());
  const auto b = spin_chain_basis(6);
  const auto i = b->find(ProductState{0b010101, {}});
  REQUIRE(i.has_value());
  CHECK(std::norm(es.vectors(*i, 0)) > 0.999);
}

TEST_CASE("encoded term split sums to the Hamiltonian") {
  const SpinModelParams sp{5, 0.8, 0.2, 1.1, 0.0};
  const auto terms = spin_encoded_terms(sp);
  REQUIRE(terms.size() == 3);
  CHECK(max_abs_difference(terms[0] + terms[1] + terms[2], spin_encoded_hamiltonian(sp)) < 1e-14);
  CHECK(terms[2].is_diagonal());
  CHECK_FALSE(terms[0].is_diagonal());
  CHECK_FALSE(terms[1].is_diagonal());
  CHECK_THROWS_AS(spin_encoded_hamiltonian({1, 1.0, 0.0, 0.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(spin_encoded_hamiltonian({4, -1.0, 0.0, 0.0, 0.0}), InvalidArgument);
}

TEST_CASE("second-order effective Hamiltonian on a toy model") {
  const double t = 0.3, gamma = 50.0;
  const auto h0 = SparseOperator::from_triplets(2, {{0, 1, t}, {1, 0, t}});
  const auto g = SparseOperator::from_triplets(2, {{1, 1, 1.0}});
  const auto eff = effective_second_order(h0, {g}, gamma);
  REQUIRE(eff.kernel_dim() == 1);
  CHECK(std::abs(eff.first_order(0, 0)) < 1e-14);
  CHECK(eff.second_order(0, 0).real() == doctest::Approx(-t * t / gamma));
  // exact ground energy approaches the oracle with a 1/Gamma^3 residual
  const auto exact = eigenvalues(h0 + g * cplx{gamma, 0.0});
  CHECK(std::abs(exact(0) + t * t / gamma) < 2.0 * std::pow(t, 4) / std::pow(gamma, 3));
  CHECK_THROWS_AS(effective_second_order(h0, {g}, 0.0), InvalidArgument);
}

TEST_CASE("penalty model") {
  const auto b = enumerate_basis(chain(3), LinkKind::quantum_link(1));
  PenaltyParams p;
  p.t_f = 0.0;
  p.t_b = 0.0;
  p.v_f = {0.2, -0.1, 0.3};
  p.u = 0.4;
  p.gamma = 10.0;
  p.law = pinned(0.5, 0.5);
  SUBCASE("no tunnelling is diagonal and commutes with the constraint") {
    const auto h = penalty_hamiltonian(p, b);
    CHECK(h.is_diagonal());
    const auto gens = gauss_generators(b, p.law);
    const auto eff = effective_second_order(penalty_bare_hamiltonian(p, b), gens, p.gamma);
    CHECK(eff.second_order.cwiseAbs().maxCoeff() < 1e-12);
    const auto kernel = project_gauss_sector(b, p.law);
    CHECK(eff.kernel_dim() == kernel->size());
  }
  SUBCASE("tunnelling is Hermitian and conserves fermion number") {
    p.t_f = 1.0;
    p.t_b = 0.7;
    const auto h = penalty_hamiltonian(p, b);
    CHECK(h.is_hermitian());
    CHECK_FALSE(h.is_diagonal());
    const auto h0 = penalty_bare_hamiltonian(p, b);
    CHECK(commutator(h0, total_number(b)).max_abs() < 1e-12);
  }
  SUBCASE("input validation") {
    p.v_f = {1.0};
    CHECK_THROWS_AS(penalty_bare_hamiltonian(p, b), InvalidArgument);
    p.v_f.clear();
    p.twice_spin = 2;
    CHECK_THROWS_AS(penalty_bare_hamiltonian(p, b), InvalidArgument);
  }
}

TEST_CASE("single plaquette of spin-1/2 links") {
  const auto g = build_lattice(2, {2, 2}, {Boundary::open});
  const auto full = enumerate_basis(g, LinkKind::quantum_link(1), std::nullopt, false);
  REQUIRE(full->size() == 16);
  const auto sector = project_gauss_sector(full, GaussLaw{});
  REQUIRE(sector->size() == 2);
  const double g2 = 1.0;
  const auto ev = eigenvalues(pure_gauge_2d_hamiltonian(sector, g2));
  CHECK(ev(0) == doctest::Approx(0.5 * g2 - 4.0 / (9.0 * g2)));
  CHECK(ev(1) == doctest::Approx(0.5 * g2 + 4.0 / (9.0 * g2)));
  CHECK_THROWS_AS(pure_gauge_2d_hamiltonian(sector, 0.0), InvalidArgument);
  CHECK_THROWS_AS(pure_gauge_2d_hamiltonian(chain(3), 1.0, LinkKind::quantum_link(1)), InvalidArgument);
}

TEST_CASE("pure gauge torus") {
  const auto g = build_lattice(2, {2, 2}, {Boundary::periodic});
  const auto h = pure_gauge_2d_hamiltonian(g, 0.8, LinkKind::quantum_link(1));
  CHECK(h.dim() == 256);
  CHECK(h.is_hermitian());
  for (const auto& gen : gauss_generators(h.basis())) CHECK(commutator(h, gen).max_abs() < 1e-12);
  // every plaquette term flips exactly four links
  const auto& b = *h.basis();
  const auto& m = h.matrix();
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (it.row() == it.col()) continue;
      const auto a = b.state(static_cast<std::size_t>(it.row()));
      const auto c = b.state(static_cast<std::size_t>(it.col()));
      int changed = 0;
      for (std::size_t l = 0; l < b.num_links(); ++l) changed += a.link_digits[l] != c.link_digits[l];
      CHECK(changed == 4);
    }
  }
}

TEST_CASE("staggered fermions with links in 2D") {
  const auto g = build_lattice(2, {2, 2}, {Boundary::open});
  const auto b = enumerate_basis(g, LinkKind::quantum_link(1), 2);
  Staggered2DParams p;
  p.t = 0.9;
  p.m = 0.4;
  p.g2 = 1.2;
  const auto h = staggered_hamiltonian_2d(p, b);
  CHECK(h.is_hermitian());
  for (const auto& gen : gauss_generators(b)) CHECK(commutator(h, gen).max_abs() < 1e-12);
  CHECK(commutator(h, total_number(b)).max_abs() < 1e-12);

  // Without y hopping and plaquettes the y-link fields are conserved.
  Staggered2DParams rows = p;
  rows.t_y = 0.0;
  rows.plaquette = 0.0;
  const auto hr = staggered_hamiltonian_2d(rows, b);
  for (std::size_t l = 0; l < g.num_links(); ++l) {
    const double c = commutator(hr, electric_field(b, l)).max_abs();
    if (g.link(l).dir == Direction::y) {
      CHECK(c < 1e-12);
    } else {
      CHECK(c > 0.1);
    }
  }
  CHECK_THROWS_AS(staggered_hamiltonian_2d(p, enumerate_basis(chain(4), LinkKind::quantum_link(1))),
                  InvalidArgument);
}
