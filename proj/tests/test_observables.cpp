#include <doctest.h>

#include <cmath>
#include <random>

#include "lgt/dense.hpp"
#include "lgt/dynamics.hpp"
#include "lgt/error.hpp"
#include "lgt/gauss.hpp"
#include "lgt/hamiltonians.hpp"
#include "lgt/observables.hpp"

using namespace lgt;

namespace {

QuantumState spin_state(std::size_t n, std::uint64_t occ) {
  const auto b = spin_chain_basis(n);
  return QuantumState::basis_state(b, *b->find(ProductState{occ, {}}));
}

QuantumState random_state(const BasisPtr& b, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  Vector v(static_cast<Eigen::Index>(b->size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx{d(rng), d(rng)};
  return QuantumState(b, v);
}

}  // namespace

TEST_CASE("particle density") {
  CHECK(particle_density(spin_state(4, 0b0101)) == 0.0);
  CHECK(particle_density(spin_state(4, 0b1010)) == 1.0);
  CHECK(particle_density(spin_state(4, 0b1111)) == 0.5);
  const auto b = spin_chain_basis(4);
  Vector v = Vector::Zero(16);
  v(*b->find(ProductState{0b0101, {}})) = 1.0;
  v(*b->find(ProductState{0b0110, {}})) = 1.0;
  const QuantumState s(b, v);
  CHECK(particle_density(s) == doctest::Approx(0.25));
  const auto per_site = site_densities(s);
  CHECK(per_site[0] == doctest::Approx(0.5));
  CHECK(per_site[1] == doctest::Approx(0.5));
  CHECK(per_site[2] == doctest::Approx(0.0));
  CHECK(per_site[3] == doctest::Approx(0.0));
}

TEST_CASE("vacuum persistence") {
  const auto h = spin_encoded_hamiltonian({4, 1.0, 0.5, 1.0, 0.0});
  const auto psi0 = spin_state(4, 0b0101);
  const auto r = evolve_exact(h, psi0, std::vector<double>{0.0, 0.5, 1.0});
  const auto g = vacuum_persistence(r, psi0);
  CHECK(std::abs(g[0] - 1.0) < 1e-14);
  CHECK(std::abs(g[2]) < 1.0);
  const auto es = eigensystem(h.dense());
  const QuantumState eig(psi0.basis(), es.vectors.col(3));
  const auto re = evolve_exact(h, eig, std::vector<double>{0.0, 0.7, 3.1});
  const auto ge = vacuum_persistence(re, eig);
  for (std::size_t k = 0; k < ge.size(); ++k) {
    CHECK(std::abs(ge[k]) == doctest::Approx(1.0));
    CHECK(std::abs(ge[k] - std::exp(cplx{0.0, -es.values(3) * re.times[k]})) < 1e-10);
  }
}

TEST_CASE("electric field profiles") {
  const auto b = enumerate_basis(chain(2), LinkKind::truncated_wilson(1));
  const auto vac = b->find(ProductState{0b01, {1}});
  const auto pair = b->find(ProductState{0b10, {0}});
  CHECK(electric_field_profile(QuantumState::basis_state(b, *vac)) == std::vector<double>{0.0});
  CHECK(electric_field_profile(QuantumState::basis_state(b, *pair)) == std::vector<double>{-1.0});
  CHECK(electric_field_profile_encoded(spin_state(2, 0b10), 0.0) == std::vector<double>{-1.0});
  CHECK(electric_field_profile_encoded(spin_state(4, 0b0101), 0.5) == std::vector<double>{0.5, 0.5, 0.5});
}

TEST_CASE("encoded and explicit field profiles agree") {
  GaussLaw law;
  law.background = 1.0;
  const auto gauge = gauss_sector_basis(chain(4), LinkKind::truncated_wilson(4), law);
  const auto spins = spin_chain_basis(4);
  REQUIRE(gauge->size() == spins->size());
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const auto s = random_state(gauge, seed);
    Vector v = Vector::Zero(16);
    for (std::size_t i = 0; i < gauge->size(); ++i) {
      v(*spins->find(ProductState{gauge->occupations(i), {}})) = s.amplitudes()(i);
    }
    const auto direct = electric_field_profile(s);
    const auto encoded = electric_field_profile_encoded(QuantumState(spins, v), 1.0);
    REQUIRE(direct.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) CHECK(encoded[k] == doctest::Approx(direct[k]));
  }
}

TEST_CASE("Gauss-law violation") {
  const auto b = enumerate_basis(chain(2), LinkKind::truncated_wilson(1));
  GaussLaw law;
  law.right_edge = 0.0;
  const auto gens = gauss_generators(b, law);
  REQUIRE(gens.size() == 2);
  CHECK(gauss_violation(QuantumState::basis_state(b, *b->find(ProductState{0b01, {1}})), gens) == 0.0);
  // extra fermion on the second site: G_1 = -1
  CHECK(gauss_violation(QuantumState::basis_state(b, *b->find(ProductState{0b11, {1}})), gens) == 1.0);
  // empty chain with L = 1: G_0 = 2, G_1 = -1
  CHECK(gauss_violation(QuantumState::basis_state(b, *b->find(ProductState{0b00, {2}})), gens) == 5.0);
  // only the first site is constrained when the right edge is free
  CHECK(gauss_violation(QuantumState::basis_state(b, *b->find(ProductState{0b00, {2}})), gauss_generators(b)) ==
        4.0);
}

TEST_CASE("Bell pair entanglement") {
  const auto b = spin_chain_basis(2);
  Vector v = Vector::Zero(4);
  v(*b->find(ProductState{0b01, {}})) = 1.0;
  v(*b->find(ProductState{0b10, {}})) = 1.0;
  const QuantumState bell(b, v);
  CHECK(entanglement_entropy(bell, 1) == doctest::Approx(std::log(2.0)));
  CHECK(logarithmic_negativity(bell) == doctest::Approx(std::log(2.0)));
  const auto rho = reduced_density_matrix(bell, left_block(2, 1));
  CHECK(rho.rows() == 2);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-14);
  CHECK(renyi_half_entropy(rho) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("product states are unentangled") {
  const auto s = spin_state(4, 0b0110);
  CHECK(std::abs(entanglement_entropy(s, 2)) < 1e-14);
  CHECK(std::abs(logarithmic_negativity(s)) < 1e-12);
  const auto b = enumerate_basis(chain(3), LinkKind::quantum_link(1));
  const auto g = QuantumState::basis_state(b, 5);
  CHECK(std::abs(entanglement_entropy(g, 1)) < 1e-14);
}

TEST_CASE("negativity of a pure state equals the half-order Renyi entropy") {
  const auto b = spin_chain_basis(4);
  for (unsigned seed = 11; seed < 14; ++seed) {
    const auto s = random_state(b, seed);
    const auto rho = reduced_density_matrix(s, left_block(4, 2));
    CHECK(logarithmic_negativity(s) == doctest::Approx(renyi_half_entropy(rho)).epsilon(1e-10));
    CHECK(renyi_half_entropy(rho) >= von_neumann_entropy(rho) - 1e-12);
  }
}

TEST_CASE("complementary blocks of a pure state have equal entropy") {
  GaussLaw law;
  const auto b = gauss_sector_basis(chain(5), LinkKind::truncated_wilson(3), law);
  const auto s = random_state(b, 3);
  for (std::size_t cut = 1; cut < 5; ++cut) {
    SiteBlock right(5, false);
    for (std::size_t k = cut; k < 5; ++k) right[k] = true;
    CHECK(entanglement_entropy(s, cut) == doctest::Approx(entanglement_entropy(s, right)).epsilon(1e-10));
  }
  SiteBlock odd{true, false, true, false, true};
  SiteBlock even{false, true, false, true, false};
  CHECK(entanglement_entropy(s, odd) == doctest::Approx(entanglement_entropy(s, even)).epsilon(1e-10));
  CHECK_THROWS_AS(entanglement_entropy(s, 0), InvalidArgument);
  CHECK_THROWS_AS(entanglement_entropy(s, 5), InvalidArgument);
}

TEST_CASE("entropy conventions") {
  DenseMatrix rho = DenseMatrix::Zero(3, 3);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.5;
  CHECK(von_neumann_entropy(rho) == doctest::Approx(std::log(2.0)));
  CHECK(renyi_half_entropy(rho) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("trajectory records") {
  const SpinModelParams sp{4, 1.0, 0.5, 1.0, 0.0};
  const auto h = spin_encoded_hamiltonian(sp);
  const auto psi0 = spin_state(4, 0b0101);
  const auto r = evolve_krylov(h, psi0, 0.1, 5);
  RecordOptions opt;
  opt.encoded_background = 0.0;
  opt.negativity = true;
  const auto rec = record_trajectory(r, psi0, opt);
  REQUIRE(rec.size() == 6);
  CHECK(rec[0].time == 0.0);
  CHECK(rec[0].nu == 0.0);
  CHECK(std::abs(rec[0].persistence - 1.0) < 1e-14);
  CHECK(rec[0].field == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(rec[0].entropy == doctest::Approx(0.0));
  REQUIRE(rec[5].negativity.has_value());
  CHECK(rec[5].nu > 0.0);
  CHECK(rec[5].entropy > 0.0);
  CHECK(rec[5].gauss_violation == 0.0);
}
