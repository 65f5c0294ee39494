#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lgt/sparse_operator.hpp"

namespace lgt {

/// Recorded trajectory of a real-time evolution.
struct EvolutionResult {
  std::string method;
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<double> norm_drift;  ///< | ||psi(t)|| - 1 | per record
  double step = 0.0;
  int krylov_dim = 0;
  double tolerance = 0.0;
  std::size_t gate_count = 0;  ///< exponentials applied (Trotter only)
  std::size_t substeps = 0;    ///< Krylov sub-steps taken

  QuantumState state(std::size_t k, BasisPtr basis = nullptr) const {
    return QuantumState(std::move(basis), states.at(k), false);
  }
};

/// |psi(t)> = exp(-i H t)|psi0> by full eigendecomposition (dim <= 4096).
EvolutionResult evolve_exact(const SparseOperator& h, const QuantumState& psi0,
                             std::span<const double> times);

struct KrylovOptions {
  int krylov_dim = 20;
  double tolerance = 1e-10;
  /// Sub-step budget per step before the tolerance is declared unreachable.
  std::size_t max_substeps = 4096;
};

/// Lanczos propagation in steps of dt; records t = 0, dt, ..., n_steps*dt.
/// A step whose a-posteriori error estimate exceeds the tolerance is split
/// into smaller sub-steps; if the budget runs out a NumericalError is thrown.
EvolutionResult evolve_krylov(const SparseOperator& h, const QuantumState& psi0, double dt,
                              std::size_t n_steps, const KrylovOptions& options = {});

/// Hermitian terms H_a whose sum reproduces H to 1e-12.
class TermSplit {
 public:
  static TermSplit create(const SparseOperator& h, std::vector<SparseOperator> terms,
                          double tol = 1e-12);

  const std::vector<SparseOperator>& terms() const noexcept { return terms_; }
  const SparseOperator& hamiltonian() const noexcept { return h_; }

 private:
  TermSplit(SparseOperator h, std::vector<SparseOperator> terms)
      : h_(std::move(h)), terms_(std::move(terms)) {}
  SparseOperator h_;
  std::vector<SparseOperator> terms_;
};

/// exp(-i H tau) for an operator that is diagonal or splits into small
/// connected blocks; each block is exponentiated exactly.
SparseMatrix exact_term_propagator(const SparseOperator& term, double tau);

/// Product-formula evolution to time t in n_steps steps.
/// order 1: prod_a exp(-i H_a tau); order 2: symmetric Strang splitting.
EvolutionResult trotter_evolve(const TermSplit& split, const QuantumState& psi0, double t,
                               std::size_t n_steps, int order, std::size_t record_stride = 1);

/// One-period propagator of H(t) using midpoint-sampled piecewise-constant steps.
DenseMatrix floquet_operator(const std::function<DenseMatrix(double)>& hamiltonian, double period,
                             std::size_t n_substeps);

}  // namespace lgt
