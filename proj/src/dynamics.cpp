#include "lgt/dynamics.hpp"

#include <cmath>
#include <numeric>

#include "lgt/dense.hpp"
#include "lgt/error.hpp"

namespace lgt {

namespace {

double drift(const Vector& v) { return std::abs(v.norm() - 1.0); }

// Lanczos basis with full reorthogonalization.
struct KrylovSpace {
  DenseMatrix basis;    // n x m
  Eigen::MatrixXd tri;  // m x m
  double residual = 0.0;  // beta_m, zero on happy breakdown
};

KrylovSpace lanczos(const SparseMatrix& h, const Vector& v0, int m_max) {
  const Eigen::Index n = v0.size();
  const int m_cap = static_cast<int>(std::min<Eigen::Index>(m_max, n));
  KrylovSpace k;
  k.basis.resize(n, m_cap);
  std::vector<double> alpha;
  std::vector<double> beta;
  k.basis.col(0) = v0 / v0.norm();
  double scale = 1.0;
  for (Eigen::Index c = 0; c < h.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(h, c); it; ++it) scale = std::max(scale, std::abs(it.value()));
  }
  int m = 0;
  for (int j = 0; j < m_cap; ++j) {
    Vector w = h * k.basis.col(j);
    const double a = k.basis.col(j).dot(w).real();
    alpha.push_back(a);
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      const Vector coeff = k.basis.leftCols(j + 1).adjoint() * w;
      w -= k.basis.leftCols(j + 1) * coeff;
    }
    const double b = w.norm();
    m = j + 1;
    if (b < 1e-13 * scale) {
      k.residual = 0.0;
      break;
    }
    if (j + 1 == m_cap) {
      k.residual = b;
      break;
    }
    beta.push_back(b);
    k.basis.col(j + 1) = w / b;
  }
  k.basis.conservativeResize(n, m);
  k.tri = Eigen::MatrixXd::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    k.tri(j, j) = alpha[j];
    if (j + 1 < m) k.tri(j, j + 1) = k.tri(j + 1, j) = beta[j];
  }
  return k;
}

}  // namespace

EvolutionResult evolve_exact(const SparseOperator& h, const QuantumState& psi0,
                             std::span<const double> times) {
  if (h.dim() != psi0.dim()) throw InvalidArgument("state and Hamiltonian dimensions differ");
  require_dense_capacity(h.dim(), "evolve_exact (use evolve_krylov for larger spaces)");
  h.require_hermitian("Hamiltonian");
  const auto es = eigensystem(h.dense());
  const Vector coeff = es.vectors.adjoint() * psi0.amplitudes();

  EvolutionResult r;
  r.method = "exact";
  for (double t : times) {
    const Vector phased =
        (coeff.array() * (es.values.cast<cplx>() * cplx{0.0, -t}).array().exp()).matrix();
    Vector psi = es.vectors * phased;
    r.times.push_back(t);
    r.norm_drift.push_back(drift(psi));
    r.states.push_back(std::move(psi));
  }
  return r;
}

EvolutionResult evolve_krylov(const SparseOperator& h, const QuantumState& psi0, double dt,
                              std::size_t n_steps, const KrylovOptions& opt) {
  if (h.dim() != psi0.dim()) throw InvalidArgument("state and Hamiltonian dimensions differ");
  if (opt.krylov_dim < 1) throw InvalidArgument("Krylov dimension must be positive");
  if (!(opt.tolerance > 0.0)) throw InvalidArgument("Krylov tolerance must be positive");
  h.require_hermitian("Hamiltonian");

  EvolutionResult r;
  r.method = "krylov";
  r.step = dt;
  r.krylov_dim = opt.krylov_dim;
  r.tolerance = opt.tolerance;
  Vector psi = psi0.amplitudes();
  r.times.push_back(0.0);
  r.norm_drift.push_back(drift(psi));
  r.states.push_back(psi);

  for (std::size_t step = 0; step < n_steps; ++step) {
    double remaining = dt;
    std::size_t used = 0;
    double h_try = dt;
    while (std::abs(remaining) > 0.0) {
      const double norm = psi.norm();
      const KrylovSpace k = lanczos(h.matrix(), psi, opt.krylov_dim);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k.tri);
      const Eigen::MatrixXd& q = es.eigenvectors();
      const Eigen::Index m = k.tri.rows();

      double sub = std::abs(h_try) < std::abs(remaining) ? h_try : remaining;
      Vector small;
      for (;;) {
        const Eigen::VectorXcd phases =
            (es.eigenvalues().cast<cplx>() * cplx{0.0, -sub}).array().exp().matrix();
        small = q.cast<cplx>() * (phases.asDiagonal() * q.row(0).transpose().cast<cplx>());
        const double err = norm * k.residual * std::abs(small(m - 1));
        if (err <= opt.tolerance * std::abs(sub / dt)) break;
        sub *= 0.5;
        if (++used > opt.max_substeps) {
          throw NumericalError("Krylov tolerance " + std::to_string(opt.tolerance) +
                               " unreachable at dimension " + std::to_string(opt.krylov_dim));
        }
      }
      psi = norm * (k.basis * small);
      remaining -= sub;
      if (std::abs(remaining) < 1e-15 * std::abs(dt)) remaining = 0.0;
      h_try = sub;
      ++r.substeps;
    }
    r.times.push_back(static_cast<double>(step + 1) * dt);
    r.norm_drift.push_back(drift(psi));
    r.states.push_back(psi);
  }
  return r;
}

TermSplit TermSplit::create(const SparseOperator& h, std::vector<SparseOperator> terms, double tol) {
  if (terms.empty()) throw InvalidArgument("a term split needs at least one term");
  SparseOperator sum(h.basis(), SparseMatrix(h.dim(), h.dim()));
  for (const auto& t : terms) {
    if (t.dim() != h.dim()) throw InvalidArgument("term dimension differs from the Hamiltonian");
    t.require_hermitian("Trotter term");
    sum += t;
  }
  const double dev = max_abs_difference(sum, h);
  if (dev > tol) {
    throw InvalidArgument("terms do not sum to the Hamiltonian (max deviation " +
                          std::to_string(dev) + ")");
  }
  return TermSplit(h, std::move(terms));
}

SparseMatrix exact_term_propagator(const SparseOperator& term, double tau) {
  const Eigen::Index n = term.dim();
  const SparseMatrix& m = term.matrix();

  // Connected components of the sparsity graph (union-find).
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto root = [&](Eigen::Index a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (it.value() == cplx{0.0, 0.0}) continue;
      const auto a = root(it.row());
      const auto b = root(it.col());
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<Eigen::Index>> blocks(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) blocks[root(i)].push_back(i);

  std::vector<Triplet> t;
  for (const auto& b : blocks) {
    if (b.empty()) continue;
    const auto bs = static_cast<Eigen::Index>(b.size());
    if (bs == 1) {
      const double e = m.coeff(b[0], b[0]).real();
      t.emplace_back(b[0], b[0], std::exp(cplx{0.0, -e * tau}));
      continue;
    }
    require_dense_capacity(bs, "Trotter term block");
    DenseMatrix sub(bs, bs);
    for (Eigen::Index r = 0; r < bs; ++r) {
      for (Eigen::Index c = 0; c < bs; ++c) sub(r, c) = m.coeff(b[r], b[c]);
    }
    const DenseMatrix u = unitary_exp(sub, tau);
    for (Eigen::Index r = 0; r < bs; ++r) {
      for (Eigen::Index c = 0; c < bs; ++c) {
        if (u(r, c) != cplx{0.0, 0.0}) t.emplace_back(b[r], b[c], u(r, c));
      }
    }
  }
  SparseMatrix out(n, n);
  out.setFromTriplets(t.begin(), t.end());
  out.makeCompressed();
  return out;
}

EvolutionResult trotter_evolve(const TermSplit& split, const QuantumState& psi0, double t,
                               std::size_t n_steps, int order, std::size_t record_stride) {
  if (order != 1 && order != 2) throw InvalidArgument("Trotter order must be 1 or 2");
  if (n_steps == 0) throw InvalidArgument("Trotter evolution needs at least one step");
  if (record_stride == 0) throw InvalidArgument("record stride must be positive");
  if (split.hamiltonian().dim() != psi0.dim()) {
    throw InvalidArgument("state and Hamiltonian dimensions differ");
  }
  const double tau = t / static_cast<double>(n_steps);
  const auto& terms = split.terms();
  const std::size_t nt = terms.size();

  // Gate sequence for one step, as indices into `gates`.
  std::vector<SparseMatrix> gates;
  std::vector<std::size_t> sequence;
  if (order == 1 || nt == 1) {
    for (std::size_t a = 0; a < nt; ++a) {
      gates.push_back(exact_term_propagator(terms[a], tau));
      sequence.push_back(a);
    }
  } else {
    for (std::size_t a = 0; a + 1 < nt; ++a) gates.push_back(exact_term_propagator(terms[a], 0.5 * tau));
    gates.push_back(exact_term_propagator(terms[nt - 1], tau));
    for (std::size_t a = 0; a < nt; ++a) sequence.push_back(a);
    for (std::size_t a = nt - 1; a-- > 0;) sequence.push_back(a);
  }

  EvolutionResult r;
  r.method = order == 1 ? "trotter1" : "trotter2";
  r.step = tau;
  Vector psi = psi0.amplitudes();
  r.times.push_back(0.0);
  r.norm_drift.push_back(drift(psi));
  r.states.push_back(psi);
  for (std::size_t s = 1; s <= n_steps; ++s) {
    for (auto g : sequence) psi = gates[g] * psi;
    r.gate_count += sequence.size();
    if (s % record_stride == 0 || s == n_steps) {
      r.times.push_back(static_cast<double>(s) * tau);
      r.norm_drift.push_back(drift(psi));
      r.states.push_back(psi);
    }
  }
  return r;
}

DenseMatrix floquet_operator(const std::function<DenseMatrix(double)>& hamiltonian, double period,
                             std::size_t n_substeps) {
  if (!(period > 0.0)) throw InvalidArgument("drive period must be positive");
  if (n_substeps < 100) throw InvalidArgument("the Floquet operator needs at least 100 sub-steps");
  const double dt = period / static_cast<double>(n_substeps);
  DenseMatrix h = hamiltonian(0.5 * dt);
  DenseMatrix u = unitary_exp(h, dt);
  for (std::size_t k = 1; k < n_substeps; ++k) {
    h = hamiltonian((static_cast<double>(k) + 0.5) * dt);
    u = unitary_exp(h, dt) * u;
  }
  return u;
}

}  // namespace lgt
