#include <cmath>

#include "lgt/dense.hpp"
#include "lgt/error.hpp"
#include "lgt/hamiltonians.hpp"

namespace lgt {

EffectiveHamiltonian effective_second_order(const SparseOperator& h0,
                                            const std::vector<SparseOperator>& generators,
                                            double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("Gamma must be positive");
  const Eigen::Index n = h0.dim();
  require_dense_capacity(n, "effective_second_order");
  for (std::size_t a = 0; a < generators.size(); ++a) {
    if (generators[a].dim() != n) throw InvalidArgument("generator dimension differs from H0");
    for (std::size_t b = a + 1; b < generators.size(); ++b) {
      const double c = commutator(generators[a], generators[b]).max_abs();
      if (c > 1e-12) {
        throw InvalidArgument("generators must commute pairwise (|[G_a, G_b]| = " +
                              std::to_string(c) + ")");
      }
    }
  }

  DenseMatrix penalty = DenseMatrix::Zero(n, n);
  for (const auto& g : generators) {
    const DenseMatrix gd = g.dense();
    penalty += gd * gd;
  }
  const auto es = eigensystem(penalty);
  const double tol = 1e-9 * std::max(1.0, es.values.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> kernel_idx;
  std::vector<Eigen::Index> excited_idx;
  for (Eigen::Index k = 0; k < n; ++k) {
    (std::abs(es.values(k)) < tol ? kernel_idx : excited_idx).push_back(k);
  }

  EffectiveHamiltonian out;
  const auto nk = static_cast<Eigen::Index>(kernel_idx.size());
  out.kernel.resize(n, nk);
  for (Eigen::Index c = 0; c < nk; ++c) out.kernel.col(c) = es.vectors.col(kernel_idx[c]);

  const DenseMatrix h = h0.dense();
  const DenseMatrix h_k = h * out.kernel;  // H0 G, columns in the parent space
  out.first_order = out.kernel.adjoint() * h_k;

  // P H0 G expressed in the excited eigenbasis of sum G^2, then weighted by 1/lambda.
  DenseMatrix coupling(static_cast<Eigen::Index>(excited_idx.size()), nk);
  for (Eigen::Index r = 0; r < coupling.rows(); ++r) {
    const auto v = es.vectors.col(excited_idx[r]);
    coupling.row(r) = (v.adjoint() * h_k) / std::sqrt(es.values(excited_idx[r]));
  }
  out.second_order = -(coupling.adjoint() * coupling) / gamma;

  DenseMatrix total = out.first_order + out.second_order;
  total = 0.5 * (total + total.adjoint()).eval();
  out.h_eff = SparseOperator::from_dense(total);
  return out;
}

}  // namespace lgt
