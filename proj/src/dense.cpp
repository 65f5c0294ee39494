#include "lgt/dense.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "lgt/error.hpp"

namespace lgt {

void require_dense_capacity(Eigen::Index dim, const char* what) {
  if (dim > kMaxDenseDim) {
    throw CapacityError(std::string(what) + ": dimension too large for the dense path",
                        static_cast<double>(dim), static_cast<double>(kMaxDenseDim));
  }
}

Eigen::VectorXd eigenvalues(const DenseMatrix& h) {
  require_dense_capacity(h.rows(), "eigenvalues");
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Eigen::VectorXd eigenvalues(const SparseOperator& h) {
  if (h.dim() == 0) return {};
  return eigenvalues(h.dense());
}

EigenSystem eigensystem(const DenseMatrix& h) {
  require_dense_capacity(h.rows(), "eigensystem");
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

DenseMatrix unitary_exp(const DenseMatrix& h, double t) {
  const auto es = eigensystem(h);
  const Eigen::VectorXcd phases =
      (es.values.cast<cplx>() * cplx{0.0, -t}).array().exp().matrix();
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

DenseMatrix unitary_log(const DenseMatrix& u) {
  require_dense_capacity(u.rows(), "unitary_log");
  Eigen::ComplexSchur<DenseMatrix> schur(u);
  const DenseMatrix& q = schur.matrixU();
  const DenseMatrix& t = schur.matrixT();
  Eigen::VectorXcd logs(t.rows());
  for (Eigen::Index k = 0; k < t.rows(); ++k) {
    const cplx z = t(k, k);
    logs(k) = cplx{std::log(std::abs(z)), std::arg(z)};
  }
  return q * logs.asDiagonal() * q.adjoint();
}

double operator_norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<DenseMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace lgt
