#pragma once

#include <Eigen/Dense>

#include "lgt/sparse_operator.hpp"

namespace lgt {

/// Largest dimension handled by dense eigendecompositions.
inline constexpr Eigen::Index kMaxDenseDim = 4096;

/// Ascending eigenvalues of a Hermitian operator (dense path).
Eigen::VectorXd eigenvalues(const SparseOperator& h);
Eigen::VectorXd eigenvalues(const DenseMatrix& h);

struct EigenSystem {
  Eigen::VectorXd values;
  DenseMatrix vectors;  ///< columns, orthonormal
};

EigenSystem eigensystem(const DenseMatrix& h);

/// exp(-i H t) for Hermitian H.
DenseMatrix unitary_exp(const DenseMatrix& h, double t);

/// Principal logarithm of a unitary matrix, eigenphases in (-pi, pi].
DenseMatrix unitary_log(const DenseMatrix& u);

/// Operator-norm (largest singular value).
double operator_norm(const DenseMatrix& m);

void require_dense_capacity(Eigen::Index dim, const char* what);

}  // namespace lgt
