#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <vector>

#include "lgt/basis.hpp"

namespace lgt {

using cplx = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<cplx>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Triplet = Eigen::Triplet<cplx>;

/// Complex sparse operator, optionally tied to the basis it acts on.
///
/// Storage is Eigen's compressed format, so entries are sorted and
/// duplicate triplets are summed on construction.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(BasisPtr basis, SparseMatrix matrix);
  /// Operator on an anonymous space of the given dimension.
  explicit SparseOperator(SparseMatrix matrix) : SparseOperator(nullptr, std::move(matrix)) {}

  static SparseOperator from_triplets(BasisPtr basis, const std::vector<Triplet>& triplets);
  static SparseOperator from_triplets(Eigen::Index dim, const std::vector<Triplet>& triplets);
  static SparseOperator from_dense(const DenseMatrix& m, BasisPtr basis = nullptr);
  static SparseOperator identity(BasisPtr basis);
  static SparseOperator zero(BasisPtr basis);

  const BasisPtr& basis() const noexcept { return basis_; }
  const SparseMatrix& matrix() const noexcept { return matrix_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }

  DenseMatrix dense() const { return DenseMatrix(matrix_); }
  Vector apply(const Vector& v) const { return matrix_ * v; }

  SparseOperator adjoint() const;
  /// Largest |entry|; zero for an empty operator.
  double max_abs() const;
  bool is_hermitian(double tol = 1e-12) const;
  /// Throws NumericalError unless Hermitian within `tol`.
  const SparseOperator& require_hermitian(const char* what, double tol = 1e-12) const;
  bool is_diagonal() const;
  Eigen::VectorXd real_diagonal() const;

  cplx expectation(const Vector& v) const { return v.dot(matrix_ * v); }

  SparseOperator& operator+=(const SparseOperator& o);
  SparseOperator& operator-=(const SparseOperator& o);
  SparseOperator& operator*=(cplx s);

  friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) { return a += b; }
  friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) { return a -= b; }
  friend SparseOperator operator*(SparseOperator a, cplx s) { return a *= s; }
  friend SparseOperator operator*(cplx s, SparseOperator a) { return a *= s; }
  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);

 private:
  void check_compatible(const SparseOperator& o) const;

  BasisPtr basis_;
  SparseMatrix matrix_;
};

/// [A, B] = AB - BA.
SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);

/// max |A - B| entrywise.
double max_abs_difference(const SparseOperator& a, const SparseOperator& b);

/// Normalized amplitude vector over a basis.
class QuantumState {
 public:
  QuantumState(BasisPtr basis, Vector amplitudes, bool normalize = true);

  static QuantumState basis_state(BasisPtr basis, std::size_t index);

  const BasisPtr& basis() const noexcept { return basis_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Eigen::Index dim() const noexcept { return amplitudes_.size(); }
  double norm() const { return amplitudes_.norm(); }

  cplx overlap(const QuantumState& other) const { return amplitudes_.dot(other.amplitudes_); }
  double expectation(const SparseOperator& op) const { return op.expectation(amplitudes_).real(); }

 private:
  BasisPtr basis_;
  Vector amplitudes_;
};

}  // namespace lgt
