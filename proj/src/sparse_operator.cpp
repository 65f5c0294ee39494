#include "lgt/sparse_operator.hpp"

#include <cmath>

#include "lgt/error.hpp"

namespace lgt {

SparseOperator::SparseOperator(BasisPtr basis, SparseMatrix matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw InvalidArgument("operators must be square");
  if (basis_ && static_cast<std::size_t>(matrix_.rows()) != basis_->size()) {
    throw InvalidArgument("operator dimension does not match its basis");
  }
  matrix_.makeCompressed();
}

SparseOperator SparseOperator::from_triplets(BasisPtr basis, const std::vector<Triplet>& triplets) {
  const auto n = static_cast<Eigen::Index>(basis->size());
  SparseMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune(cplx{0.0, 0.0}, 0.0);
  return SparseOperator(std::move(basis), std::move(m));
}

SparseOperator SparseOperator::from_triplets(Eigen::Index dim, const std::vector<Triplet>& triplets) {
  SparseMatrix m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune(cplx{0.0, 0.0}, 0.0);
  return SparseOperator(std::move(m));
}

SparseOperator SparseOperator::from_dense(const DenseMatrix& d, BasisPtr basis) {
  SparseMatrix m = d.sparseView(cplx{0.0, 0.0}, 0.0);
  return SparseOperator(std::move(basis), std::move(m));
}

SparseOperator SparseOperator::identity(BasisPtr basis) {
  const auto n = static_cast<Eigen::Index>(basis->size());
  SparseMatrix m(n, n);
  m.setIdentity();
  return SparseOperator(std::move(basis), std::move(m));
}

SparseOperator SparseOperator::zero(BasisPtr basis) {
  const auto n = static_cast<Eigen::Index>(basis->size());
  return SparseOperator(std::move(basis), SparseMatrix(n, n));
}

SparseOperator SparseOperator::adjoint() const {
  SparseMatrix a = matrix_.adjoint();
  return SparseOperator(basis_, std::move(a));
}

double SparseOperator::max_abs() const {
  double m = 0.0;
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

bool SparseOperator::is_hermitian(double tol) const {
  return max_abs_difference(*this, adjoint()) < tol;
}

const SparseOperator& SparseOperator::require_hermitian(const char* what, double tol) const {
  const double dev = max_abs_difference(*this, adjoint());
  if (!(dev < tol)) {
    throw NumericalError(std::string(what) + " is not Hermitian (max deviation " +
                         std::to_string(dev) + ")");
  }
  return *this;
}

bool SparseOperator::is_diagonal() const {
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) {
      if (it.row() != it.col() && it.value() != cplx{0.0, 0.0}) return false;
    }
  }
  return true;
}

Eigen::VectorXd SparseOperator::real_diagonal() const { return matrix_.diagonal().real(); }

void SparseOperator::check_compatible(const SparseOperator& o) const {
  if (dim() != o.dim()) throw InvalidArgument("operator dimensions differ");
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& o) {
  check_compatible(o);
  matrix_ = matrix_ + o.matrix_;
  if (!basis_) basis_ = o.basis_;
  return *this;
}

SparseOperator& SparseOperator::operator-=(const SparseOperator& o) {
  check_compatible(o);
  matrix_ = matrix_ - o.matrix_;
  if (!basis_) basis_ = o.basis_;
  return *this;
}

SparseOperator& SparseOperator::operator*=(cplx s) {
  matrix_ *= s;
  return *this;
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  a.check_compatible(b);
  SparseMatrix m = (a.matrix_ * b.matrix_).pruned();
  return SparseOperator(a.basis_ ? a.basis_ : b.basis_, std::move(m));
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) { return a * b - b * a; }

double max_abs_difference(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("operator dimensions differ");
  SparseMatrix d = a.matrix() - b.matrix();
  return SparseOperator(std::move(d)).max_abs();
}

QuantumState::QuantumState(BasisPtr basis, Vector amplitudes, bool normalize)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (basis_ && static_cast<std::size_t>(amplitudes_.size()) != basis_->size()) {
    throw InvalidArgument("state dimension does not match its basis");
  }
  const double n = amplitudes_.norm();
  if (normalize) {
    if (n == 0.0) throw InvalidArgument("cannot normalize the zero vector");
    amplitudes_ /= n;
  }
}

QuantumState QuantumState::basis_state(BasisPtr basis, std::size_t index) {
  if (index >= basis->size()) throw InvalidArgument("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(basis->size()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return QuantumState(std::move(basis), std::move(v), false);
}

}  // namespace lgt
