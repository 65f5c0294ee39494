#include "lgt/floquet.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "lgt/dense.hpp"
#include "lgt/dynamics.hpp"
#include "lgt/error.hpp"

namespace lgt {

double DriveSpec::period() const { return 2.0 * std::numbers::pi / omega; }

void DriveSpec::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidArgument("drive frequency must be positive");
  h0.require_hermitian("H0");
  std::set<int> seen;
  for (std::size_t k = 0; k < harmonics.size(); ++k) {
    const auto& h = harmonics[k];
    if (h.n < 1) throw InvalidArgument("harmonic index must be >= 1");
    if (!seen.insert(h.n).second) throw InvalidArgument("harmonic indices must be distinct");
    if (h.v_plus.dim() != h0.dim()) throw InvalidArgument("harmonic dimension differs from H0");
    if (h.v_minus) {
      if (h.v_minus->dim() != h0.dim()) throw InvalidArgument("harmonic dimension differs from H0");
      if (max_abs_difference(*h.v_minus, h.v_plus.adjoint()) > 1e-12) {
        throw InvalidArgument("harmonic " + std::to_string(h.n) + " is not an adjoint pair");
      }
    }
  }
}

SparseOperator DriveSpec::v_minus(std::size_t k) const {
  const auto& h = harmonics.at(k);
  return h.v_minus ? *h.v_minus : h.v_plus.adjoint();
}

DenseMatrix DriveSpec::at(double t) const {
  DenseMatrix h = h0.dense();
  for (std::size_t k = 0; k < harmonics.size(); ++k) {
    const double arg = harmonics[k].n * omega * t;
    const cplx e{std::cos(arg), std::sin(arg)};
    h += e * harmonics[k].v_plus.dense() + std::conj(e) * v_minus(k).dense();
  }
  return h;
}

SparseOperator effective_hamiltonian_first_order(const DriveSpec& drive) {
  drive.validate();
  SparseOperator h = drive.h0;
  for (std::size_t k = 0; k < drive.harmonics.size(); ++k) {
    const double c = 1.0 / (drive.omega * drive.harmonics[k].n);
    h += commutator(drive.harmonics[k].v_plus, drive.v_minus(k)) * cplx{c, 0.0};
  }
  h.require_hermitian("first-order effective Hamiltonian");
  return h;
}

DenseMatrix floquet_hamiltonian(const DenseMatrix& u, double period) {
  if (!(period > 0.0)) throw InvalidArgument("drive period must be positive");
  return cplx{0.0, 1.0 / period} * unitary_log(u);
}

double floquet_deviation(const DriveSpec& drive, std::size_t n_substeps) {
  const DenseMatrix heff = effective_hamiltonian_first_order(drive).dense();
  const double period = drive.period();
  if (operator_norm(heff) * period >= std::numbers::pi / 2) {
    throw NumericalError("|H_eff| T exceeds pi/2; the matrix logarithm branch is ambiguous");
  }
  const DenseMatrix u = floquet_operator([&](double t) { return drive.at(t); }, period, n_substeps);
  return operator_norm(heff - floquet_hamiltonian(u, period));
}

}  // namespace lgt
