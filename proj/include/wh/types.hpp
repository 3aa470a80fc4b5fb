#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wh {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Which Hilbert space a matrix acts on: the Hermite-truncated model of
/// L^2(R), or the a-dimensional space of the finite induced representation.
enum class Basis { hermite, tau };

/// Dense complex square matrix tagged with its basis.
struct Operator {
  Basis basis = Basis::hermite;
  Matrix m;

  Operator() = default;
  Operator(Basis b, Matrix mat) : basis(b), m(std::move(mat)) {
    if (m.rows() != m.cols())
      throw std::invalid_argument("Operator: matrix must be square");
  }

  static Operator zero(Basis b, int dim) { return {b, Matrix::Zero(dim, dim)}; }
  static Operator identity(Basis b, int dim) {
    return {b, Matrix::Identity(dim, dim)};
  }

  int dim() const { return static_cast<int>(m.rows()); }
  const cplx* data() const { return m.data(); }
  cplx* data() { return m.data(); }

  Operator adjoint() const { return {basis, m.adjoint()}; }

  /// Hilbert-Schmidt norm, ||A||^2 = tr(A A^*).
  double hs_norm() const { return m.norm(); }

  /// Numerical rank from singular values, threshold tol_rel * sigma_max.
  int rank(double tol_rel = 1e-10) const;
};

/// tr(A B^*) — the Hilbert-Schmidt inner product.
cplx hs_inner(const Operator& a, const Operator& b);

}  // namespace wh
