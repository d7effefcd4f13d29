#ifndef TRACELAB_HERMITIAN_HPP
#define TRACELAB_HERMITIAN_HPP

#include <algorithm>
#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "tracelab/error.hpp"
#include "tracelab/tolerance.hpp"

namespace tracelab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Dense self-adjoint matrix. The stored entries are exactly Hermitian:
/// the constructor checks the input against its adjoint and keeps the
/// average (m + m*) / 2.
class HermitianMatrix {
 public:
  /// Throws DimensionError for empty or non-square input and DomainError
  /// when |m(i,j) - conj(m(j,i))| exceeds 1e-12 * max(1, max|m|).
  explicit HermitianMatrix(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
      throw DimensionError("HermitianMatrix: expected a non-empty square matrix, got " +
                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    const double skew = tracelab::max_abs(Matrix(m - m.adjoint()));
    const double limit = tol::kHermitian * std::max(1.0, tracelab::max_abs(m));
    if (!(skew <= limit)) {
      throw DomainError("HermitianMatrix: input is not Hermitian, asymmetry " +
                        std::to_string(skew));
    }
    data_ = (m + m.adjoint()) * 0.5;
  }

  /// Symmetrizes without the asymmetry check. For results that are
  /// Hermitian in exact arithmetic (U D U*, z* x z, ...).
  static HermitianMatrix symmetrized(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
      throw DimensionError("HermitianMatrix: expected a non-empty square matrix");
    }
    HermitianMatrix out;
    out.data_ = (m + m.adjoint()) * 0.5;
    return out;
  }

  static HermitianMatrix identity(Index n) { return symmetrized(Matrix::Identity(n, n)); }
  static HermitianMatrix zero(Index n) { return symmetrized(Matrix::Zero(n, n)); }

  static HermitianMatrix diagonal(const RealVector& d) {
    return symmetrized(d.cast<Complex>().asDiagonal().toDenseMatrix());
  }

  /// U diag(d) U*.
  static HermitianMatrix from_spectrum(const Matrix& basis, const RealVector& d) {
    return symmetrized(basis * d.cast<Complex>().asDiagonal() * basis.adjoint());
  }

  Index dim() const { return data_.rows(); }
  const Matrix& matrix() const { return data_; }
  Complex operator()(Index i, Index j) const { return data_(i, j); }

  double max_abs() const { return tracelab::max_abs(data_); }
  double frobenius() const { return data_.norm(); }

  HermitianMatrix& operator+=(const HermitianMatrix& o) {
    check_same_dim(o);
    data_ += o.data_;
    return *this;
  }
  HermitianMatrix& operator-=(const HermitianMatrix& o) {
    check_same_dim(o);
    data_ -= o.data_;
    return *this;
  }
  HermitianMatrix& operator*=(double s) {
    data_ *= s;
    return *this;
  }

  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
  friend HermitianMatrix operator-(HermitianMatrix a) { return a *= -1.0; }

  /// x + s * I
  HermitianMatrix shifted(double s) const {
    HermitianMatrix out = *this;
    out.data_.diagonal().array() += s;
    return out;
  }

 private:
  HermitianMatrix() = default;

  void check_same_dim(const HermitianMatrix& o) const {
    if (o.dim() != dim()) {
      throw DimensionError("HermitianMatrix: dimension mismatch " + std::to_string(dim()) +
                           " vs " + std::to_string(o.dim()));
    }
  }

  Matrix data_;
};

/// z* x z, the congruence used by the transformer identity of operator means.
inline HermitianMatrix congruence(const Matrix& z, const HermitianMatrix& x) {
  if (z.rows() != x.dim()) throw DimensionError("congruence: dimension mismatch");
  return HermitianMatrix::symmetrized(z.adjoint() * x.matrix() * z);
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::symmetrized(kron(a.matrix(), b.matrix()));
}

}  // namespace tracelab

#endif  // TRACELAB_HERMITIAN_HPP
