#ifndef TRACELAB_EIGEN_HPP
#define TRACELAB_EIGEN_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "tracelab/hermitian.hpp"

namespace tracelab {

/// Eigenvalues in ascending order and a unitary basis whose columns are
/// the matching eigenvectors.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix basis;

  Index dim() const { return eigenvalues.size(); }
  double min() const { return eigenvalues(0); }
  double max() const { return eigenvalues(eigenvalues.size() - 1); }

  /// Largest |eigenvalue|, i.e. the operator norm.
  double spectral_radius() const { return std::max(std::abs(min()), std::abs(max())); }

  HermitianMatrix reconstruct() const { return HermitianMatrix::from_spectrum(basis, eigenvalues); }

  /// basis * diag(g(eigenvalues)) * basis*
  HermitianMatrix map(const std::function<double(double)>& g) const {
    RealVector mapped = eigenvalues.unaryExpr(g);
    return HermitianMatrix::from_spectrum(basis, mapped);
  }
};

struct JacobiOptions {
  /// Stop when the off-diagonal Frobenius mass is at most tolerance * ||x||_F.
  double tolerance = 1e-12;
  int max_sweeps = 100;
};

namespace detail {

inline double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < j; ++i) sum += std::norm(a(i, j));
  }
  return std::sqrt(2.0 * sum);
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
///
/// Each rotation first removes the phase of a(p,q) with a diagonal unitary,
/// then applies the classical real rotation that zeroes the (now real)
/// off-diagonal pair. The accumulated product of rotations is the basis.
/// Throws NumericalFailure if the sweep cap is reached.
inline SpectralDecomposition eigendecompose(const HermitianMatrix& x, const JacobiOptions& opts = {}) {
  const Index n = x.dim();
  Matrix a = x.matrix();
  Matrix v = Matrix::Identity(n, n);
  const double target = opts.tolerance * a.norm();

  int sweep = 0;
  for (double off = detail::off_diagonal_norm(a); off > target; off = detail::off_diagonal_norm(a)) {
    if (sweep++ == opts.max_sweeps) {
      throw NumericalFailure("eigendecompose: Jacobi iteration did not converge", off);
    }
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex phase = apq / r;
        const Complex phase_conj = std::conj(phase);
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // a <- a G with G(p,p)=c, G(p,q)=s, G(q,p)=-s e^{-i phi}, G(q,q)=c e^{-i phi}
        for (Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * phase_conj * akq;
          a(k, q) = s * akp + c * phase_conj * akq;
        }
        // a <- G* a
        for (Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * phase_conj * vkq;
          v(k, q) = s * vkp + c * phase_conj * vkq;
        }
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return a(i, i).real() < a(j, j).real(); });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.basis.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = a(src, src).real();
    out.basis.col(k) = v.col(src);
  }
  return out;
}

inline RealVector eigenvalues(const HermitianMatrix& x) { return eigendecompose(x).eigenvalues; }

inline double min_eigenvalue(const HermitianMatrix& x) { return eigendecompose(x).min(); }

/// Operator norm of a Hermitian matrix (largest |eigenvalue|).
inline double operator_norm(const HermitianMatrix& x) { return eigendecompose(x).spectral_radius(); }

/// ||basis* basis - I||_max
inline double unitarity_defect(const Matrix& basis) {
  const Index n = basis.cols();
  return max_abs(basis.adjoint() * basis - Matrix::Identity(n, n));
}

}  // namespace tracelab

#endif  // TRACELAB_EIGEN_HPP
