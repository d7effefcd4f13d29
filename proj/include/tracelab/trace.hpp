#ifndef TRACELAB_TRACE_HPP
#define TRACELAB_TRACE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tracelab/functional_calculus.hpp"

namespace tracelab {

enum class TraceKind { standard, normalized };

/// Tr (standard) or the tracial state Tr/n (normalized) on n x n matrices.
class TraceFunctional {
 public:
  TraceFunctional(TraceKind kind, Index dim) : kind_(kind), dim_(dim) {
    if (dim < 1) throw DimensionError("TraceFunctional: dimension must be positive");
  }

  static TraceFunctional standard(Index dim) { return {TraceKind::standard, dim}; }
  static TraceFunctional normalized(Index dim) { return {TraceKind::normalized, dim}; }

  TraceKind kind() const { return kind_; }
  Index dim() const { return dim_; }

  /// Weight of one eigenvalue / basis vector: 1 for Tr, 1/n for Tr/n.
  double weight() const { return kind_ == TraceKind::standard ? 1.0 : 1.0 / static_cast<double>(dim_); }

  /// Imaginary residue of the diagonal sum is discarded.
  double operator()(const Matrix& x) const {
    if (x.rows() != dim_ || x.cols() != dim_) throw DimensionError("trace: dimension mismatch");
    return weight() * x.diagonal().sum().real();
  }
  double operator()(const HermitianMatrix& x) const { return (*this)(x.matrix()); }

  /// Same functional on a different dimension.
  TraceFunctional resized(Index dim) const { return {kind_, dim}; }

 private:
  TraceKind kind_;
  Index dim_;
};

inline double trace(const TraceFunctional& tf, const HermitianMatrix& x) { return tf(x); }

/// Orthonormal basis, stored as the columns of a unitary matrix.
class BasisFrame {
 public:
  explicit BasisFrame(Matrix vectors) : vectors_(std::move(vectors)) {
    if (vectors_.rows() != vectors_.cols() || vectors_.rows() < 1) {
      throw DimensionError("BasisFrame: expected a non-empty square matrix");
    }
    const double defect = unitarity_defect(vectors_);
    if (!(defect <= tol::kUnitary)) throw DomainError("BasisFrame: columns are not orthonormal");
  }

  static BasisFrame standard(Index dim) { return BasisFrame(Matrix::Identity(dim, dim)); }
  static BasisFrame random(Index dim, std::uint64_t seed) { return BasisFrame(random_unitary(dim, seed)); }

  Index dim() const { return vectors_.rows(); }
  const Matrix& vectors() const { return vectors_; }

 private:
  Matrix vectors_;
};

/// Both evaluations of tau(f(t)): the trace of the matrix f(t), and the
/// weighted sum of f over the joint eigenvalue rows.
struct TraceRoutes {
  double matrix_route;
  double spectral_route;
  double scale;  // sum of w_j |f(row_j)|
};

inline TraceRoutes trace_of_function_routes(const TraceFunctional& tf, const MultivariateFunction& f,
                                            const CommutingTuple& t) {
  if (tf.dim() != t.dim()) throw DimensionError("trace_of_function: dimension mismatch");
  const HermitianMatrix fx = apply_multivariable(f, t);
  const RealMatrix& rows = t.joint_eigenvalues();
  std::vector<double> point(t.k());
  double sum = 0.0;
  double scale = 0.0;
  for (Index j = 0; j < rows.rows(); ++j) {
    for (std::size_t i = 0; i < t.k(); ++i) point[i] = rows(j, static_cast<Index>(i));
    fit_to_domain(f, point, tol::kDomainSlack);
    const double v = f(point);
    sum += v;
    scale += std::abs(v);
  }
  return {tf(fx), tf.weight() * sum, tf.weight() * scale};
}

/// tau(f(x_1, ..., x_k)). Computed through the matrix f(t) and through the
/// joint eigenvalues; throws NumericalFailure if the two disagree beyond
/// 1e-9 relative.
inline double trace_of_function(const TraceFunctional& tf, const MultivariateFunction& f,
                                const CommutingTuple& t) {
  const TraceRoutes r = trace_of_function_routes(tf, f, t);
  const double diff = std::abs(r.matrix_route - r.spectral_route);
  if (diff > tol::kTraceRoutes * std::max(1.0, r.scale)) {
    throw NumericalFailure("trace_of_function: matrix and spectral routes disagree", diff);
  }
  return r.spectral_route;
}

inline double trace_of_function(const TraceFunctional& tf, const MultivariateFunction& f,
                                const HermitianMatrix& x) {
  return trace_of_function(tf, f, as_tuple(x));
}

/// sum_j w_j f(<b_j, x_1 b_j>, ..., <b_j, x_k b_j>): f evaluated on the
/// diagonal compressions of the tuple in the frame b. For convex f this
/// never exceeds trace_of_function, with equality in the joint eigenbasis.
inline double diagonal_surrogate(const TraceFunctional& tf, const MultivariateFunction& f,
                                 const CommutingTuple& t, const BasisFrame& b) {
  if (tf.dim() != t.dim() || b.dim() != t.dim()) throw DimensionError("diagonal_surrogate: dimension mismatch");
  if (f.arity() != t.k()) throw DomainError("diagonal_surrogate: arity mismatch for '" + f.name + "'");
  const Matrix& v = b.vectors();
  RealMatrix diag(t.dim(), static_cast<Index>(t.k()));
  for (std::size_t i = 0; i < t.k(); ++i) {
    diag.col(static_cast<Index>(i)) = (v.adjoint() * t.member(i).matrix() * v).diagonal().real();
  }
  std::vector<double> point(t.k());
  double sum = 0.0;
  for (Index j = 0; j < diag.rows(); ++j) {
    for (std::size_t i = 0; i < t.k(); ++i) point[i] = diag(j, static_cast<Index>(i));
    fit_to_domain(f, point, tol::kDomainSlack);
    sum += f(point);
  }
  return tf.weight() * sum;
}

/// Largest diagonal surrogate over `basis_count` seeded random frames and
/// the joint eigenbasis of t.
inline double surrogate_supremum_probe(const TraceFunctional& tf, const MultivariateFunction& f,
                                       const CommutingTuple& t, int basis_count, std::uint64_t seed) {
  if (basis_count < 1) throw std::invalid_argument("surrogate_supremum_probe: basis_count must be >= 1");
  double best = diagonal_surrogate(tf, f, t, BasisFrame(t.joint_basis()));
  Rng rng(seed);
  for (int i = 0; i < basis_count; ++i) {
    best = std::max(best, diagonal_surrogate(tf, f, t, BasisFrame(random_unitary(t.dim(), rng))));
  }
  return best;
}

/// Kadison-Fuglede determinant exp(tau(log|x|)), |x| taken spectrally.
/// Throws SingularError when min|eigenvalue| <= 1e-12 max|eigenvalue|.
inline double kf_determinant(const TraceFunctional& tf, const HermitianMatrix& x) {
  if (tf.dim() != x.dim()) throw DimensionError("kf_determinant: dimension mismatch");
  const RealVector mags = eigendecompose(x).eigenvalues.cwiseAbs();
  if (!(mags.minCoeff() > tol::kSingular * mags.maxCoeff())) {
    throw SingularError("kf_determinant: matrix is singular to working precision");
  }
  return std::exp(tf.weight() * mags.array().log().sum());
}

/// Determinant of a general invertible matrix z, with |z| = (z* z)^{1/2}.
inline double kf_determinant(const TraceFunctional& tf, const Matrix& z) {
  if (tf.dim() != z.rows() || z.rows() != z.cols()) throw DimensionError("kf_determinant: dimension mismatch");
  const RealVector sq = eigendecompose(HermitianMatrix::symmetrized(z.adjoint() * z)).eigenvalues;
  const double top = std::max(sq.maxCoeff(), 0.0);
  if (!(sq.minCoeff() > tol::kSingular * tol::kSingular * top)) {
    throw SingularError("kf_determinant: matrix is singular to working precision");
  }
  return std::exp(0.5 * tf.weight() * sq.array().log().sum());
}

/// (tau(x^{1/p}))^p for positive semidefinite x and p > 0.
inline double schatten_quasi_power(const TraceFunctional& tf, const HermitianMatrix& x, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("schatten_quasi_power: p must be positive");
  if (tf.dim() != x.dim()) throw DimensionError("schatten_quasi_power: dimension mismatch");
  const RealVector ev = eigendecompose(x).eigenvalues;
  const double radius = ev.cwiseAbs().maxCoeff();
  if (ev.minCoeff() < -Tolerance{}.bound(radius)) {
    throw DomainError("schatten_quasi_power: matrix is not positive semidefinite");
  }
  double sum = 0.0;
  for (Index j = 0; j < ev.size(); ++j) sum += std::pow(std::max(ev(j), 0.0), 1.0 / p);
  return std::pow(tf.weight() * sum, p);
}

/// (tau(|x|^p))^{1/p}.
inline double schatten_norm(const TraceFunctional& tf, const HermitianMatrix& x, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("schatten_norm: p must be positive");
  if (tf.dim() != x.dim()) throw DimensionError("schatten_norm: dimension mismatch");
  const RealVector ev = eigendecompose(x).eigenvalues;
  double sum = 0.0;
  for (Index j = 0; j < ev.size(); ++j) sum += std::pow(std::abs(ev(j)), p);
  return std::pow(tf.weight() * sum, 1.0 / p);
}

}  // namespace tracelab

#endif  // TRACELAB_TRACE_HPP
