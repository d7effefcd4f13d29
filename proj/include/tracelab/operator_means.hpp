#ifndef TRACELAB_OPERATOR_MEANS_HPP
#define TRACELAB_OPERATOR_MEANS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "tracelab/functional_calculus.hpp"

namespace tracelab {

namespace detail {

inline void require_same_dim(const std::vector<HermitianMatrix>& xs, const char* who) {
  if (xs.empty()) throw DimensionError(std::string(who) + ": empty input");
  for (const auto& x : xs) {
    if (x.dim() != xs.front().dim()) throw DimensionError(std::string(who) + ": dimension mismatch");
  }
}

/// Largest operator norm in the family.
inline double family_scale(const std::vector<HermitianMatrix>& xs) {
  double s = 0.0;
  for (const auto& x : xs) s = std::max(s, operator_norm(x));
  return s;
}

/// Checks positive semidefiniteness at -1e-10 scale; returns the smallest
/// eigenvalue over the family.
inline double require_psd(const std::vector<HermitianMatrix>& xs, double scale, const char* who) {
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& x : xs) {
    const double m = min_eigenvalue(x);
    if (m < -1e-10 * scale) {
      throw DomainError(std::string(who) + ": input is not positive semidefinite (eigenvalue " +
                        std::to_string(m) + ")");
    }
    lowest = std::min(lowest, m);
  }
  return lowest;
}

inline HermitianMatrix harmonic_direct(const std::vector<HermitianMatrix>& xs) {
  HermitianMatrix sum = HermitianMatrix::zero(xs.front().dim());
  for (const auto& x : xs) sum += matrix_inverse(x);
  return matrix_inverse(sum) * static_cast<double>(xs.size());
}

/// Norm limit of m(eps) as eps -> 0, from m at eps in {1e-4, 1e-5, 1e-6}
/// times scale. Richardson extrapolation assumes a linear leading term;
/// the two extrapolants must agree within 1e-6 scale.
inline HermitianMatrix epsilon_limit(const std::function<HermitianMatrix(double)>& m, double scale,
                                     const char* who) {
  const HermitianMatrix m4 = m(1e-4 * scale);
  const HermitianMatrix m5 = m(1e-5 * scale);
  const HermitianMatrix m6 = m(1e-6 * scale);
  const HermitianMatrix r1 = (m5 * 10.0 - m4) * (1.0 / 9.0);
  const HermitianMatrix r2 = (m6 * 10.0 - m5) * (1.0 / 9.0);
  const double spread = (r1 - r2).max_abs();
  if (spread > 1e-6 * scale) {
    throw NumericalFailure(std::string(who) + ": epsilon extrapolation did not settle", spread);
  }
  return r2;
}

}  // namespace detail

/// Loewner floor -max(1e-9, 1e-8 scale) used for operator inequalities.
inline double loewner_floor(double scale) { return -std::max(1e-9, 1e-8 * scale); }

/// Smallest eigenvalue of b - a; a <= b in Loewner order when it is
/// above loewner_floor.
inline double loewner_margin(const HermitianMatrix& a, const HermitianMatrix& b) { return min_eigenvalue(b - a); }

/// n-fold harmonic mean via shifted inputs x_i + eps I and the
/// extrapolated limit eps -> 0, whether or not the inputs are singular.
inline HermitianMatrix harmonic_mean_limit(const std::vector<HermitianMatrix>& xs) {
  detail::require_same_dim(xs, "harmonic_mean");
  const double scale = detail::family_scale(xs);
  detail::require_psd(xs, scale, "harmonic_mean");
  if (scale == 0.0) return HermitianMatrix::zero(xs.front().dim());
  return detail::epsilon_limit(
      [&](double eps) {
        std::vector<HermitianMatrix> shifted;
        for (const auto& x : xs) shifted.push_back(x.shifted(eps));
        return detail::harmonic_direct(shifted);
      },
      scale, "harmonic_mean");
}

/// n (x_1^{-1} + ... + x_n^{-1})^{-1} for positive semidefinite x_i. Inputs
/// with an eigenvalue at or below 1e-12 of the largest norm take the
/// shifted-limit path.
inline HermitianMatrix harmonic_mean(const std::vector<HermitianMatrix>& xs) {
  detail::require_same_dim(xs, "harmonic_mean");
  const double scale = detail::family_scale(xs);
  const double lowest = detail::require_psd(xs, scale, "harmonic_mean");
  if (scale == 0.0) return HermitianMatrix::zero(xs.front().dim());
  if (lowest > tol::kSingular * scale) return detail::harmonic_direct(xs);
  return harmonic_mean_limit(xs);
}

/// Half the two-fold harmonic mean. For invertible x + y the value is
/// cross-checked against x (x + y)^{-1} y.
inline HermitianMatrix parallel_sum(const HermitianMatrix& x, const HermitianMatrix& y) {
  const HermitianMatrix h = harmonic_mean({x, y}) * 0.5;
  const HermitianMatrix s = x + y;
  const SpectralDecomposition dec = eigendecompose(s);
  if (dec.min() > tol::kSingular * dec.spectral_radius()) {
    const Matrix other = x.matrix() * matrix_inverse(s).matrix() * y.matrix();
    const double diff = max_abs(other - h.matrix());
    if (diff > 1e-8 * std::max(1.0, h.max_abs())) {
      throw NumericalFailure("parallel_sum: the two formulas disagree", diff);
    }
  }
  return h;
}

/// x # y = x^{1/2} (x^{-1/2} y x^{-1/2})^{1/2} x^{1/2}. If neither input is
/// invertible the shifted limit is taken; geometric means of singular pairs
/// can approach their limit like sqrt(eps), which the extrapolation reports
/// as a NumericalFailure.
inline HermitianMatrix geometric_mean(const HermitianMatrix& x, const HermitianMatrix& y) {
  const std::vector<HermitianMatrix> pair{x, y};
  detail::require_same_dim(pair, "geometric_mean");
  const double scale = detail::family_scale(pair);
  detail::require_psd(pair, scale, "geometric_mean");
  if (scale == 0.0) return HermitianMatrix::zero(x.dim());
  const auto formula = [](const HermitianMatrix& a, const HermitianMatrix& b) {
    const SpectralDecomposition dec = eigendecompose(a);
    const HermitianMatrix root = dec.map([](double v) { return std::sqrt(std::max(v, 0.0)); });
    const HermitianMatrix inv_root = dec.map([](double v) { return 1.0 / std::sqrt(v); });
    const HermitianMatrix inner =
        eigendecompose(congruence(inv_root.matrix(), b)).map([](double v) { return std::sqrt(std::max(v, 0.0)); });
    return congruence(root.matrix(), inner);
  };
  const auto invertible = [&](const HermitianMatrix& a) { return min_eigenvalue(a) > tol::kSingular * scale; };
  if (invertible(x)) return formula(x, y);
  if (invertible(y)) return formula(y, x);
  return detail::epsilon_limit([&](double eps) { return formula(x.shifted(eps), y.shifted(eps)); }, scale,
                               "geometric_mean");
}

/// Probability measure on [0, inf] with finitely many atoms; t may be +inf.
class DiscreteMeanMeasure {
 public:
  struct Atom {
    double t;
    double weight;
  };

  explicit DiscreteMeanMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("DiscreteMeanMeasure: no atoms");
    double total = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const Atom& a = atoms_[i];
      if (!(a.t >= 0.0)) throw std::invalid_argument("DiscreteMeanMeasure: atom outside [0, inf]");
      if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
        throw std::invalid_argument("DiscreteMeanMeasure: weights must be positive");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (atoms_[j].t == a.t) throw std::invalid_argument("DiscreteMeanMeasure: repeated atom position");
      }
      total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("DiscreteMeanMeasure: weights must sum to 1");
  }

  static DiscreteMeanMeasure point_mass(double t) { return DiscreteMeanMeasure({{t, 1.0}}); }

  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  std::vector<Atom> atoms_;
};

/// x sigma y = 1/2 sum_k w_k (t_k x ! y)(1 + 1/t_k). The atom at 0
/// contributes w x and the atom at infinity w y, the limits of the integrand.
inline HermitianMatrix kubo_ando_mean(const DiscreteMeanMeasure& mu, const HermitianMatrix& x,
                                      const HermitianMatrix& y) {
  detail::require_same_dim({x, y}, "kubo_ando_mean");
  const double scale = detail::family_scale({x, y});
  detail::require_psd({x, y}, scale, "kubo_ando_mean");
  HermitianMatrix out = HermitianMatrix::zero(x.dim());
  for (const auto& atom : mu.atoms()) {
    if (atom.t == 0.0) {
      out += x * atom.weight;
    } else if (std::isinf(atom.t)) {
      out += y * atom.weight;
    } else {
      out += harmonic_mean({x * atom.t, y}) * (0.5 * atom.weight * (1.0 + 1.0 / atom.t));
    }
  }
  return out;
}

/// n x n grid of cell_dim x cell_dim cells, Hermitian as a whole.
class BlockMatrix {
 public:
  BlockMatrix(Index block_dim, Index cell_dim, std::vector<Matrix> cells)
      : block_dim_(block_dim), cell_dim_(cell_dim), cells_(std::move(cells)) {
    if (block_dim < 1 || cell_dim < 1 || cells_.size() != static_cast<std::size_t>(block_dim * block_dim)) {
      throw DimensionError("BlockMatrix: wrong number of cells");
    }
    for (const auto& c : cells_) {
      if (c.rows() != cell_dim || c.cols() != cell_dim) throw DimensionError("BlockMatrix: cell size mismatch");
    }
    for (Index i = 0; i < block_dim; ++i) {
      for (Index j = 0; j <= i; ++j) {
        if (max_abs(cell(i, j) - cell(j, i).adjoint()) > 1e-12 * std::max(1.0, max_abs(cell(i, j)))) {
          throw DomainError("BlockMatrix: cells are not Hermitian-symmetric");
        }
      }
    }
  }

  Index block_dim() const { return block_dim_; }
  Index cell_dim() const { return cell_dim_; }
  const Matrix& cell(Index i, Index j) const { return cells_[static_cast<std::size_t>(i * block_dim_ + j)]; }

  HermitianMatrix to_dense() const {
    Matrix m(block_dim_ * cell_dim_, block_dim_ * cell_dim_);
    for (Index i = 0; i < block_dim_; ++i) {
      for (Index j = 0; j < block_dim_; ++j) m.block(i * cell_dim_, j * cell_dim_, cell_dim_, cell_dim_) = cell(i, j);
    }
    return HermitianMatrix::symmetrized(m);
  }

 private:
  Index block_dim_;
  Index cell_dim_;
  std::vector<Matrix> cells_;
};

/// d = diag(x_1, ..., x_n) and e with every cell equal to y.
inline std::pair<BlockMatrix, BlockMatrix> build_block_pair(const std::vector<HermitianMatrix>& xs,
                                                            const HermitianMatrix& y) {
  detail::require_same_dim(xs, "build_block_pair");
  const Index c = y.dim();
  if (xs.front().dim() != c) throw DimensionError("build_block_pair: y has a different dimension");
  const Index n = static_cast<Index>(xs.size());
  std::vector<Matrix> d_cells, e_cells;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      d_cells.push_back(i == j ? xs[static_cast<std::size_t>(i)].matrix() : Matrix::Zero(c, c));
      e_cells.push_back(y.matrix());
    }
  }
  return {BlockMatrix(n, c, std::move(d_cells)), BlockMatrix(n, c, std::move(e_cells))};
}

struct BlockEquivalence {
  bool inverse_sum_bound;    // (sum x_k^{-1})^{-1} >= y
  bool schur_complement;     // e - e d^{-1} e >= 0
  bool block_difference;     // d - e >= 0
  bool agree;
};

/// The three equivalent conditions for y <= (sum x_k^{-1})^{-1}, each
/// evaluated at floor -1e-8 scale.
inline BlockEquivalence block_equivalence_check(const std::vector<HermitianMatrix>& xs, const HermitianMatrix& y) {
  const auto [d, e] = build_block_pair(xs, y);
  std::vector<HermitianMatrix> all = xs;
  all.push_back(y);
  const double scale = std::max(1.0, detail::family_scale(all));
  const double floor = -1e-8 * scale;

  HermitianMatrix inv_sum = HermitianMatrix::zero(y.dim());
  for (const auto& x : xs) inv_sum += matrix_inverse(x);
  const bool first = psd_check(matrix_inverse(inv_sum) - y, floor);

  const HermitianMatrix dd = d.to_dense();
  const HermitianMatrix ed = e.to_dense();
  const HermitianMatrix ede = HermitianMatrix::symmetrized(ed.matrix() * matrix_inverse(dd).matrix() * ed.matrix());
  const bool second = psd_check(ed - ede, floor);
  const bool third = psd_check(dd - ed, floor);
  return {first, second, third, first == second && second == third};
}

/// sum_j y_j x_j^{-1} y_j - (sum y_j)(sum x_j)^{-1}(sum y_j), positive
/// semidefinite for positive definite x_j.
inline HermitianMatrix subadditivity_gap(const std::vector<HermitianMatrix>& xs,
                                         const std::vector<HermitianMatrix>& ys) {
  detail::require_same_dim(xs, "subadditivity_gap");
  detail::require_same_dim(ys, "subadditivity_gap");
  if (xs.size() != ys.size() || xs.front().dim() != ys.front().dim()) {
    throw DimensionError("subadditivity_gap: mismatched families");
  }
  const Index n = xs.front().dim();
  HermitianMatrix sx = HermitianMatrix::zero(n), sy = HermitianMatrix::zero(n), parts = HermitianMatrix::zero(n);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    sx += xs[j];
    sy += ys[j];
    parts += congruence(ys[j].matrix(), matrix_inverse(xs[j]));
  }
  return parts - congruence(sy.matrix(), matrix_inverse(sx));
}

}  // namespace tracelab

#endif  // TRACELAB_OPERATOR_MEANS_HPP
