#ifndef TRACELAB_HARNESS_GENERATORS_HPP
#define TRACELAB_HARNESS_GENERATORS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracelab/ell_convexity.hpp"
#include "tracelab/functional_calculus.hpp"
#include "tracelab/random.hpp"

namespace tracelab::harness {

inline void require_closed_bounded(const Interval& iv, const char* who) {
  if (!iv.bounded() || iv.lo > iv.hi) throw std::invalid_argument(std::string(who) + ": interval must be bounded and nonempty");
}

inline RealVector random_spectrum(Index dim, const Interval& iv, Rng& rng) {
  RealVector d(dim);
  for (Index j = 0; j < dim; ++j) d(j) = rng.uniform(iv.lo, iv.hi);
  return d;
}

/// U diag(lambda) U* with lambda uniform on the interval and U Haar.
inline HermitianMatrix random_hermitian(Index dim, const Interval& iv, Rng& rng) {
  require_closed_bounded(iv, "random_hermitian");
  if (iv.lo == iv.hi) return HermitianMatrix::identity(dim) * iv.lo;
  const Matrix u = random_unitary(dim, rng);
  return HermitianMatrix::from_spectrum(u, random_spectrum(dim, iv, rng));
}

inline HermitianMatrix random_hermitian(Index dim, const Interval& iv, std::uint64_t seed) {
  Rng rng(seed);
  return random_hermitian(dim, iv, rng);
}

/// Positive semidefinite matrix with spectrum in [lo, hi], 0 <= lo <= hi.
inline HermitianMatrix random_psd(Index dim, double lo, double hi, Rng& rng) {
  if (lo < 0.0) throw std::invalid_argument("random_psd: lower bound must be nonnegative");
  return random_hermitian(dim, Interval::closed(lo, hi), rng);
}

inline HermitianMatrix random_psd(Index dim, double lo, double hi, std::uint64_t seed) {
  Rng rng(seed);
  return random_psd(dim, lo, hi, rng);
}

/// Members U diag(lambda_i) U* sharing one Haar unitary U.
inline std::vector<HermitianMatrix> shared_basis_members(const Matrix& u, const std::vector<Interval>& intervals,
                                                         Rng& rng) {
  std::vector<HermitianMatrix> out;
  for (const auto& iv : intervals) {
    require_closed_bounded(iv, "random_commuting_tuple");
    out.push_back(HermitianMatrix::from_spectrum(u, random_spectrum(u.rows(), iv, rng)));
  }
  return out;
}

inline CommutingTuple random_commuting_tuple(Index dim, std::size_t k, const std::vector<Interval>& intervals,
                                             std::uint64_t seed) {
  if (k < 1 || intervals.size() != k) throw std::invalid_argument("random_commuting_tuple: need k >= 1 intervals");
  Rng rng(seed);
  const Matrix u = random_unitary(dim, rng);
  RealMatrix rows(dim, static_cast<Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    require_closed_bounded(intervals[i], "random_commuting_tuple");
    rows.col(static_cast<Index>(i)) = random_spectrum(dim, intervals[i], rng);
  }
  return CommutingTuple::from_spectrum(u, rows);
}

/// Side length of the tensor factors used for a two-member tuple of
/// nominal dimension `dim`: round(sqrt(dim)) clamped to [2, 3].
inline Index tensor_factor_dim(Index dim) {
  const auto r = static_cast<Index>(std::lround(std::sqrt(static_cast<double>(dim))));
  return std::clamp<Index>(r, 2, 3);
}

/// (x (x) I, I (x) y) with independent random factors: the two members
/// live in commuting subalgebras that are not contained in one another.
inline std::vector<HermitianMatrix> tensor_members(Index factor_dim, const Interval& ix, const Interval& iy, Rng& rng) {
  const HermitianMatrix x = random_hermitian(factor_dim, ix, rng);
  const HermitianMatrix y = random_hermitian(factor_dim, iy, rng);
  return {kron(x, HermitianMatrix::identity(factor_dim)), kron(HermitianMatrix::identity(factor_dim), y)};
}

inline CommutingTuple random_tensor_tuple(Index factor_dim, const Interval& ix, const Interval& iy,
                                          std::uint64_t seed) {
  Rng rng(seed);
  return joint_diagonalize(tensor_members(factor_dim, ix, iy, rng));
}

namespace detail {

inline double sum_of(std::span<const double> p) {
  double s = 0.0;
  for (double v : p) s += v;
  return s;
}

/// prod lambda_i^{a_i}, with every a_i = 0.9 / k so the exponents sum to
/// 0.9 and the product is concave on the positive cube.
inline double concave_product(std::span<const double> p) {
  const double a = 0.9 / static_cast<double>(p.size());
  double v = 1.0;
  for (double x : p) v *= std::pow(std::max(x, 0.0), a);
  return v;
}

struct AffinePiece {
  double c;
  std::vector<double> a;
};

inline std::vector<AffinePiece> random_affine_pieces(std::size_t k, int count, Rng& rng) {
  std::vector<AffinePiece> out;
  for (int j = 0; j < count; ++j) {
    AffinePiece piece{rng.uniform(-1.0, 1.0), {}};
    for (std::size_t i = 0; i < k; ++i) piece.a.push_back(rng.uniform(-1.0, 1.0));
    out.push_back(piece);
  }
  return out;
}

inline double max_affine(const std::vector<AffinePiece>& pieces, std::span<const double> p) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& piece : pieces) {
    double v = piece.c;
    for (std::size_t i = 0; i < p.size(); ++i) v += piece.a[i] * p[i];
    best = std::max(best, v);
  }
  return best;
}

}  // namespace detail

/// Convex functions of k variables on bounded closed cubes: exponential
/// and square of the sum, exp of the squared sum, exp of minus a concave
/// monomial, powers 1.5 and 3 of |sum|, the p = 2 power of one minus a
/// concave monomial, and a seeded maximum of four affine functions.
inline std::vector<MultivariateFunction> convex_catalog(std::size_t k, std::uint64_t seed = 0x636174616cULL) {
  if (k < 1 || k > 4) throw std::invalid_argument("convex_catalog: arity must be between 1 and 4");
  const auto cube = [k](double lo, double hi) { return std::vector<Interval>(k, Interval::closed(lo, hi)); };
  Rng rng(Rng::derive(seed, k));
  const auto pieces = detail::random_affine_pieces(k, 4, rng);
  return {
      {"exp(sum)", cube(-2.0, 2.0), [](std::span<const double> p) { return std::exp(detail::sum_of(p)); }},
      {"sum^2", cube(-2.0, 2.0),
       [](std::span<const double> p) {
         const double s = detail::sum_of(p);
         return s * s;
       }},
      {"exp(sum^2)", cube(-1.0 / static_cast<double>(k), 1.0 / static_cast<double>(k)),
       [](std::span<const double> p) {
         const double s = detail::sum_of(p);
         return std::exp(s * s);
       }},
      {"exp(-prod^a)", cube(0.05, 2.0),
       [](std::span<const double> p) { return std::exp(-detail::concave_product(p)); }},
      {"|sum|^1.5", cube(-2.0, 2.0),
       [](std::span<const double> p) { return std::pow(std::abs(detail::sum_of(p)), 1.5); }},
      {"|sum|^3", cube(-1.0, 1.0),
       [](std::span<const double> p) { return std::pow(std::abs(detail::sum_of(p)), 3.0); }},
      {"(1-prod^a)^2", cube(0.0, 1.0),
       [](std::span<const double> p) {
         const double v = 1.0 - detail::concave_product(p);
         return v * v;
       }},
      {"max-affine", cube(-2.0, 2.0), [pieces](std::span<const double> p) { return detail::max_affine(pieces, p); }},
  };
}

/// Negatives of the convex catalog.
inline std::vector<MultivariateFunction> concave_catalog(std::size_t k, std::uint64_t seed = 0x636174616cULL) {
  std::vector<MultivariateFunction> out;
  for (auto f : convex_catalog(k, seed)) {
    auto g = f.evaluator;
    out.push_back({"-" + f.name, f.domain, [g](std::span<const double> p) { return -g(p); }});
  }
  return out;
}

/// Seeded convex h on [-1, 1]^k with values in [0, 1]:
/// c (w.lambda)^2 / (sum w)^2 + (1 - c) max_j (1 + a_j.lambda / |a_j|_1) / 2.
inline MultivariateFunction unit_convex(std::size_t k, Rng& rng) {
  std::vector<double> w(k);
  double wsum = 0.0;
  for (auto& v : w) {
    v = rng.uniform(0.2, 1.0);
    wsum += v;
  }
  std::vector<std::vector<double>> planes(3, std::vector<double>(k));
  for (auto& a : planes) {
    double norm = 0.0;
    for (auto& v : a) {
      v = rng.uniform(-1.0, 1.0);
      norm += std::abs(v);
    }
    for (auto& v : a) v /= std::max(norm, 1e-12);
  }
  const double c = rng.uniform(0.2, 0.8);
  return {"unit-convex", std::vector<Interval>(k, Interval::closed(-1.0, 1.0)),
          [w, wsum, planes, c](std::span<const double> p) {
            double dot = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) dot += w[i] * p[i];
            double top = 0.0;
            for (const auto& a : planes) {
              double v = 1.0;
              for (std::size_t i = 0; i < p.size(); ++i) v += a[i] * p[i];
              top = std::max(top, 0.5 * v);
            }
            return c * dot * dot / (wsum * wsum) + (1.0 - c) * top;
          }};
}

/// Convex g = lo + (hi - lo) h with values in [lo, hi].
inline MultivariateFunction convex_into(std::size_t k, double lo, double hi, Rng& rng) {
  auto h = unit_convex(k, rng);
  auto eval = h.evaluator;
  return {"convex-into", h.domain, [eval, lo, hi](std::span<const double> p) { return lo + (hi - lo) * eval(p); }};
}

/// l-convex f = e(g) on [-1, 1]^k, with g convex and valued in the e-window of the pair.
inline MultivariateFunction ell_convex_function(const EllPair& pair, std::size_t k, Rng& rng) {
  auto g = convex_into(k, pair.e_window.lo, pair.e_window.hi, rng);
  auto e = pair.e;
  auto eval = g.evaluator;
  return {"e(g) for " + pair.name, g.domain, [e, eval](std::span<const double> p) { return e(eval(p)); }};
}

/// Positive concave f = hi - (hi - lo) h on [-1, 1]^k, valued in [lo, hi].
inline MultivariateFunction positive_concave(std::size_t k, double lo, double hi, Rng& rng) {
  auto h = unit_convex(k, rng);
  auto eval = h.evaluator;
  return {"positive-concave", h.domain, [eval, lo, hi](std::span<const double> p) { return hi - (hi - lo) * eval(p); }};
}

/// Every (pair, parameter) combination exercised by the suites: the
/// parameter-free pairs once, the others for p in {1.5, 2, 3} or
/// alpha in {0.5, 1, 2}. 23 entries; index i of the catalog order is kept
/// in `catalog_index`.
struct PairCase {
  EllPair pair;
  std::size_t catalog_index;
  double parameter;
};

inline std::vector<PairCase> pair_cases() {
  std::vector<PairCase> out;
  out.push_back({ell::log_pair(), 0, 0.0});
  for (double p : {1.5, 2.0, 3.0}) out.push_back({ell::root_pair(p), 1, p});
  for (double a : {0.5, 1.0, 2.0}) out.push_back({ell::inverse_power_pair(a), 2, a});
  for (double p : {1.5, 2.0, 3.0}) out.push_back({ell::negative_power_pair(p), 3, p});
  for (double a : {0.5, 1.0, 2.0}) out.push_back({ell::negative_exp_pair(a), 4, a});
  out.push_back({ell::loglog_pair(), 5, 0.0});
  for (double p : {1.5, 2.0, 3.0}) out.push_back({ell::log_root_pair(p), 6, p});
  for (double p : {1.5, 2.0, 3.0}) out.push_back({ell::circle_pair(p), 7, p});
  for (double p : {1.5, 2.0, 3.0}) out.push_back({ell::ratio_root_pair(p), 8, p});
  return out;
}

}  // namespace tracelab::harness

#endif  // TRACELAB_HARNESS_GENERATORS_HPP
