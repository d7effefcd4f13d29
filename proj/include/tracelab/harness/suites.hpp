#ifndef TRACELAB_HARNESS_SUITES_HPP
#define TRACELAB_HARNESS_SUITES_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tracelab/ell_convexity.hpp"
#include "tracelab/harness/generators.hpp"
#include "tracelab/harness/probe.hpp"
#include "tracelab/harness/report.hpp"
#include "tracelab/operator_means.hpp"
#include "tracelab/trace.hpp"

namespace tracelab::harness {

struct TrialContext {
  const SuiteConfig& cfg;
  int index;
  std::uint64_t seed;
  Rng rng;
  Index dim;
  TrialLedger ledger;

  std::size_t arity() const { return static_cast<std::size_t>(cfg.tupleArity); }
};

using Members = std::vector<HermitianMatrix>;

namespace suites {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline std::vector<TraceFunctional> traces(Index dim, bool both = true) {
  if (!both) return {TraceFunctional::normalized(dim)};
  return {TraceFunctional::standard(dim), TraceFunctional::normalized(dim)};
}

inline CommutingTuple tuple_of(const Members& m) {
  return m.size() == 1 ? as_tuple(m.front()) : joint_diagonalize(m);
}

/// Two endpoints of a segment inside the direct sum of commuting
/// subalgebras. One variable: independent (non-commuting) matrices. Two
/// variables in tensor mode: x (x) I and I (x) y with fresh factors at each
/// end. Otherwise every member at both ends shares one eigenbasis.
inline std::pair<Members, Members> segment_endpoints(TrialContext& ctx, const std::vector<Interval>& domains) {
  const std::size_t k = domains.size();
  if (k == 1) {
    return {{random_hermitian(ctx.dim, domains[0], ctx.rng)}, {random_hermitian(ctx.dim, domains[0], ctx.rng)}};
  }
  if (k == 2 && ctx.cfg.tensorMode) {
    const Index fd = tensor_factor_dim(ctx.dim);
    Members a = tensor_members(fd, domains[0], domains[1], ctx.rng);
    Members b = tensor_members(fd, domains[0], domains[1], ctx.rng);
    return {std::move(a), std::move(b)};
  }
  const Matrix u = random_unitary(ctx.dim, ctx.rng);
  Members a = shared_basis_members(u, domains, ctx.rng);
  Members b = shared_basis_members(u, domains, ctx.rng);
  return {std::move(a), std::move(b)};
}

inline void check_segment(TrialContext& ctx, const std::function<double(const Members&)>& value, const Members& a,
                          const Members& b, Sense sense) {
  for (const auto& s : probe_segment(value, a, b, default_lambdas(), sense)) ctx.ledger.leq(s.lhs, s.rhs);
}

/// tau(f(members)) as a map on tuples, with tau resized to the tuple dimension.
inline std::function<double(const Members&)> trace_map(const TraceFunctional& tf, const MultivariateFunction& f) {
  return [tf, f](const Members& m) { return trace_of_function(tf.resized(m.front().dim()), f, tuple_of(m)); };
}

inline MultivariateFunction compose(const MultivariateFunction& f, std::function<double(double)> outer,
                                    const std::string& name) {
  auto inner = f.evaluator;
  return {name, f.domain, [inner, outer](std::span<const double> p) { return outer(inner(p)); }};
}

inline std::vector<Interval> cube(std::size_t k, double lo, double hi) {
  return std::vector<Interval>(k, Interval::closed(lo, hi));
}

template <class T, std::size_t N>
const T& pick(const std::array<T, N>& values, std::size_t i) {
  return values[i % N];
}

inline HermitianMatrix scalar_matrix(Index dim, double c) { return HermitianMatrix::identity(dim) * c; }

inline Members random_psd_family(std::size_t n, Index dim, double lo, double hi, Rng& rng) {
  Members out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_psd(dim, lo, hi, rng));
  return out;
}

inline HermitianMatrix inverse_sum_inverse(const Members& xs) {
  HermitianMatrix s = HermitianMatrix::zero(xs.front().dim());
  for (const auto& x : xs) s += matrix_inverse(x);
  return matrix_inverse(s);
}

inline HermitianMatrix average(const Members& xs) {
  HermitianMatrix s = HermitianMatrix::zero(xs.front().dim());
  for (const auto& x : xs) s += x;
  return s * (1.0 / static_cast<double>(xs.size()));
}

/// U diag(s) V with singular values s in [0.3, 2].
inline Matrix random_invertible(Index dim, Rng& rng) {
  const Matrix u = random_unitary(dim, rng);
  const Matrix v = random_unitary(dim, rng);
  RealVector s(dim);
  for (Index j = 0; j < dim; ++j) s(j) = rng.uniform(0.3, 2.0);
  return u * s.cast<Complex>().asDiagonal() * v;
}

/// Spectra with member i's j-th eigenvalue in the j-th of D equal slices
/// of its interval: rows are strictly increasing in every coordinate.
inline CommutingTuple stratified_tuple(Index dim, const std::vector<Interval>& domains, Rng& rng) {
  const Matrix u = random_unitary(dim, rng);
  RealMatrix rows(dim, static_cast<Index>(domains.size()));
  for (std::size_t i = 0; i < domains.size(); ++i) {
    const double w = domains[i].width() / static_cast<double>(dim);
    for (Index j = 0; j < dim; ++j) {
      rows(j, static_cast<Index>(i)) = domains[i].lo + w * (static_cast<double>(j) + rng.uniform(0.1, 0.9));
    }
  }
  return CommutingTuple::from_spectrum(u, rows);
}

// ---------------------------------------------------------------------------

inline void jensen_eq1(TrialContext& ctx) {
  const std::size_t k = 1 + static_cast<std::size_t>(ctx.index) % ctx.arity();
  const auto fns = convex_catalog(k, ctx.rng.next_u64());
  const auto& f = fns[(static_cast<std::size_t>(ctx.index) / ctx.arity()) % fns.size()];
  const CommutingTuple t = random_commuting_tuple(ctx.dim, k, f.domain, ctx.rng.next_u64());
  std::vector<BasisFrame> frames;
  for (int i = 0; i < 8; ++i) frames.push_back(BasisFrame::random(ctx.dim, ctx.rng.next_u64()));
  for (const auto& tf : traces(ctx.dim)) {
    const double exact = trace_of_function(tf, f, t);
    ctx.ledger.near_relative(diagonal_surrogate(tf, f, t, BasisFrame(t.joint_basis())), exact, 1e-9);
    for (const auto& b : frames) ctx.ledger.leq(diagonal_surrogate(tf, f, t, b), exact);
  }
}

inline void surrogate_supremum(TrialContext& ctx) {
  const std::size_t k = 1 + static_cast<std::size_t>(ctx.index) % ctx.arity();
  const auto fns = convex_catalog(k, ctx.rng.next_u64());
  const auto& f = fns[(static_cast<std::size_t>(ctx.index) / ctx.arity()) % fns.size()];
  const CommutingTuple t = random_commuting_tuple(ctx.dim, k, f.domain, ctx.rng.next_u64());

  // Concave f: the supremum over frames strictly exceeds the trace.
  const auto concave = concave_catalog(k);
  const auto& g = concave[ctx.index % 2 == 0 ? 0 : 1];  // -exp(sum), -(sum)^2
  const CommutingTuple spread = stratified_tuple(ctx.dim, g.domain, ctx.rng);

  for (const auto& tf : traces(ctx.dim)) {
    ctx.ledger.near(surrogate_supremum_probe(tf, f, t, 8, ctx.rng.next_u64()), trace_of_function(tf, f, t));
    ctx.ledger.violates(surrogate_supremum_probe(tf, g, spread, 8, ctx.rng.next_u64()),
                        trace_of_function(tf, g, spread));
  }
}

inline void theorem2_convexity(TrialContext& ctx) {
  const std::size_t k = 1 + static_cast<std::size_t>(ctx.index) % ctx.arity();
  const auto fns = convex_catalog(k, ctx.rng.next_u64());
  const auto& f = fns[(static_cast<std::size_t>(ctx.index) / ctx.arity()) % fns.size()];
  const auto [a, b] = segment_endpoints(ctx, f.domain);
  for (const auto& tf : traces(ctx.dim)) check_segment(ctx, trace_map(tf, f), a, b, Sense::convex);
}

inline const std::vector<PairCase>& cached_pair_cases() {
  static const std::vector<PairCase> cases = pair_cases();
  return cases;
}

inline void theorem3_ellconvexity(TrialContext& ctx) {
  const auto& cases = cached_pair_cases();
  const auto& pc = cases[static_cast<std::size_t>(ctx.index) % cases.size()];
  const std::size_t k = 1 + (static_cast<std::size_t>(ctx.index) / cases.size()) % ctx.arity();
  const MultivariateFunction f = ell_convex_function(pc.pair, k, ctx.rng);
  const auto [a, b] = segment_endpoints(ctx, f.domain);
  const bool homogeneous = pc.catalog_index <= 3;
  for (const auto& tf : traces(ctx.dim, homogeneous)) {
    const auto inner = trace_map(tf, f);
    const auto ell = pc.pair.ell;
    check_segment(ctx, [&](const Members& m) { return ell(inner(m)); }, a, b, Sense::convex);
  }
}

inline void corollary11_forms(TrialContext& ctx) {
  const std::size_t form = static_cast<std::size_t>(ctx.index) % 4;
  const std::size_t rest = static_cast<std::size_t>(ctx.index) / 4;
  const std::size_t k = 1 + rest % ctx.arity();
  const double p = pick(std::array{1.5, 2.0, 3.0}, rest / ctx.arity());
  const double alpha = pick(std::array{0.5, 1.0, 2.0}, rest / ctx.arity());

  MultivariateFunction f;
  std::function<double(double)> outer;
  switch (form) {
    case 0:
      f = compose(convex_into(k, -2.0, 2.0, ctx.rng), [](double s) { return std::exp(s); }, "exp(g)");
      outer = [](double v) { return std::log(v); };
      break;
    case 1:
      f = compose(convex_into(k, 0.0, 2.0, ctx.rng), [p](double s) { return std::pow(s, p); }, "g^p");
      outer = [p](double v) { return std::pow(v, 1.0 / p); };
      break;
    case 2:
      f = compose(convex_into(k, -2.0, -0.2, ctx.rng), [alpha](double s) { return std::pow(-s, -1.0 / alpha); },
                  "(-g)^(-1/alpha)");
      outer = [alpha](double v) { return -std::pow(v, -alpha); };
      break;
    default:
      f = compose(convex_into(k, -2.0, -0.05, ctx.rng), [p](double s) { return -std::pow(-s, 1.0 / p); },
                  "-(-g)^(1/p)");
      outer = [p](double v) { return -std::pow(-v, p); };
      break;
  }
  const auto [a, b] = segment_endpoints(ctx, f.domain);
  for (const auto& tf : traces(ctx.dim)) {
    const auto inner = trace_map(tf, f);
    check_segment(ctx, [&](const Members& m) { return outer(inner(m)); }, a, b, Sense::convex);
  }
}

inline void eq33_36_remark12(TrialContext& ctx) {
  const std::size_t form = static_cast<std::size_t>(ctx.index) % 6;
  const std::size_t rest = static_cast<std::size_t>(ctx.index) / 6;
  Rng& rng = ctx.rng;

  MultivariateFunction f;
  std::function<double(double)> outer;
  Sense sense = Sense::convex;
  switch (form) {
    case 0:
      f = {"exp((x+y)^2)", cube(2, -1.0, 1.0), [](std::span<const double> v) {
             const double s = v[0] + v[1];
             return std::exp(s * s);
           }};
      outer = [](double v) { return std::log(v); };
      break;
    case 1: {
      const double a = rng.uniform(0.1, 0.6);
      const double b = rng.uniform(0.1, 1.0 - a);
      f = {"exp(-x^a y^b)", cube(2, 0.0, 2.0),
           [a, b](std::span<const double> v) { return std::exp(-std::pow(v[0], a) * std::pow(v[1], b)); }};
      outer = [](double v) { return std::log(v); };
      break;
    }
    case 2: {
      const double p = pick(std::array{1.0, 1.5, 2.0}, rest);
      const double q = p + rng.uniform(0.0, 1.5);
      f = {"(x+y)^q", cube(2, 0.0, 2.0), [q](std::span<const double> v) { return std::pow(v[0] + v[1], q); }};
      outer = [p](double v) { return std::pow(v, 1.0 / p); };
      break;
    }
    case 3: {
      const double p = pick(std::array{1.0, 1.5, 2.0, 3.0}, rest);
      const double a = rng.uniform(0.1, 0.6);
      const double b = rng.uniform(0.1, 1.0 - a);
      f = {"(1-x^a y^b)^p", cube(2, 0.0, 1.0), [a, b, p](std::span<const double> v) {
             return std::pow(1.0 - std::pow(v[0], a) * std::pow(v[1], b), p);
           }};
      outer = [p](double v) { return std::pow(v, 1.0 / p); };
      break;
    }
    case 4: {
      const double alpha = pick(std::array{0.5, 1.0, 2.0}, rest);
      f = compose(positive_concave(2, 0.2, 3.0, rng), [alpha](double s) { return std::pow(s, -alpha); },
                  "f^(-alpha)");
      outer = [alpha](double v) { return std::pow(v, -1.0 / alpha); };
      sense = Sense::concave;
      break;
    }
    default: {
      const double p = pick(std::array{1.0, 1.5, 2.0, 3.0}, rest);
      f = compose(positive_concave(2, 0.2, 3.0, rng), [p](double s) { return std::pow(s, 1.0 / p); }, "f^(1/p)");
      outer = [p](double v) { return std::pow(v, p); };
      sense = Sense::concave;
      break;
    }
  }
  const Index fd = tensor_factor_dim(ctx.dim);
  const Members a = tensor_members(fd, f.domain[0], f.domain[1], rng);
  const Members b = tensor_members(fd, f.domain[0], f.domain[1], rng);
  for (const auto& tf : traces(ctx.dim)) {
    const auto inner = trace_map(tf, f);
    check_segment(ctx, [&](const Members& m) { return outer(inner(m)); }, a, b, sense);
  }
}

inline void eq38_schatten(TrialContext& ctx) {
  const HermitianMatrix x = random_psd(ctx.dim, 0.0, 2.0, ctx.rng);
  const HermitianMatrix y = random_psd(ctx.dim, 0.0, 2.0, ctx.rng);
  const HermitianMatrix u = random_hermitian(ctx.dim, Interval::closed(-2.0, 2.0), ctx.rng);
  const HermitianMatrix v = random_hermitian(ctx.dim, Interval::closed(-2.0, 2.0), ctx.rng);
  for (const auto& tf : traces(ctx.dim)) {
    for (double p : {1.5, 2.0, 4.0}) {
      ctx.ledger.geq(schatten_quasi_power(tf, x + y, p), schatten_quasi_power(tf, x, p) + schatten_quasi_power(tf, y, p));
    }
    for (double p : {1.0, 2.0, 4.0}) {
      ctx.ledger.leq(schatten_norm(tf, u + v, p), schatten_norm(tf, u, p) + schatten_norm(tf, v, p));
    }
  }
}

inline void prop13_determinant(TrialContext& ctx) {
  auto& L = ctx.ledger;
  const TraceFunctional tf = TraceFunctional::normalized(ctx.dim);
  const HermitianMatrix x = random_psd(ctx.dim, 0.1, 2.0, ctx.rng);
  const HermitianMatrix y = random_psd(ctx.dim, 0.1, 2.0, ctx.rng);
  const auto det = [&tf](const HermitianMatrix& m) { return kf_determinant(tf, m); };
  for (const auto& s : probe_segment(det, x, y, default_lambdas(), Sense::concave)) L.leq(s.lhs, s.rhs);

  const Matrix z1 = random_invertible(ctx.dim, ctx.rng);
  const Matrix z2 = random_invertible(ctx.dim, ctx.rng);
  L.near_relative(kf_determinant(tf, Matrix(z1 * z2)), kf_determinant(tf, z1) * kf_determinant(tf, z2), 1e-8);
  const double c = ctx.rng.uniform(0.2, 5.0);
  L.near_relative(det(x * c), c * det(x), 1e-8);
  L.near_relative(kf_determinant(tf, Matrix(z1 * c)), c * kf_determinant(tf, z1), 1e-8);

  const std::size_t k = 1 + static_cast<std::size_t>(ctx.index) % ctx.arity();
  const MultivariateFunction f = positive_concave(k, 0.2, 3.0, ctx.rng);
  const auto [a, b] = segment_endpoints(ctx, f.domain);
  check_segment(
      ctx,
      [&f, &tf](const Members& m) { return kf_determinant(tf.resized(m.front().dim()), apply_multivariable(f, tuple_of(m))); },
      a, b, Sense::concave);
}

inline void prop16_harmonic_concavity(TrialContext& ctx) {
  auto& L = ctx.ledger;
  const std::size_t n = 2 + static_cast<std::size_t>(ctx.index) % 2;
  const Members xs = random_psd_family(n, ctx.dim, 0.1, 2.0, ctx.rng);
  const Members ys = random_psd_family(n, ctx.dim, 0.1, 2.0, ctx.rng);
  const HermitianMatrix hx = harmonic_mean(xs);
  const HermitianMatrix hy = harmonic_mean(ys);
  for (double l : default_lambdas()) L.loewner_leq(mix(hx, hy, l), harmonic_mean(mix(xs, ys, l)));

  Members sums;
  for (std::size_t i = 0; i < n; ++i) sums.push_back(xs[i] + ys[i]);
  L.loewner_leq(inverse_sum_inverse(xs) + inverse_sum_inverse(ys), inverse_sum_inverse(sums));

  Members bigger = xs;
  bigger[ctx.rng.below(n)] += random_psd(ctx.dim, 0.0, 1.0, ctx.rng);
  L.loewner_leq(hx, harmonic_mean(bigger));

  Members reversed(xs.rbegin(), xs.rend());
  const HermitianMatrix hr = harmonic_mean(reversed);
  L.loewner_leq(hx, hr);
  L.loewner_leq(hr, hx);

  Members zs;
  for (std::size_t i = 0; i < n; ++i) zs.push_back(random_hermitian(ctx.dim, Interval::closed(-2.0, 2.0), ctx.rng));
  L.psd(subadditivity_gap(xs, zs));
}

inline void eq49_harmonic_vs_arithmetic(TrialContext& ctx) {
  auto& L = ctx.ledger;
  const std::size_t n = 2 + static_cast<std::size_t>(ctx.index) % 3;
  Members xs = random_psd_family(n, ctx.dim, 0.1, 2.0, ctx.rng);
  if (ctx.index % 5 == 4) {
    RealVector d(ctx.dim);
    for (Index j = 0; j < ctx.dim; ++j) d(j) = j == 0 ? 0.0 : ctx.rng.uniform(0.1, 2.0);
    xs[0] = HermitianMatrix::from_spectrum(random_unitary(ctx.dim, ctx.rng), d);
  }
  const HermitianMatrix h = harmonic_mean(xs);
  L.loewner_leq(h, average(xs));
  if (n == 2) {
    const HermitianMatrix twice = parallel_sum(xs[0], xs[1]) * 2.0;
    L.loewner_leq(h, twice);
    L.loewner_leq(twice, h);
  }
}

inline void prop18_equivalence(TrialContext& ctx) {
  const std::size_t n = 2 + static_cast<std::size_t>(ctx.index) % 2;
  const int mode = ctx.index % 3;  // 0 interior, 1 boundary, 2 violating
  Members xs = random_psd_family(n, ctx.dim, 0.2, 2.0, ctx.rng);
  const HermitianMatrix bound = inverse_sum_inverse(xs);
  HermitianMatrix y = bound;
  if (mode == 0) y = bound * ctx.rng.uniform(0.2, 0.9);
  if (mode == 2) y = bound + random_psd(ctx.dim, 0.05, 1.0, ctx.rng);
  bool expected = mode != 2;

  const bool fault = ctx.cfg.injectFault && ctx.index == ctx.cfg.trials / 2;
  if (fault) {
    xs = {scalar_matrix(ctx.dim, 2.0), scalar_matrix(ctx.dim, 2.0)};
    y = scalar_matrix(ctx.dim, 1.001);
    expected = false;
  }
  BlockEquivalence eq = block_equivalence_check(xs, y);
  if (fault) {
    eq.block_difference = true;
    eq.agree = eq.inverse_sum_bound == eq.schur_complement && eq.schur_complement == eq.block_difference;
  }
  ctx.ledger.holds(eq.agree);
  ctx.ledger.holds(eq.inverse_sum_bound == expected);
}

inline HermitianMatrix block_difference(const Members& xs, const HermitianMatrix& z) {
  const auto [d, e] = build_block_pair(xs, z);
  return d.to_dense() - e.to_dense();
}

inline void corollary19_maximality(TrialContext& ctx) {
  auto& L = ctx.ledger;
  const std::size_t n = 2 + static_cast<std::size_t>(ctx.index) % 2;
  const Members xs = random_psd_family(n, ctx.dim, 0.2, 2.0, ctx.rng);
  const HermitianMatrix z = harmonic_mean(xs) * (1.0 / static_cast<double>(n));
  L.psd(block_difference(xs, z));
  L.psd(block_difference(xs, z * ctx.rng.uniform(0.0, 1.0)));

  Eigen::VectorXcd v(ctx.dim);
  for (Index j = 0; j < ctx.dim; ++j) v(j) = ctx.rng.complex_normal();
  v.normalize();
  const double delta = 1e-3 * std::max(1.0, operator_norm(z));
  const HermitianMatrix bumped = z + HermitianMatrix::symmetrized(v * v.adjoint()) * delta;
  L.violates(-min_eigenvalue(block_difference(xs, bumped)), 0.0);
  L.holds(!block_equivalence_check(xs, bumped).block_difference);
}

inline void prop21_harmonic_trace(TrialContext& ctx) {
  const std::size_t n = 2 + static_cast<std::size_t>(ctx.index) % 2;
  const Members xs = random_psd_family(n, ctx.dim, 0.1, 2.0, ctx.rng);
  const HermitianMatrix h = harmonic_mean(xs);
  const Interval positive = Interval::right_open(0.0, kInf);
  for (const auto& tf : traces(ctx.dim)) {
    for (int form = 0; form < 2; ++form) {
      for (double p : {1.0, 2.0, 3.0}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
          const auto f = form == 0 ? std::function<double(double)>([p](double t) { return std::pow(t, 1.0 / p); })
                                   : std::function<double(double)>(
                                         [p](double t) { return std::log1p(std::pow(t, 1.0 / p)); });
          const auto g = MultivariateFunction::scalar("f^alpha", positive,
                                                      [f, alpha](double t) { return std::pow(f(t), alpha); });
          const auto power_mean = [&](const HermitianMatrix& m) {
            return std::pow(trace_of_function(tf, g, m), 1.0 / alpha);
          };
          double inv = 0.0;
          for (const auto& x : xs) inv += 1.0 / power_mean(x);
          ctx.ledger.leq(power_mean(h), static_cast<double>(n) / inv);
        }
      }
    }
  }
}

/// Scalar mean a sigma b = sum_k w_k (1 + t_k) a b / (t_k a + b).
inline double scalar_kubo_ando(const DiscreteMeanMeasure& mu, double a, double b) {
  double out = 0.0;
  for (const auto& atom : mu.atoms()) {
    if (atom.t == 0.0) {
      out += atom.weight * a;
    } else if (std::isinf(atom.t)) {
      out += atom.weight * b;
    } else {
      out += atom.weight * (1.0 + atom.t) * a * b / (atom.t * a + b);
    }
  }
  return out;
}

inline DiscreteMeanMeasure random_measure(Rng& rng) {
  const int count = 1 + static_cast<int>(rng.below(4));
  std::vector<DiscreteMeanMeasure::Atom> atoms;
  double total = 0.0;
  for (int i = 0; i < count; ++i) {
    const double u = rng.uniform();
    const double t = u < 0.15 ? 0.0 : u < 0.30 ? kInf : std::exp(rng.uniform(-4.6, 4.6));
    const double w = rng.uniform(0.1, 1.0);
    if (std::any_of(atoms.begin(), atoms.end(), [t](const auto& a) { return a.t == t; })) continue;
    atoms.push_back({t, w});
    total += w;
  }
  for (auto& a : atoms) a.weight /= total;
  return DiscreteMeanMeasure(std::move(atoms));
}

inline void prop23_kubo_ando(TrialContext& ctx) {
  const HermitianMatrix x = random_psd(ctx.dim, 0.1, 2.0, ctx.rng);
  const HermitianMatrix y = random_psd(ctx.dim, 0.1, 2.0, ctx.rng);
  const auto tfs = traces(ctx.dim);
  for (int m = 0; m < 20; ++m) {
    const DiscreteMeanMeasure mu = random_measure(ctx.rng);
    const HermitianMatrix mean = kubo_ando_mean(mu, x, y);
    for (const auto& tf : tfs) ctx.ledger.leq(tf(mean), scalar_kubo_ando(mu, tf(x), tf(y)));
  }
  const HermitianMatrix g = geometric_mean(x, y);
  for (const auto& tf : tfs) ctx.ledger.leq(tf(g), std::sqrt(tf(x) * tf(y)));
}

/// Closed-form l'/l'' = gamma t slopes of the homogeneous pairs.
inline double expected_gamma(const PairCase& pc) {
  switch (pc.catalog_index) {
    case 0: return -1.0;
    case 1: return -pc.parameter / (pc.parameter - 1.0);
    case 2: return -1.0 / (1.0 + pc.parameter);
    default: return 1.0 / (pc.parameter - 1.0);
  }
}

inline void ell_catalog_criteria(TrialContext& ctx) {
  const auto& cases = cached_pair_cases();
  const auto& pc = cases[static_cast<std::size_t>(ctx.index) % cases.size()];
  const int grid = 64 + static_cast<int>(ctx.rng.below(192));
  const RatioConvexityVerdict v = check_ratio_convexity(pc.pair, grid, std::nullopt, ctx.rng.next_u64());
  ctx.ledger.holds(v.convex_on_domain);
  const HomogeneityVerdict h = check_homogeneity(pc.pair, grid);
  const bool expected = pc.catalog_index <= 3;
  ctx.ledger.holds(h.homogeneous == expected);
  if (expected) {
    ctx.ledger.holds(h.gamma.has_value());
    if (h.gamma) ctx.ledger.near(*h.gamma, expected_gamma(pc), 1e-6);
  }
}

inline void loglog_beyond_e(TrialContext& ctx) {
  const double top = ctx.rng.uniform(std::numbers::e + 0.5, 10.0);
  const RatioConvexityVerdict v =
      check_ratio_convexity(ell::loglog_pair(), 256, Interval::closed(1.001, top), ctx.rng.next_u64());
  ctx.ledger.holds(!v.convex_on_domain);
  ctx.ledger.holds(v.worst_point > std::numbers::e);
}

inline HermitianMatrix square(const HermitianMatrix& m) { return HermitianMatrix::symmetrized(m.matrix() * m.matrix()); }

inline HermitianMatrix two_by_two(double a, double b, double d) {
  Matrix m(2, 2);
  m << a, b, b, d;
  return HermitianMatrix(m);
}

inline HermitianMatrix block2(const HermitianMatrix& a, const HermitianMatrix& b, const HermitianMatrix& d) {
  const Index n = a.dim();
  Matrix m(2 * n, 2 * n);
  m << a.matrix(), b.matrix(), b.matrix(), d.matrix();
  return HermitianMatrix::symmetrized(m);
}

/// z <= y^{1/2} yet z^2 <= y fails, so [[1, z], [z, y]] is not positive.
inline void witness_checks(TrialLedger& L, const HermitianMatrix& z, const HermitianMatrix& y) {
  const HermitianMatrix root = matrix_sqrt(y);
  const HermitianMatrix one = HermitianMatrix::identity(y.dim());
  L.loewner_leq(z, root);
  L.loewner_leq(z, geometric_mean(one, y));
  L.loewner_violated(square(z), y);
  L.violates(-min_eigenvalue(block2(one, z, y)), 0.0);
}

inline void remark20_witness(TrialContext& ctx) {
  witness_checks(ctx.ledger, two_by_two(1, 1, 1), two_by_two(5, 3, 2));
  for (int attempt = 0; attempt < 500; ++attempt) {
    const HermitianMatrix z = random_psd(2, 0.0, 2.0, ctx.rng);
    const HermitianMatrix s = z + random_psd(2, 0.0, 2.0, ctx.rng);
    const HermitianMatrix y = square(s);
    const double scale = std::max(1.0, operator_norm(y));
    if (min_eigenvalue(y - square(z)) < -1e-6 * scale) {
      witness_checks(ctx.ledger, z, y);
      return;
    }
  }
  ctx.ledger.holds(false);
}

}  // namespace suites

struct SuiteInfo {
  std::string name;
  std::string description;
  bool adversarial;
  std::function<void(TrialContext&)> body;
};

inline const std::vector<SuiteInfo>& suite_registry() {
  using namespace suites;
  static const std::vector<SuiteInfo> registry{
      {"jensen-eq1", "diagonal surrogates in random frames never exceed the trace of a convex function", false,
       jensen_eq1},
      {"surrogate-supremum", "trace of a convex function is the supremum of its diagonal surrogates", false,
       surrogate_supremum},
      {"theorem2-convexity", "trace of a convex function is convex on commuting tuples", false, theorem2_convexity},
      {"theorem3-ellconvexity", "l(trace of e(g)) is convex for each catalog pair and convex g", false,
       theorem3_ellconvexity},
      {"corollary11-forms", "log, root, inverse-power and negative-power trace forms are convex", false,
       corollary11_forms},
      {"eq33-36-remark12", "two-variable exp, power and concave trace forms on tensor products", false,
       eq33_36_remark12},
      {"eq38-schatten", "super-additivity of (tr x^(1/p))^p and subadditivity of Schatten norms", false,
       eq38_schatten},
      {"prop13-determinant", "Kadison-Fuglede determinant is concave, multiplicative and homogeneous", false,
       prop13_determinant},
      {"prop16-harmonic-concavity", "n-fold harmonic mean is jointly concave and monotone", false,
       prop16_harmonic_concavity},
      {"eq49-harmonic-vs-arithmetic", "harmonic mean is dominated by the arithmetic mean", false,
       eq49_harmonic_vs_arithmetic},
      {"prop18-equivalence", "inverse-sum bound, Schur complement and block difference agree", false,
       prop18_equivalence},
      {"corollary19-maximality", "harmonic mean over n is the largest z with diag(x) >= [z]", false,
       corollary19_maximality},
      {"prop21-harmonic-trace", "trace of f at the harmonic mean is below the harmonic mean of traces", false,
       prop21_harmonic_trace},
      {"prop23-kubo-ando", "trace of a Kubo-Ando mean is below the mean of the traces", false, prop23_kubo_ando},
      {"ell-catalog-criteria", "ratio convexity and homogeneity of every catalog pair", false, ell_catalog_criteria},
      {"loglog-beyond-e", "log log ratio stops being convex past e (expected to fail)", true, loglog_beyond_e},
      {"remark20-witness", "z <= y^(1/2) with z^2 not <= y (expected to fail)", true, remark20_witness},
  };
  return registry;
}

inline const SuiteInfo* find_suite(const std::string& name) {
  for (const auto& s : suite_registry()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

/// Runs one named suite. Adversarial suites check that the inequality is
/// broken, so their verdict is pass when every trial finds the violation.
inline SuiteReport run_suite(const SuiteConfig& cfg) {
  validate(cfg);
  const SuiteInfo* info = find_suite(cfg.suite);
  if (!info) throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.suite = cfg.suite;
  report.config = cfg;
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t sub = Rng::derive(cfg.seed, static_cast<std::uint64_t>(t));
    const Index dim = cfg.dims[static_cast<std::size_t>(t) % cfg.dims.size()];
    TrialContext ctx{cfg, t, sub, Rng(sub), dim, TrialLedger(cfg.absTol, cfg.relTol)};
    try {
      info->body(ctx);
    } catch (const std::exception&) {
      ctx.ledger.record_exception();
    }
    ++report.trials;
    if (ctx.ledger.failed()) ++report.failures;
    if (ctx.ledger.worst() > report.maxViolation) {
      report.maxViolation = ctx.ledger.worst();
      report.worstCaseSeed = sub;
    }
  }
  report.elapsedSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Every suite in registry order; `all` is accepted as the suite name.
inline std::vector<SuiteReport> run_all(const SuiteConfig& cfg) {
  std::vector<SuiteReport> out;
  for (const auto& s : suite_registry()) {
    SuiteConfig c = cfg;
    c.suite = s.name;
    out.push_back(run_suite(c));
  }
  return out;
}

}  // namespace tracelab::harness

#endif  // TRACELAB_HARNESS_SUITES_HPP
