#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tracelab/operator_means.hpp"
#include "tracelab/trace.hpp"

namespace tracelab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

HermitianMatrix scalar(double v) {
  Matrix m(1, 1);
  m(0, 0) = v;
  return HermitianMatrix(m);
}

HermitianMatrix diag2(double a, double b) {
  RealVector d(2);
  d << a, b;
  return HermitianMatrix::diagonal(d);
}

// Independent oracles built on Eigen's LU inverse and self-adjoint solver.
Matrix lu_inverse(const HermitianMatrix& x) { return x.matrix().inverse(); }

Matrix oracle_harmonic(const std::vector<HermitianMatrix>& xs) {
  Matrix sum = Matrix::Zero(xs.front().dim(), xs.front().dim());
  for (const auto& x : xs) sum += lu_inverse(x);
  return static_cast<double>(xs.size()) * sum.inverse();
}

Matrix oracle_sqrt(const HermitianMatrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(x.matrix());
  return solver.operatorSqrt();
}

Matrix invertible(Index n, Rng& rng) {
  Matrix z(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) z(i, j) = rng.complex_normal();
  }
  return z + Matrix::Identity(n, n) * 2.0;
}

double rel(const HermitianMatrix& a, const Matrix& b) { return testing::relative_error(a.matrix(), b); }

TEST(HarmonicMeanTest, Examples) {
  EXPECT_NEAR(harmonic_mean({scalar(2.0), scalar(6.0)})(0, 0).real(), 3.0, 1e-14);
  Rng rng(1);
  const auto x = testing::gaussian_positive(5, rng);
  EXPECT_LT(rel(harmonic_mean({x, x}), x.matrix()), 1e-9);
  std::vector<HermitianMatrix> xs;
  for (int i = 0; i < 3; ++i) xs.push_back(testing::gaussian_positive(4, rng));
  EXPECT_LT(rel(harmonic_mean(xs), oracle_harmonic(xs)), 1e-8);
  EXPECT_LT(rel(harmonic_mean_limit(xs), oracle_harmonic(xs)), 1e-8);
}

TEST(HarmonicMeanTest, SingularInputsUseTheLimit) {
  EXPECT_LT(rel(harmonic_mean({diag2(1, 0), diag2(1, 0)}), diag2(1, 0).matrix()), 1e-8);
  EXPECT_LT(rel(harmonic_mean({diag2(1, 0), diag2(0, 1)}), Matrix::Zero(2, 2)), 1e-8);
  // scalar oracle 2ab/(a+b) entrywise on commuting diagonals
  EXPECT_LT(rel(harmonic_mean({diag2(3, 0), diag2(1, 2)}), diag2(1.5, 0).matrix()), 1e-8);
  EXPECT_LT(rel(harmonic_mean({HermitianMatrix::zero(3), HermitianMatrix::zero(3)}), Matrix::Zero(3, 3)), 1e-15);
}

TEST(HarmonicMeanTest, Errors) {
  EXPECT_THROW(harmonic_mean({diag2(1, -1), diag2(1, 1)}), DomainError);
  EXPECT_THROW(harmonic_mean({diag2(1, 1), HermitianMatrix::identity(3)}), DimensionError);
  EXPECT_THROW(harmonic_mean({}), DimensionError);
}

TEST(HarmonicMeanProperty, PermutationSymmetricAndPositive) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(6));
    std::vector<HermitianMatrix> xs;
    for (int i = 0; i < 3; ++i) xs.push_back(testing::gaussian_positive(n, rng, 0.1));
    const auto h = harmonic_mean(xs);
    EXPECT_LT(rel(harmonic_mean({xs[2], xs[0], xs[1]}), h.matrix()), 1e-9);
    EXPECT_GE(min_eigenvalue(h), 0.0);
  }
}

TEST(HarmonicMeanProperty, JointConcavityArithmeticBoundMonotonicity) {
  Rng rng(16);
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = 1 + static_cast<Index>(rng.below(8));
    const std::size_t k = 2 + rng.below(3);
    std::vector<HermitianMatrix> xs, ys, mids, bigger;
    HermitianMatrix mean = HermitianMatrix::zero(n);
    for (std::size_t i = 0; i < k; ++i) {
      xs.push_back(testing::gaussian_positive(n, rng, rng.uniform(0.01, 1.0)));
      ys.push_back(testing::gaussian_positive(n, rng, rng.uniform(0.01, 1.0)));
      mids.push_back((xs.back() + ys.back()) * 0.5);
      bigger.push_back(xs.back() + testing::gaussian_positive(n, rng, 0.0));
      mean += xs.back() * (1.0 / static_cast<double>(k));
    }
    const auto hx = harmonic_mean(xs);
    const auto hy = harmonic_mean(ys);
    const auto hm = harmonic_mean(mids);
    const double scale = std::max({operator_norm(hx), operator_norm(hy), operator_norm(hm)});
    EXPECT_GE(loewner_margin((hx + hy) * 0.5, hm), loewner_floor(scale));
    EXPECT_GE(loewner_margin(hx, mean), loewner_floor(operator_norm(mean)));
    EXPECT_GE(loewner_margin(hx, harmonic_mean(bigger)), loewner_floor(scale));
  }
}

TEST(ParallelSumTest, Examples) {
  EXPECT_NEAR(parallel_sum(scalar(2.0), scalar(6.0))(0, 0).real(), 1.5, 1e-14);
  Rng rng(3);
  const auto x = testing::gaussian_positive(4, rng);
  EXPECT_LT(rel(parallel_sum(x, x), x.matrix() * 0.5), 1e-9);
  const auto y = testing::gaussian_positive(4, rng);
  const Matrix other = x.matrix() * (x + y).matrix().inverse() * y.matrix();
  EXPECT_LT(rel(parallel_sum(x, y), other), 1e-8);
}

TEST(GeometricMeanTest, Examples) {
  EXPECT_NEAR(geometric_mean(scalar(4.0), scalar(9.0))(0, 0).real(), 6.0, 1e-13);
  Rng rng(4);
  const auto y = testing::gaussian_positive(5, rng);
  EXPECT_LT(rel(geometric_mean(HermitianMatrix::identity(5), y), oracle_sqrt(y)), 1e-10);
}

TEST(GeometricMeanProperty, RiccatiSymmetryTraceBound) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(7));
    const auto x = testing::gaussian_positive(n, rng, 0.1);
    const auto y = testing::gaussian_positive(n, rng, 0.1);
    const auto g = geometric_mean(x, y);
    // oracle: g is the positive solution of g x^{-1} g = y
    EXPECT_LT(testing::relative_error(g.matrix() * lu_inverse(x) * g.matrix(), y.matrix()), 1e-8);
    EXPECT_GE(min_eigenvalue(g), 0.0);
    EXPECT_LT(rel(geometric_mean(y, x), g.matrix()), 1e-8);
    const auto tf = TraceFunctional::standard(n);
    EXPECT_LE(tf(g), std::sqrt(tf(x) * tf(y)) * (1.0 + 1e-12));
  }
}

TEST(GeometricMeanTest, SingularInputs) {
  // one invertible input: the formula is applied from that side
  EXPECT_LT(rel(geometric_mean(diag2(1, 0), diag2(4, 9)), diag2(2, 0).matrix()), 1e-8);
  // both singular with a common kernel: the shifted limit is linear in eps
  EXPECT_LT(rel(geometric_mean(diag2(1, 0), diag2(4, 0)), diag2(2, 0).matrix()), 1e-8);
  // complementary kernels: entries behave like sqrt(eps), so extrapolation refuses
  EXPECT_THROW(geometric_mean(diag2(1, 0), diag2(0, 1)), NumericalFailure);
}

TEST(KuboAndoTest, PointMassAtOneIsHarmonic) {
  Rng rng(6);
  const auto x = testing::gaussian_positive(4, rng);
  const auto y = testing::gaussian_positive(4, rng);
  const auto km = kubo_ando_mean(DiscreteMeanMeasure::point_mass(1.0), x, y);
  EXPECT_LT(rel(km, harmonic_mean({x, y}).matrix()), 1e-9);
}

TEST(KuboAndoTest, EndpointAtomsGiveArithmeticMean) {
  Rng rng(7);
  const auto x = testing::gaussian_positive(3, rng);
  const auto y = testing::gaussian_positive(3, rng);
  const DiscreteMeanMeasure mu({{0.0, 0.5}, {kInf, 0.5}});
  EXPECT_LT(rel(kubo_ando_mean(mu, x, y), ((x + y) * 0.5).matrix()), 1e-12);
  // oracle for the endpoint values: the integrand (t x ! y)(1 + 1/t)/2 near 0 and near infinity
  const auto integrand = [&](double t) {
    return Matrix(0.5 * (1.0 + 1.0 / t) * oracle_harmonic({x * t, y}));
  };
  EXPECT_LT(testing::relative_error(integrand(1e-8), x.matrix()), 1e-6);
  EXPECT_LT(testing::relative_error(integrand(1e8), y.matrix()), 1e-6);
  EXPECT_LT(testing::relative_error(integrand(1e-8), x.matrix()),
            testing::relative_error(integrand(1e-4), x.matrix()));
}

DiscreteMeanMeasure random_measure(Rng& rng) {
  std::vector<DiscreteMeanMeasure::Atom> atoms;
  const std::size_t count = 1 + rng.below(4);
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double w = rng.uniform(0.1, 1.0);
    atoms.push_back({std::exp(rng.uniform(-3.0, 3.0)), w});
    total += w;
  }
  if (rng.uniform() < 0.3) atoms.front().t = 0.0;
  if (rng.uniform() < 0.3) atoms.back().t = kInf;
  for (auto& a : atoms) a.weight /= total;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) sum += atoms[i].weight;
  atoms.back().weight = 1.0 - sum;
  return DiscreteMeanMeasure(atoms);
}

TEST(KuboAndoProperty, NormalizedAndTransformerEquality) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 1 + static_cast<Index>(rng.below(6));
    const auto mu = random_measure(rng);
    EXPECT_LT(rel(kubo_ando_mean(mu, HermitianMatrix::identity(n), HermitianMatrix::identity(n)),
                  Matrix::Identity(n, n)),
              1e-9);
    const auto x = testing::gaussian_positive(n, rng, 0.2);
    const auto y = testing::gaussian_positive(n, rng, 0.2);
    const Matrix z = invertible(n, rng);
    const auto zx = congruence(z, x);
    const auto zy = congruence(z, y);
    EXPECT_LT(testing::relative_error(congruence(z, kubo_ando_mean(mu, x, y)).matrix(),
                                      kubo_ando_mean(mu, zx, zy).matrix()),
              1e-7);
    EXPECT_LT(testing::relative_error(congruence(z, harmonic_mean({x, y})).matrix(),
                                      harmonic_mean({zx, zy}).matrix()),
              1e-7);
    EXPECT_LT(testing::relative_error(congruence(z, geometric_mean(x, y)).matrix(),
                                      geometric_mean(zx, zy).matrix()),
              1e-7);
  }
}

TEST(KuboAndoTest, MeasureValidation) {
  EXPECT_THROW(DiscreteMeanMeasure({}), std::invalid_argument);
  EXPECT_THROW(DiscreteMeanMeasure({{1.0, 0.5}}), std::invalid_argument);
  EXPECT_THROW(DiscreteMeanMeasure({{1.0, 0.5}, {1.0, 0.5}}), std::invalid_argument);
  EXPECT_THROW(DiscreteMeanMeasure({{-1.0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(DiscreteMeanMeasure({{1.0, 1.5}, {2.0, -0.5}}), std::invalid_argument);
  EXPECT_NO_THROW(DiscreteMeanMeasure({{0.0, 0.25}, {kInf, 0.75}}));
}

TEST(BlockPairTest, Examples) {
  const auto x = diag2(2, 3);
  const auto y = diag2(1, 1);
  const auto [d1, e1] = build_block_pair({x}, y);
  EXPECT_LT(rel(d1.to_dense(), x.matrix()), 1e-15);
  EXPECT_LT(rel(e1.to_dense(), y.matrix()), 1e-15);

  const auto id = HermitianMatrix::identity(2);
  const auto [d, e] = build_block_pair({id, id}, id);
  EXPECT_LT(rel(d.to_dense(), Matrix::Identity(4, 4)), 1e-15);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) EXPECT_LT(max_abs(e.cell(i, j) - Matrix::Identity(2, 2)), 1e-15);
  }

  // e d^{-1} e has every cell equal to a = sum x_k^{-1} when y = 1
  Rng rng(9);
  const auto x1 = testing::gaussian_positive(3, rng);
  const auto x2 = testing::gaussian_positive(3, rng);
  const auto [dd, ee] = build_block_pair({x1, x2}, HermitianMatrix::identity(3));
  const Matrix ede = ee.to_dense().matrix() * dd.to_dense().matrix().inverse() * ee.to_dense().matrix();
  const Matrix a = lu_inverse(x1) + lu_inverse(x2);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) EXPECT_LT(max_abs(ede.block(i * 3, j * 3, 3, 3) - a), 1e-10);
  }
  EXPECT_THROW(build_block_pair({x1}, id), DimensionError);
}

TEST(BlockEquivalenceTest, Examples) {
  Rng rng(10);
  std::vector<HermitianMatrix> xs{testing::gaussian_positive(3, rng), testing::gaussian_positive(3, rng)};
  const auto bound = HermitianMatrix::symmetrized((lu_inverse(xs[0]) + lu_inverse(xs[1])).inverse());
  const auto at_bound = block_equivalence_check(xs, bound);
  EXPECT_TRUE(at_bound.inverse_sum_bound && at_bound.schur_complement && at_bound.block_difference);
  EXPECT_TRUE(at_bound.agree);

  const auto two = HermitianMatrix::identity(2) * 2.0;
  const auto past = block_equivalence_check({two, two}, HermitianMatrix::identity(2) * 1.001);
  EXPECT_FALSE(past.inverse_sum_bound || past.schur_complement || past.block_difference);
  EXPECT_TRUE(past.agree);

  const auto tiny = block_equivalence_check(xs, HermitianMatrix::identity(3) * 1e-6);
  EXPECT_TRUE(tiny.inverse_sum_bound && tiny.schur_complement && tiny.block_difference);
}

TEST(BlockEquivalenceProperty, ConditionsAgree) {
  Rng rng(11);
  int mode_counts[3] = {0, 0, 0};
  for (int trial = 0; trial < 500; ++trial) {
    const Index c = 1 + static_cast<Index>(rng.below(4));
    const std::size_t k = 1 + rng.below(4);
    std::vector<HermitianMatrix> xs;
    for (std::size_t i = 0; i < k; ++i) xs.push_back(testing::gaussian_positive(c, rng, 0.2));
    Matrix inv_sum = Matrix::Zero(c, c);
    for (const auto& x : xs) inv_sum += lu_inverse(x);
    const auto a = HermitianMatrix::symmetrized(inv_sum.inverse());
    const int mode = trial % 3;
    ++mode_counts[mode];
    HermitianMatrix y = a;
    if (mode == 0) {
      y = a * rng.uniform(0.1, 0.9);
    } else if (mode == 2) {
      y = a + testing::gaussian_positive(c, rng, 0.05) * 0.5;
    }
    const auto v = block_equivalence_check(xs, y);
    EXPECT_TRUE(v.agree) << "mode " << mode;
    EXPECT_EQ(v.inverse_sum_bound, mode != 2);
  }
  EXPECT_GT(mode_counts[2], 100);
}

TEST(BlockEquivalenceProperty, BoundIsMaximal) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Index c = 1 + static_cast<Index>(rng.below(4));
    std::vector<HermitianMatrix> xs{testing::gaussian_positive(c, rng), testing::gaussian_positive(c, rng)};
    const auto a = HermitianMatrix::symmetrized((lu_inverse(xs[0]) + lu_inverse(xs[1])).inverse());
    // v is rank one so the perturbation only pushes in one direction
    Matrix g(c, 1);
    for (Index i = 0; i < c; ++i) g(i, 0) = rng.complex_normal();
    const auto v = HermitianMatrix::symmetrized(g * g.adjoint() / g.squaredNorm());
    const double scale = operator_norm(a);
    EXPECT_FALSE(block_equivalence_check(xs, a + v * (1e-3 * scale)).block_difference);
    EXPECT_TRUE(block_equivalence_check(xs, a).block_difference);
  }
}

TEST(SubadditivityGapTest, Examples) {
  Rng rng(13);
  const auto x = testing::gaussian_positive(3, rng);
  const auto y = testing::gaussian_hermitian(3, rng);
  EXPECT_LT(subadditivity_gap({x}, {y}).max_abs(), 1e-10 * std::max(1.0, y.max_abs() * y.max_abs()));
  const auto id = HermitianMatrix::identity(2);
  EXPECT_LT(rel(subadditivity_gap({id, id}, {id, -id}), Matrix::Identity(2, 2) * 2.0), 1e-14);
  EXPECT_THROW(subadditivity_gap({id}, {id, id}), DimensionError);
}

TEST(SubadditivityGapProperty, PositiveSemidefinite) {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + static_cast<Index>(rng.below(6));
    const std::size_t k = 1 + rng.below(4);
    std::vector<HermitianMatrix> xs, ys;
    for (std::size_t i = 0; i < k; ++i) {
      xs.push_back(testing::gaussian_positive(n, rng, 0.1));
      ys.push_back(testing::gaussian_hermitian(n, rng));
    }
    const auto gap = subadditivity_gap(xs, ys);
    EXPECT_GE(min_eigenvalue(gap), -1e-9 * std::max(1.0, gap.max_abs()));
  }
}

}  // namespace
}  // namespace tracelab
