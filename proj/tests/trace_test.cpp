#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tracelab/trace.hpp"

namespace tracelab {
namespace {

HermitianMatrix swap2() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return HermitianMatrix(m);
}

const MultivariateFunction kExp =
    MultivariateFunction::scalar("exp", Interval::real_line(), [](double v) { return std::exp(v); });

MultivariateFunction convex_of_sum(std::size_t k) {
  return {"exp(sum)", std::vector<Interval>(k, Interval::real_line()), [](std::span<const double> p) {
            double s = 0.0;
            for (double v : p) s += v;
            return std::exp(s);
          }};
}

MultivariateFunction square_norm(std::size_t k) {
  return {"|l|^2", std::vector<Interval>(k, Interval::real_line()), [](std::span<const double> p) {
            double s = 0.0;
            for (double v : p) s += v * v;
            return s;
          }};
}

CommutingTuple seeded_tuple(Index n, std::size_t k, Rng& rng) {
  const Matrix u = random_unitary(n, rng);
  RealMatrix rows(n, static_cast<Index>(k));
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < rows.cols(); ++i) rows(j, i) = rng.uniform(-1.5, 1.5);
  }
  return CommutingTuple::from_spectrum(u, rows);
}

TEST(TraceTest, IdentityAndSwap) {
  EXPECT_DOUBLE_EQ(trace(TraceFunctional::standard(3), HermitianMatrix::identity(3)), 3.0);
  EXPECT_DOUBLE_EQ(trace(TraceFunctional::normalized(3), HermitianMatrix::identity(3)), 1.0);
  EXPECT_DOUBLE_EQ(trace(TraceFunctional::standard(2), swap2()), 0.0);
  EXPECT_THROW(trace(TraceFunctional::standard(3), swap2()), DimensionError);
}

TEST(TraceProperty, Cyclicity) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(9));
    const auto x = testing::gaussian_hermitian(n, rng);
    const auto y = testing::gaussian_hermitian(n, rng);
    for (auto tf : {TraceFunctional::standard(n), TraceFunctional::normalized(n)}) {
      const double scale = std::max(1.0, x.frobenius() * y.frobenius());
      EXPECT_LT(std::abs(tf(Matrix(x.matrix() * y.matrix())) - tf(Matrix(y.matrix() * x.matrix()))),
                1e-10 * scale);
    }
  }
}

TEST(TraceOfFunctionTest, Examples) {
  RealVector d(2);
  d << 0.0, 1.0;
  const auto tf = TraceFunctional::standard(2);
  EXPECT_NEAR(trace_of_function(tf, kExp, HermitianMatrix::diagonal(d)), 1.0 + std::numbers::e, 1e-14);
  EXPECT_NEAR(trace_of_function(tf, kExp, swap2()), std::numbers::e + 1.0 / std::numbers::e, 1e-13);

  Rng rng(3);
  const auto t = seeded_tuple(4, 2, rng);
  const MultivariateFunction sum{"sum", std::vector<Interval>(2, Interval::real_line()),
                                 [](std::span<const double> p) { return p[0] + p[1]; }};
  const auto tf4 = TraceFunctional::standard(4);
  EXPECT_NEAR(trace_of_function(tf4, sum, t), tf4(t.member(0)) + tf4(t.member(1)), 1e-12);
}

TEST(TraceOfFunctionProperty, RoutesAgree) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(9));
    const std::size_t k = 1 + rng.below(3);
    const auto t = seeded_tuple(n, k, rng);
    const auto routes = trace_of_function_routes(TraceFunctional::normalized(n), convex_of_sum(k), t);
    EXPECT_LE(std::abs(routes.matrix_route - routes.spectral_route), 1e-9 * std::max(1.0, routes.scale));
  }
}

TEST(DiagonalSurrogateTest, StandardBasisOnSwap) {
  const auto tf = TraceFunctional::standard(2);
  const auto t = as_tuple(swap2());
  EXPECT_NEAR(diagonal_surrogate(tf, kExp, t, BasisFrame::standard(2)), 2.0, 1e-14);
  EXPECT_LT(diagonal_surrogate(tf, kExp, t, BasisFrame::standard(2)), trace_of_function(tf, kExp, t));
}

TEST(DiagonalSurrogateTest, LinearFunctionIsBasisIndependent) {
  Rng rng(11);
  const auto t = seeded_tuple(5, 2, rng);
  const MultivariateFunction lin{"lin", std::vector<Interval>(2, Interval::real_line()),
                                 [](std::span<const double> p) { return 2.0 * p[0] - p[1] + 0.5; }};
  const auto tf = TraceFunctional::normalized(5);
  const double exact = trace_of_function(tf, lin, t);
  for (int i = 0; i < 10; ++i) {
    EXPECT_NEAR(diagonal_surrogate(tf, lin, t, BasisFrame::random(5, 100 + i)), exact, 1e-12);
  }
}

TEST(DiagonalSurrogateTest, RejectsBadFramesAndDims) {
  Matrix m = Matrix::Identity(2, 2) * 2.0;
  EXPECT_THROW(BasisFrame{m}, DomainError);
  const auto t = as_tuple(swap2());
  EXPECT_THROW(diagonal_surrogate(TraceFunctional::standard(2), kExp, t, BasisFrame::standard(3)),
               DimensionError);
}

// Property: for convex f the surrogate never exceeds the trace, with equality at the joint basis.
TEST(DiagonalSurrogateProperty, JensenInequalityAndEquality) {
  Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(9));
    const std::size_t k = 1 + rng.below(3);
    const auto t = seeded_tuple(n, k, rng);
    const auto f = (trial % 2 == 0) ? convex_of_sum(k) : square_norm(k);
    const auto tf = (trial % 3 == 0) ? TraceFunctional::standard(n) : TraceFunctional::normalized(n);
    const double value = trace_of_function(tf, f, t);
    const double surrogate = diagonal_surrogate(tf, f, t, BasisFrame::random(n, rng.next_u64()));
    EXPECT_LE(surrogate, value + std::max(1e-9, 1e-8 * std::abs(value)));
    const double at_joint = diagonal_surrogate(tf, f, t, BasisFrame(t.joint_basis()));
    EXPECT_LE(std::abs(at_joint - value), 1e-9 * std::max(1.0, std::abs(value)));
  }
}

TEST(SupremumProbeTest, ConvexAttainsTrace) {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(6));
    const auto t = seeded_tuple(n, 2, rng);
    const auto tf = TraceFunctional::standard(n);
    const double value = trace_of_function(tf, convex_of_sum(2), t);
    EXPECT_NEAR(surrogate_supremum_probe(tf, convex_of_sum(2), t, 8, trial), value,
                1e-9 * std::max(1.0, std::abs(value)));
  }
}

TEST(SupremumProbeTest, BasisCountAndDiagonalInput) {
  RealVector d(3);
  d << -1.0, 0.0, 2.0;
  const auto t = as_tuple(HermitianMatrix::diagonal(d));
  const auto tf = TraceFunctional::standard(3);
  EXPECT_THROW(surrogate_supremum_probe(tf, kExp, t, 0, 1), std::invalid_argument);
  EXPECT_NEAR(surrogate_supremum_probe(tf, kExp, t, 1, 1), std::exp(-1.0) + 1.0 + std::exp(2.0), 1e-12);
}

TEST(SupremumProbeTest, ConcaveFunctionExceedsTrace) {
  // -l^2 on swap: trace is -2; the standard frame sees zero diagonals and gives 0
  const auto neg_sq =
      MultivariateFunction::scalar("-l^2", Interval::real_line(), [](double v) { return -v * v; });
  const auto tf = TraceFunctional::standard(2);
  const auto t = as_tuple(swap2());
  const double value = trace_of_function(tf, neg_sq, t);
  EXPECT_NEAR(value, -2.0, 1e-13);
  EXPECT_NEAR(diagonal_surrogate(tf, neg_sq, t, BasisFrame::standard(2)), 0.0, 1e-14);
  EXPECT_GT(surrogate_supremum_probe(tf, neg_sq, t, 8, 5), value + 0.1);
}

TEST(DeterminantTest, Examples) {
  RealVector d(2);
  d << 1.0, 4.0;
  EXPECT_NEAR(kf_determinant(TraceFunctional::normalized(2), HermitianMatrix::diagonal(d)), 2.0, 1e-14);
  EXPECT_NEAR(kf_determinant(TraceFunctional::normalized(3), HermitianMatrix::identity(3)), 1.0, 1e-15);
  d << -1.0, 4.0;
  EXPECT_NEAR(kf_determinant(TraceFunctional::normalized(2), HermitianMatrix::diagonal(d)), 2.0, 1e-14);
  EXPECT_THROW(kf_determinant(TraceFunctional::normalized(2), HermitianMatrix::zero(2)), SingularError);
}

TEST(DeterminantProperty, MultiplicativeHomogeneousConcave) {
  Rng rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(7));
    const auto tf = TraceFunctional::normalized(n);
    const auto x = testing::gaussian_positive(n, rng, rng.uniform(0.1, 1.0));
    const auto y = testing::gaussian_positive(n, rng, rng.uniform(0.1, 1.0));
    const double dx = kf_determinant(tf, x);
    const double dy = kf_determinant(tf, y);
    // oracle: Eigen's LU determinant of the product, n-th root
    const Matrix xy = x.matrix() * y.matrix();
    const double oracle = std::pow(std::abs(xy.determinant()), 1.0 / static_cast<double>(n));
    EXPECT_NEAR(kf_determinant(tf, xy) / oracle, 1.0, 1e-8);
    EXPECT_NEAR(kf_determinant(tf, xy) / (dx * dy), 1.0, 1e-8);
    const double lambda = rng.uniform(0.1, 10.0);
    EXPECT_NEAR(kf_determinant(tf, x * lambda) / (lambda * dx), 1.0, 1e-8);
    const double mid = kf_determinant(tf, (x + y) * 0.5);
    EXPECT_GE(mid, 0.5 * dx + 0.5 * dy - 1e-10 * std::max(1.0, mid));
  }
}

TEST(SchattenTest, Examples) {
  Rng rng(1);
  const auto x = testing::gaussian_positive(4, rng);
  const auto tf = TraceFunctional::standard(4);
  EXPECT_NEAR(schatten_quasi_power(tf, x, 1.0), tf(x), 1e-12);
  EXPECT_NEAR(schatten_quasi_power(TraceFunctional::standard(2), HermitianMatrix::identity(2), 2.0), 4.0, 1e-14);
  EXPECT_THROW(schatten_quasi_power(TraceFunctional::standard(2), swap2(), 2.0), DomainError);
  EXPECT_NEAR(schatten_norm(TraceFunctional::standard(2), swap2(), 2.0), std::sqrt(2.0), 1e-14);
}

TEST(SchattenProperty, QuasiPowerSuperadditive) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(7));
    const auto tf = TraceFunctional::normalized(n);
    const auto x = testing::gaussian_positive(n, rng, 0.0);
    const auto y = testing::gaussian_positive(n, rng, 0.0);
    for (double p : {1.5, 2.0, 4.0}) {
      const double lhs = schatten_quasi_power(tf, x + y, p);
      const double rhs = schatten_quasi_power(tf, x, p) + schatten_quasi_power(tf, y, p);
      EXPECT_GE(lhs, rhs - 1e-9 * std::max(1.0, rhs));
    }
  }
}

}  // namespace
}  // namespace tracelab
