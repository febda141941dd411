#include <gtest/gtest.h>

#include "cohft/frobenius.hpp"
#include "support/random_algebra.hpp"

using namespace cohft;
using cohft::testing::Rng;

TEST(Frobenius, ValidationReportsEveryViolation) {
  Matrix eta = Matrix::from_rows({{1, 1}, {0, 1}});
  std::vector<std::vector<Vec>> prod{{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}};
  auto report = FrobeniusAlgebra::validate(eta, prod, {1, 0});
  ASSERT_FALSE(report.empty());
  EXPECT_EQ(report.front(), "eta not symmetric");
  try {
    FrobeniusAlgebra a(eta, prod, {1, 0});
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.report(), report);
  }
  Matrix degenerate = Matrix::from_rows({{1, 1}, {1, 1}});
  auto r2 = FrobeniusAlgebra::validate(degenerate, prod, {1, 0});
  EXPECT_NE(std::find(r2.begin(), r2.end(), "eta degenerate"), r2.end());
}

TEST(Frobenius, TruncatedPolynomialAlgebraIsNotSemisimple) {
  FrobeniusAlgebra a = truncated_polynomial_algebra(2);
  EXPECT_FALSE(a.is_semisimple());
  EXPECT_THROW(semisimplify(a), NotSemisimple);
  EXPECT_EQ(a.euler_class(), (Vec{0, 2}));
}

TEST(Frobenius, SemisimplifyRecoversWeightsUpToSign) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t d = 1 + trial % 4;
    auto ra = cohft::testing::random_semisimple(rng, d);
    SemisimpleData ss = semisimplify(ra.algebra);
    EXPECT_TRUE(validate_semisimple(ra.algebra, ss).empty());
    // each recovered e_mu equals +-(some input idempotent) with matching weight sign
    for (std::size_t mu = 0; mu < d; ++mu) {
      bool matched = false;
      for (std::size_t nu = 0; nu < d; ++nu) {
        if (ss.e(mu) == ra.basis.column(nu)) matched = ss.weights[mu] == ra.weights[nu];
        if (ss.e(mu) == Rational(-1) * ra.basis.column(nu)) matched = ss.weights[mu] == -ra.weights[nu];
        if (matched) break;
      }
      EXPECT_TRUE(matched);
    }
    // canonical: independent of the seed-dependent search
    EXPECT_EQ(semisimplify(ra.algebra).basis, ss.basis);
  }
}

TEST(Frobenius, EulerClassInSemisimpleFrame) {
  Rng rng(5);
  auto ra = cohft::testing::random_semisimple(rng, 3);
  SemisimpleData ss = semisimplify(ra.algebra);
  // alpha = sum_mu e_mu e_mu
  Vec alpha = ra.algebra.euler_class();
  for (std::size_t mu = 0; mu < 3; ++mu) {
    Vec expected = Rational(1) / (ss.weights[mu] * ss.weights[mu]) * ss.e(mu);
    EXPECT_EQ(ra.algebra.multiply(alpha, ss.e(mu)), expected);
  }
}

TEST(Frobenius, IrrationalSplittingIsRejected) {
  // Q(sqrt 2) as Q[x]/(x^2 - 2) with eta(1,1)=1, eta(x,x)=2
  Matrix eta = Matrix::from_rows({{1, 0}, {0, 2}});
  std::vector<std::vector<Vec>> prod{{{1, 0}, {0, 1}}, {{0, 1}, {2, 0}}};
  FrobeniusAlgebra a(eta, prod, {1, 0});
  EXPECT_TRUE(a.is_semisimple());
  EXPECT_THROW(semisimplify(a), NotSplit);
}

TEST(Frobenius, NonSquareTraceIsRejected) {
  // Q x Q with eta = diag(2, 1): idempotent trace 2 has no rational root
  FrobeniusAlgebra a(Matrix::from_rows({{2, 0}, {0, 1}}), {{{1, 0}, {0, 0}}, {{0, 0}, {0, 1}}}, {1, 1});
  EXPECT_THROW(semisimplify(a), NotSplit);
}

TEST(Frobenius, InvertAndPowers) {
  FrobeniusAlgebra a = diagonal_algebra({2, -3});
  Vec x{1, 5};
  Vec inv = a.invert(x);
  EXPECT_EQ(a.multiply(x, inv), a.unit());
  EXPECT_EQ(a.power(x, -2), a.multiply(inv, inv));
  EXPECT_THROW(a.invert({0, 1}), NotInvertible);
  EXPECT_THROW(a.multiply({1}, {1, 2}), DimensionMismatch);
}
