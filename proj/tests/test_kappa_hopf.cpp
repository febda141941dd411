#include <gtest/gtest.h>

#include "cohft/kappa_hopf.hpp"
#include "support/random_algebra.hpp"

using namespace cohft;
using cohft::testing::Rng;

namespace {

KappaPoly random_kappa_poly(Rng& rng, int max_degree, bool constant) {
  KappaPoly p;
  if (constant) p.add(KappaMono{}, cohft::testing::small_rational(rng));
  std::uniform_int_distribution<int> e(0, 2);
  for (int t = 0; t < 6; ++t) {
    KappaMono m({e(rng), e(rng), e(rng) % 2});
    if (m.is_one() || m.degree() > max_degree) continue;
    p.add(m, cohft::testing::small_rational(rng));
  }
  return p;
}

CovectorKappaPoly random_covector(Rng& rng, std::size_t d, int max_degree, bool constant) {
  CovectorKappaPoly x;
  for (std::size_t i = 0; i < d; ++i) x.values.push_back(random_kappa_poly(rng, max_degree, constant));
  return x;
}

}  // namespace

TEST(KappaHopf, CoproductIsAnAlgebraMap) {
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    KappaPoly p = random_kappa_poly(rng, 4, true), q = random_kappa_poly(rng, 4, true);
    KappaTensor lhs = coproduct(p * q);
    KappaTensor dp = coproduct(p), dq = coproduct(q);
    EXPECT_EQ(lhs, dp * dq);
  }
}

TEST(KappaHopf, CounitAndAntipodeAxioms) {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    KappaPoly p = random_kappa_poly(rng, 5, true);
    KappaTensor dp = coproduct(p);
    // (S (x) id) then multiply gives the counit
    EXPECT_EQ(tensor_multiply(tensor_map(dp, &antipode, nullptr)), KappaPoly(counit(p)));
    EXPECT_EQ(tensor_multiply(tensor_map(dp, nullptr, &antipode)), KappaPoly(counit(p)));
  }
  EXPECT_TRUE(is_primitive(KappaPoly::monomial(KappaMono::kappa(3))));
  EXPECT_FALSE(is_primitive(KappaPoly::monomial(KappaMono::kappa(1, 2))));
}

TEST(KappaHopf, ExpConvClosedFormMatchesSeries) {
  Rng rng(9);
  for (int t = 0; t < 6; ++t) {
    auto ra = cohft::testing::random_semisimple(rng, 1 + t % 3);
    SemisimpleData ss = semisimplify(ra.algebra);
    CovectorKappaPoly x = random_covector(rng, ra.algebra.dim(), 4, false);
    EXPECT_EQ(exp_conv(x, ss, 4), exp_conv_by_series(ra.algebra, x, ss, 4));
  }
}

TEST(KappaHopf, ExpOfPrimitiveIsGrouplikeAndLogInverts) {
  Rng rng(10);
  for (int t = 0; t < 6; ++t) {
    auto ra = cohft::testing::random_semisimple(rng, 1 + t % 3);
    SemisimpleData ss = semisimplify(ra.algebra);
    CovectorKappaPoly x;
    for (std::size_t i = 0; i < ra.algebra.dim(); ++i) {
      KappaPoly p;
      for (int j = 1; j <= 4; ++j) p.add(KappaMono::kappa(j), cohft::testing::small_rational(rng));
      x.values.push_back(p);
    }
    ASSERT_TRUE(is_primitive(x));
    CovectorKappaPoly X = exp_conv(x, ss, 5);
    EXPECT_TRUE(is_grouplike(ra.algebra, X, ss, 5));
    EXPECT_EQ(log_conv(ra.algebra, X, ss, 5), x);
    // a non-primitive exponent breaks group-likeness
    CovectorKappaPoly y = x;
    y.values[0].add(KappaMono::kappa(1, 2), 1);
    EXPECT_FALSE(is_grouplike(ra.algebra, exp_conv(y, ss, 5), ss, 5));
  }
}

TEST(KappaHopf, ConstantTermPreconditions) {
  FrobeniusAlgebra a = diagonal_algebra({1, 2});
  SemisimpleData ss = semisimplify(a);
  CovectorKappaPoly x{{KappaPoly(Rational(1)), KappaPoly()}};
  EXPECT_THROW(exp_conv(x, ss, 3), NonzeroConstantTerm);
  EXPECT_THROW(log_conv(a, x, ss, 3), WrongConstantTerm);
}

TEST(KappaHopf, ConvolutionIsCommutativeUnderSwap) {
  Rng rng(12);
  auto ra = cohft::testing::random_semisimple(rng, 2);
  SemisimpleData ss = semisimplify(ra.algebra);
  CovectorKappaPoly x = random_covector(rng, 2, 3, true), y = random_covector(rng, 2, 3, true);
  auto xy = convolution(x, y, ss), yx = convolution(y, x, ss);
  for (std::size_t i = 0; i < 2; ++i) {
    KappaTensor swapped;
    for (const auto& [m, c] : yx[i].terms()) swapped.add(KappaPair{m.right, m.left}, c);
    EXPECT_EQ(xy[i], swapped);
  }
}
