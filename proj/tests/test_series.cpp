#include <gtest/gtest.h>

#include "cohft/series.hpp"
#include "support/random_algebra.hpp"

using namespace cohft;
using cohft::testing::Rng;

namespace {

EndSeries random_series(Rng& rng, std::size_t d, int order, bool identity_start) {
  std::vector<Matrix> c;
  for (int k = 0; k <= order; ++k) {
    Matrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = cohft::testing::small_rational(rng);
    c.push_back(k == 0 && identity_start ? Matrix::identity(d) : m);
  }
  return EndSeries(c);
}

}  // namespace

TEST(Series, InverseIsTwoSided) {
  Rng rng(1);
  for (int t = 0; t < 10; ++t) {
    EndSeries r = random_series(rng, 3, 5, true);
    EndSeries ri = invert(r);
    EXPECT_EQ(multiply(r, ri), EndSeries::identity(3, 5));
    EXPECT_EQ(multiply(ri, r), EndSeries::identity(3, 5));
  }
  std::vector<Matrix> singular{Matrix(2, 2), Matrix::identity(2)};
  EXPECT_THROW(invert(EndSeries(singular)), ConstantTermSingular);
  EXPECT_THROW(multiply(EndSeries::identity(2, 2), EndSeries::identity(2, 3)), OrderMismatch);
  EXPECT_THROW(multiply(EndSeries::identity(2, 2), EndSeries::identity(3, 2)), DimensionMismatch);
}

TEST(Series, RandomSymplecticSeriesPassAndPerturbationsFail) {
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    auto ra = cohft::testing::random_semisimple(rng, 1 + t % 3);
    EndSeries r = cohft::testing::random_symplectic(rng, ra.basis, 4);
    EXPECT_TRUE(check_symplectic(r, ra.algebra.eta()));
    std::vector<Matrix> c = r.coeffs;
    c[2](0, 0) += 1;
    EXPECT_FALSE(check_symplectic(EndSeries(c), ra.algebra.eta()));
  }
}

// Independent check of the kernel: multiply back by (z + w) and compare with the numerator.
TEST(Series, EdgeKernelTimesZPlusWIsNumerator) {
  Rng rng(3);
  for (int t = 0; t < 8; ++t) {
    std::size_t d = 1 + t % 3;
    auto ra = cohft::testing::random_semisimple(rng, d);
    int D = 5;
    EndSeries r = cohft::testing::random_symplectic(rng, ra.basis, D);
    BivectorSeries k = edge_kernel(r, ra.algebra.eta());
    ASSERT_EQ(k.order, D - 1);
    EndSeries ri = invert(r);
    Matrix eta_inv = inverse(ra.algebra.eta());
    for (int a = 0; a <= D; ++a)
      for (int b = 0; a + b <= D; ++b) {
        Matrix numer = Rational(-1) * (ri[a] * eta_inv * ri[b].transpose());
        if (a == 0 && b == 0) numer += eta_inv;
        Matrix back(d, d);
        if (a >= 1) back += k.at(a - 1, b);
        if (b >= 1) back += k.at(a, b - 1);
        EXPECT_EQ(back, numer) << a << "," << b;
      }
  }
}

TEST(Series, EdgeKernelRejectsNonSymplectic) {
  Matrix eta = Matrix::identity(2);
  std::vector<Matrix> c{Matrix::identity(2), Matrix::from_rows({{0, 1}, {0, 0}})};
  EXPECT_THROW(edge_kernel(EndSeries(c), eta), NotDivisible);
}

TEST(Series, EdgeKernelRankOneClosedForm) {
  // R = exp(a z): kernel = (1 - exp(-a(z+w)))/(z+w)
  Rational a = frac(2, 3);
  int D = 5;
  std::vector<Matrix> r(D + 1, Matrix(1, 1));
  r[1](0, 0) = a;
  BivectorSeries k = edge_kernel(series_exp(r, D), Matrix::identity(1));
  for (int i = 0; i < D; ++i)
    for (int j = 0; i + j < D; ++j) {
      int n = i + j;
      Rational binom = factorial(n) / (factorial(i) * factorial(j));
      Rational expected = -rational_pow(-a, n + 1) / factorial(n + 1) * binom;
      EXPECT_EQ(k.at(i, j)(0, 0), expected);
    }
}

TEST(Series, TranslationVector) {
  std::vector<Matrix> r(4, Matrix(1, 1));
  r[1](0, 0) = 1;
  EndSeries R = series_exp(r, 3);
  VecSeries t = translation_vector(R, {1});
  EXPECT_EQ(t.coeffs[0][0], 0);
  EXPECT_EQ(t.coeffs[1][0], 0);
  EXPECT_EQ(t.coeffs[2][0], 1);                // -(-1)
  EXPECT_EQ(t.coeffs[3][0], frac(-1, 2));  // -(1/2)
}
