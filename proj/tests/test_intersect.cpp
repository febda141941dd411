#include <gtest/gtest.h>

#include <sstream>

#include "cohft/oracles.hpp"
#include "support/random_spec.hpp"

using namespace cohft;

TEST(Intersect, BaseValues) {
  EXPECT_EQ(psi_correlator(0, {0, 0, 0}), 1);
  EXPECT_EQ(psi_correlator(1, {1}), frac(1, 24));
  EXPECT_EQ(psi_correlator(0, {1, 0, 0, 0}), 1);
  EXPECT_EQ(psi_correlator(0, {0, 0, 0, 0}), 0);
  EXPECT_EQ(psi_correlator(0, {2, 0, 0, 0, 0}), 1);
  EXPECT_EQ(psi_correlator(0, {1, 1, 0, 0, 0}), 2);
  EXPECT_EQ(psi_correlator(1, {1, 1}), frac(1, 24));
  EXPECT_EQ(psi_correlator(2, {4}), frac(1, 1152));
  EXPECT_EQ(psi_correlator(2, {3, 2}), frac(29, 5760));
  EXPECT_THROW(psi_correlator(0, {0, 0}), UnstablePair);
}

TEST(Intersect, KappaIntegrals) {
  EXPECT_EQ(kappa_psi_correlator({1, {0}, {1}}), frac(1, 24));
  EXPECT_EQ(kappa_psi_correlator({0, {0, 0, 0, 0}, {1}}), 1);
  EXPECT_EQ(kappa_psi_correlator({0, {0, 0, 0, 0, 0}, {1, 1}}), 5);
  EXPECT_EQ(kappa_psi_correlator({0, {0, 0, 0, 0, 0}, {2}}), 1);
  EXPECT_EQ(kappa_psi_correlator({1, {0}, {2}}), 0);
}

TEST(Intersect, MultiKappaMatchesMultiPointIntegral) {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {1, 1}, {1, 2}, {2, 0}, {0, 5}}) {
    int dim = 3 * g - 3 + n;
    // kappa multi-indices k with sum = dim, leg psi all zero
    std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& k, int left) {
      if (left == 0 && !k.empty() && 3 * g - 3 + n + static_cast<int>(k.size()) <= 5) {
        Rational lhs = integrate(g, std::vector<int>(n, 0), kappa_multi_index(k));
        std::vector<int> psi(n, 0);
        for (int x : k) psi.push_back(x + 1);
        EXPECT_EQ(lhs, psi_correlator(g, psi)) << render_ints(k);
      }
      for (int x = k.empty() ? 1 : k.back(); x <= left; ++x) {
        k.push_back(x);
        rec(k, left - x);
        k.pop_back();
      }
    };
    std::vector<int> k;
    if (dim > 0) rec(k, dim);
  }
}

TEST(Intersect, StringAndDilatonOnEveryMemoizedKey) {
  IntersectionTable table;
  for (int g = 0; g <= 3; ++g)
    for (int n = 1; n <= 4; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      std::vector<int> a(n, 0);
      a[0] = 3 * g - 3 + n;
      if (a[0] >= 0) table.psi(g, a);
    }
  table.psi(3, {2, 2, 2, 2, 2, 2});
  auto report = oracle::check_dvv(table);
  EXPECT_TRUE(report.ok) << report.to_string();
  EXPECT_GT(report.checked, 20);
}

TEST(Intersect, MemoRoundTrip) {
  IntersectionTable a;
  a.psi(2, {2, 2, 1});
  std::istringstream in(a.export_text());
  IntersectionTable b;
  b.import_text(in);
  EXPECT_EQ(a.export_text(), b.export_text());
}

TEST(Intersect, RankOneTheoryCorrelator) {
  Rational a = frac(5, 3);
  FrobeniusAlgebra alg = diagonal_algebra({Rational(1)});
  std::vector<Matrix> r(2, Matrix(1, 1));
  r[1](0, 0) = a;
  EndSeries R = series_exp(r, 1);
  SemisimpleData ss{{Rational(1)}, Matrix::identity(1), Matrix::identity(1)};
  CohFTSpec spec(alg, ss, coherent_phi(alg, R), R, 1, true);
  // a/24 from kappa_1, -a/24 from psi_1, a/2 from the loop graph
  EXPECT_EQ(correlator_of_theory(spec, 1, {Vec{Rational(1)}}, {0}), a / 2);
}

TEST(Intersect, TrivialTheoryGivesPsiCorrelators) {
  FrobeniusAlgebra alg = diagonal_algebra({Rational(1)});
  SemisimpleData ss{{Rational(1)}, Matrix::identity(1), Matrix::identity(1)};
  CohFTSpec spec(alg, ss, {zero_vec(1), zero_vec(1), zero_vec(1)}, EndSeries::identity(1, 3), 3, true);
  Vec one{Rational(1)};
  EXPECT_EQ(correlator_of_theory(spec, 1, {one}, {1}), frac(1, 24));
  EXPECT_EQ(correlator_of_theory(spec, 1, {one, one}, {1, 1}), psi_correlator(1, {1, 1}));
  EXPECT_EQ(correlator_of_theory(spec, 0, {one, one, one, one, one}, {2, 0, 0, 0, 0}), 1);
  EXPECT_EQ(correlator_of_theory(spec, 2, {one}, {3}), 0);
}

TEST(Intersect, TheoryCorrelatorIsSymmetric) {
  cohft::testing::Rng rng(43);
  CohFTSpec spec = cohft::testing::random_coherent_spec(rng, 2, 2);
  Vec u = unit_vec(2, 0), v = unit_vec(2, 1);
  EXPECT_EQ(correlator_of_theory(spec, 1, {u, v}, {1, 0}), correlator_of_theory(spec, 1, {v, u}, {0, 1}));
  EXPECT_EQ(correlator_of_theory(spec, 0, {u, v, v}, {0, 0, 0}), tqft_value(spec, 0, {u, v, v}));
}
