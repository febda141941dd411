#include <gtest/gtest.h>

#include "cohft/strata.hpp"

using namespace cohft;

TEST(Strata, SpecialTypesOfGenusOneTwoPoints) {
  std::vector<SpecialType> types = enumerate_special_types(1, 2);
  std::vector<SpecialType> expected{{0, 1, 2, 0}, {0, 2, 1, 0}, {1, 2, 0, 0}, {1, 2, 0, 1}};
  EXPECT_EQ(types, expected);
}

TEST(Strata, OrderIsStrictAndHasTheSmoothTypeOnTop) {
  SpecialOrder o = special_order(1, 2);
  auto idx = [&](SpecialType t) { return std::find(o.types.begin(), o.types.end(), t) - o.types.begin(); };
  SpecialType smooth{1, 2, 0, 0}, loop{1, 2, 0, 1}, tail{0, 2, 1, 0}, split{0, 1, 2, 0};
  EXPECT_EQ(o.maximum, idx(smooth));
  // equal codimension yet comparable: the loop type degenerates to the tail type
  EXPECT_EQ(loop.codimension(), tail.codimension());
  EXPECT_TRUE(o.greater[idx(loop)][idx(tail)]);
  EXPECT_FALSE(o.greater[idx(tail)][idx(loop)]);
  EXPECT_TRUE(o.greater[idx(tail)][idx(split)] || o.greater[idx(loop)][idx(split)]);
  for (std::size_t a = 0; a < o.types.size(); ++a) EXPECT_FALSE(o.greater[a][a]);
}

TEST(Strata, CodimensionMatchesMinimalEdgeCount) {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 1}, {0, 5}}) {
    const GraphCatalog& cat = graph_catalog(g, n);
    for (const SpecialType& t : enumerate_special_types(g, n)) {
      int best = 1 << 20;
      for (const StableGraph& gr : cat.graphs)
        if (special_type(gr) == t) best = std::min(best, gr.num_edges());
      EXPECT_EQ(best, t.codimension()) << t.to_string();
    }
  }
}
