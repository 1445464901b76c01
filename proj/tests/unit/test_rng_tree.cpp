#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "chowliu/rng.hpp"
#include "chowliu/tree.hpp"

using namespace chowliu;

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a.next(), b.next());
}

TEST(Rng, StdEngineFirstOutput) {
  // mt19937_64 default seed 5489 yields this value per the C++ standard.
  Rng r(5489);
  EXPECT_EQ(r.next(), 14514284786278117030ULL);
}

TEST(Rng, UniformRanges) {
  Rng r(7);
  double sum = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const double u = r.uniform();
    const double v = r.uniform_open();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(Rng, NormalAndExponentialMoments) {
  Rng r(11);
  const int n = 200000;
  double s = 0, s2 = 0, e = 0;
  for (int k = 0; k < n; ++k) {
    const double z = r.normal();
    s += z;
    s2 += z * z;
    e += r.exponential();
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
  EXPECT_NEAR(e / n, 1.0, 0.01);
}

TEST(Rng, BelowIsBounded) {
  Rng r(3);
  std::vector<int> hist(5, 0);
  for (int k = 0; k < 50000; ++k) {
    const auto x = r.below(5);
    ASSERT_LT(x, 5u);
    ++hist[x];
  }
  for (int h : hist) EXPECT_NEAR(h / 50000.0, 0.2, 0.01);
}

TEST(Rng, DerivedSeedsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 20; ++a) {
    for (std::uint64_t b = 0; b < 20; ++b) seen.insert(derive_seed(1, {a, b}));
  }
  EXPECT_EQ(seen.size(), 400u);
  EXPECT_NE(derive_seed(1, {2}), derive_seed(2, {1}));
  EXPECT_EQ(derive_seed(9, {1, 2, 3}), derive_seed(9, {1, 2, 3}));
}

TEST(UnionFind, JoinsAndCounts) {
  UnionFind uf(5);
  EXPECT_EQ(uf.components(), 5);
  EXPECT_TRUE(uf.unite(0, 1));
  EXPECT_TRUE(uf.unite(3, 4));
  EXPECT_FALSE(uf.unite(1, 0));
  EXPECT_TRUE(uf.connected(0, 1));
  EXPECT_FALSE(uf.connected(1, 3));
  EXPECT_EQ(uf.components(), 3);
}

TEST(Tree, SpanningTreeCheck) {
  const std::vector<Edge> path{{0, 1}, {1, 2}, {2, 3}};
  EXPECT_TRUE(is_spanning_tree(4, path));
  const std::vector<Edge> cycle{{0, 1}, {1, 2}, {2, 0}};
  EXPECT_FALSE(is_spanning_tree(4, cycle));
  const std::vector<Edge> shortlist{{0, 1}};
  EXPECT_FALSE(is_spanning_tree(3, shortlist));
  EXPECT_TRUE(is_spanning_tree(1, {}));
}

TEST(Tree, OrientAwayFromRoot) {
  const std::vector<Edge> edges{{2, 3}, {0, 1}, {1, 2}};
  const auto d = orient_tree(4, edges, 0);
  ASSERT_EQ(d.size(), 3u);
  std::set<int> reached{0};
  for (const auto& e : d) {
    EXPECT_TRUE(reached.count(e.parent));
    reached.insert(e.child);
  }
  EXPECT_EQ(reached.size(), 4u);
}

TEST(Tree, PathAndConnectivity) {
  const std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}, {3, 4}};
  EXPECT_EQ(tree_path(5, star, 1, 4), (std::vector<int>{1, 0, 3, 4}));
  EXPECT_EQ(tree_path(5, star, 2, 2), (std::vector<int>{2}));
  const int a[] = {1, 0, 2};
  const int b[] = {1, 2};
  EXPECT_TRUE(is_tree_connected(5, star, a));
  EXPECT_FALSE(is_tree_connected(5, star, b));
}
