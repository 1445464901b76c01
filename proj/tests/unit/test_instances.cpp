#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "chowliu/instances.hpp"
#include "chowliu/learner.hpp"
#include "chowliu/rng.hpp"

using namespace chowliu;

TEST(RandomTree, SmallSizes) {
  EXPECT_TRUE(random_tree(1, 3).empty());
  EXPECT_EQ(random_tree(2, 3), (std::vector<Edge>{{0, 1}}));
  for (std::uint64_t s = 0; s < 100; ++s) EXPECT_TRUE(is_spanning_tree(100, random_tree(100, s)));
}

TEST(RandomTree, LeafCountsMatchExactDistribution) {
  // Exact leaf-count law of the maximum spanning tree of K6 under i.i.d.
  // continuous weights, by enumeration of every acceptance sequence.
  const double exact[] = {0.24287934287934287, 0.56204906204906202, 0.18872238872238872, 0.0063492063492063492};
  const int draws = 20000;
  std::vector<int> hist(6, 0);
  for (int s = 0; s < draws; ++s) {
    std::vector<int> deg(6, 0);
    for (const auto& e : random_tree(6, derive_seed(55, {static_cast<std::uint64_t>(s)}))) {
      ++deg[e.u];
      ++deg[e.v];
    }
    int leaves = 0;
    for (int d : deg) leaves += d == 1;
    ++hist[leaves];
  }
  for (int k = 2; k <= 5; ++k) EXPECT_NEAR(hist[k] / double(draws), exact[k - 2], 0.012) << k << " leaves";
}

TEST(HardInstance, SeedDetermined) {
  const HardInstanceConfig cfg{30, 1000, 12, std::nullopt};
  const auto a = generate_hard(cfg);
  const auto b = generate_hard(cfg);
  EXPECT_EQ(a.model.edges(), b.model.edges());
  for (std::size_t k = 0; k < a.model.conditionals().size(); ++k) {
    EXPECT_EQ(a.model.conditionals()[k].q_pp, b.model.conditionals()[k].q_pp);
    EXPECT_EQ(a.model.conditionals()[k].q_pm, b.model.conditionals()[k].q_pm);
  }
  EXPECT_EQ(a.proportions, b.proportions);
  EXPECT_NEAR(a.proportions[0] + a.proportions[1] + a.proportions[2], 1.0, 1e-15);
  EXPECT_EQ(a.describe(cfg).size(), 3u);
}

TEST(HardInstance, AllStrongNearDeterministic) {
  const auto h = generate_hard({50, 100000000, 3, std::array<double, 3>{0, 1, 0}});
  for (const auto& c : h.model.conditionals()) {
    EXPECT_LT(std::min(c.q_pp, 1 - c.q_pp), 1e-4);
    EXPECT_LT(std::min(c.q_pm, 1 - c.q_pm), 1e-4);
    EXPECT_GT(std::abs(c.q_pp - c.q_pm), 0.999);
  }
  for (auto t : h.types) EXPECT_EQ(t, EdgeType::Strong);
}

TEST(HardInstance, TypeProportionsConcentrate) {
  const std::array<double, 3> p{0.5, 0.3, 0.2};
  std::array<int, 3> count{};
  int total = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto h = generate_hard({101, 1000, s, p});
    for (auto t : h.types) {
      ++count[static_cast<int>(t)];
      ++total;
    }
  }
  ASSERT_EQ(total, 10000);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(count[k] / double(total), p[k], 0.02);
}

TEST(HardInstance, WeakEdgesAtSmallMAreClamped) {
  const auto h = generate_hard({100, 10, 1, std::array<double, 3>{0, 0, 1}});
  EXPECT_GT(h.clamped, 0);
  for (const auto& c : h.model.conditionals()) {
    EXPECT_GE(c.q_pm, 0.0);
    EXPECT_LE(c.q_pm, 1.0);
  }
}

TEST(HardInstance, DirichletDrawsVary) {
  double lo = 1, hi = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto h = generate_hard({10, 1000, s, std::nullopt});
    lo = std::min(lo, h.proportions[1]);
    hi = std::max(hi, h.proportions[1]);
  }
  EXPECT_LT(lo, 0.05);
  EXPECT_GT(hi, 0.8);
}

TEST(HardInstance, Errors) {
  EXPECT_THROW(generate_hard({1, 100, 0, std::nullopt}), Error);
  EXPECT_THROW(generate_hard({10, 0, 0, std::nullopt}), Error);
  EXPECT_THROW(generate_hard({10, 100, 0, std::array<double, 3>{-1, 1, 1}}), Error);
}

TEST(RandomSymmetric, DegenerateLaws) {
  const TreeModel indep = from_symmetric(random_symmetric(6, 1, AlphaLaw::constant(0.0)));
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      for (double p : pair_marginal(indep, i, j).p) EXPECT_NEAR(p, 0.25, 1e-15);
    }
  }
  const TreeModel equal = from_symmetric(random_symmetric(6, 1, AlphaLaw::constant(1.0)));
  const auto s = sample(equal, 2, 200);
  for (std::size_t t = 0; t < s.samples(); ++t) {
    for (int i = 1; i < 6; ++i) ASSERT_EQ(s.at(t, i), s.at(t, 0));
  }
}

TEST(RandomSymmetric, BandedLawRecovered) {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto sym = random_symmetric(10, seed, AlphaLaw::banded(0.1, 0.9));
    const auto learned = chow_liu_symmetric(sample(from_symmetric(sym), seed, 100000));
    std::vector<Edge> a = learned.tree, b;
    for (const auto& e : sym.edges) b.push_back(normalized(e));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    hits += a == b;
  }
  EXPECT_GE(hits, 9);
}

TEST(RandomGeneral, RangeRespected) {
  const TreeModel m = random_general(15, 3, 0.2, 0.8);
  EXPECT_GE(m.root_prob(), 0.2);
  for (const auto& c : m.conditionals()) {
    EXPECT_GE(c.q_pp, 0.2);
    EXPECT_LE(c.q_pm, 0.8);
  }
  EXPECT_THROW(random_general(3, 1, 0.9, 0.1), Error);
}
