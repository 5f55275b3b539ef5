#include <gtest/gtest.h>

#include <random>

#include "dahp/analysis.hpp"
#include "dahp/driver.hpp"
#include "dahp/modes.hpp"
#include "dahp/testkit.hpp"
#include "fixtures.hpp"

namespace dahp {
namespace {

using Blocks = std::vector<BlockId>;

PartitionerConfig configFor(BlockId k, std::uint64_t seed = 1) {
  PartitionerConfig config;
  config.k = k;
  config.seed = seed;
  return config;
}

TEST(Bipartition, DiamondReachesOptimum) {
  const auto hg = fixtures::diamond();
  const auto a = bipartition(hg, globalBalance(hg, 2, 0.03), configFor(2), 1);
  EXPECT_DOUBLE_EQ(connectivityMetric(hg, a, 2), 2.0);
  EXPECT_TRUE(verifyPartition(hg, a, 2, 0.03).acyclic);
}

TEST(Bipartition, ChainCutsOnce) {
  const auto hg = fixtures::path(8);
  const auto a = bipartition(hg, globalBalance(hg, 2, 0.03), configFor(2), 1);
  EXPECT_DOUBLE_EQ(connectivityMetric(hg, a, 2), 1.0);
}

TEST(InducedSubhypergraph, DiamondBlock) {
  const auto hg = fixtures::diamond();
  const auto sub = inducedSubhypergraph(hg, {0, 0, 0, 1}, 0);
  EXPECT_EQ(sub.originalIds, (std::vector<VertexId>{0, 1, 2}));
  ASSERT_EQ(sub.hg.numNets(), 3u);
  EXPECT_TRUE(sub.hg.netIsDirected(0));
  EXPECT_TRUE(sub.hg.netIsDirected(1));
  EXPECT_FALSE(sub.hg.netIsDirected(2));
  EXPECT_EQ(sub.hg.netSize(2), 2u);
  EXPECT_TRUE(isAcyclic(sub.hg));

  const auto single = inducedSubhypergraph(hg, {0, 0, 0, 1}, 1);
  EXPECT_EQ(single.hg.numVertices(), 1u);
  EXPECT_EQ(single.hg.numNets(), 0u);

  const auto whole = inducedSubhypergraph(hg, {0, 0, 0, 0}, 0);
  EXPECT_EQ(testkit::snapshot(whole.hg), testkit::snapshot(hg));
}

TEST(BisectionBalance, PowersOfTwoMatchGlobalLimit) {
  // Splitting weight 64 into 2 + 2 of final limit 16.48: each side may hold
  // 32 * (1 + eps') with (1 + eps')^2 = 1.03.
  const auto b = bisectionBalance(64, 2, 2, 1.03 * 16);
  EXPECT_NEAR(b.maxWeight[0], 32 * std::sqrt(1.03), 1e-9);
  EXPECT_NEAR(b.maxWeight[1], 32 * std::sqrt(1.03), 1e-9);
  EXPECT_EQ(b.minSize[0], 2u);

  const auto leaf = bisectionBalance(10, 1, 1, 1.03 * 5);
  EXPECT_NEAR(leaf.maxWeight[0], 1.03 * 5, 1e-9);
}

TEST(PartitionKway, ExamplesAndErrors) {
  const auto diamond = fixtures::diamond();
  const auto a = partitionKway(diamond, configFor(2));
  EXPECT_DOUBLE_EQ(connectivityMetric(diamond, a, 2), 2.0);
  EXPECT_EQ(partitionKway(diamond, configFor(2)), a);

  const auto chain = fixtures::path(8);
  const auto four = partitionKway(chain, configFor(4));
  EXPECT_DOUBLE_EQ(connectivityMetric(chain, four, 4), 3.0);
  for (VertexId v = 0; v < 8; v += 2) EXPECT_EQ(four[v], four[v + 1]);
  const auto optimum = testkit::bruteForceOptimum(chain, 4, 0.03);
  ASSERT_TRUE(optimum.has_value());
  EXPECT_DOUBLE_EQ(optimum->km1, 3.0);

  const auto one = partitionKway(diamond, configFor(1));
  EXPECT_EQ(one, Blocks(4, 0));

  const auto lonely = DirectedHypergraph::build({1}, {});
  try {
    partitionKway(lonely, configFor(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KTooLargeForInstance);
  }
}

TEST(Baselines, ChainOptimal) {
  const auto chain = fixtures::path(8);
  const auto kway = topoKWay(chain, configFor(4));
  EXPECT_DOUBLE_EQ(connectivityMetric(chain, kway, 4), 3.0);
  const auto rb = topoRB(chain, configFor(4));
  EXPECT_DOUBLE_EQ(connectivityMetric(chain, rb, 4), 3.0);
}

TEST(VCycle, NeverWorsens) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    const auto hg = testkit::randomDah(testkit::randomSpec(rng, 150, trial % 2 == 0));
    const BlockId k = std::min<BlockId>(static_cast<BlockId>(hg.numVertices()), 2 + trial % 4);
    const auto config = configFor(k, trial);
    const auto start = topoKWay(hg, config);
    const auto balance = globalBalance(hg, k, 0.03);
    const auto improved = vcycle(hg, start, config);
    const Partition before(hg, k, start);
    const Partition after(hg, k, improved);
    const Weight ob = overload(before, balance), oa = overload(after, balance);
    EXPECT_TRUE(oa < ob - 1e-9 || (oa <= ob + 1e-9 && after.km1() <= before.km1() + 1e-9));
    EXPECT_TRUE(verifyPartition(hg, improved, k, 0.03).acyclic);
  }
}

TEST(RecursiveBisection, DenseIdsAndWeights) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    const auto hg = testkit::randomDah(testkit::randomSpec(rng, 150, trial % 2 == 0));
    const BlockId k = std::min<BlockId>(static_cast<BlockId>(hg.numVertices()), 2 + trial % 7);
    const auto a = partitionKway(hg, configFor(k, trial));
    const Partition p(hg, k, a);
    Weight total = 0;
    for (BlockId b = 0; b < k; ++b) {
      EXPECT_GT(p.blockSize(b), 0u);
      total += p.blockWeight(b);
    }
    EXPECT_NEAR(total, hg.totalWeight(), 1e-9);
    const auto report = verifyPartition(hg, a, k, 0.03);
    EXPECT_TRUE(report.acyclic);
    if (trial % 2 == 1) {
      EXPECT_TRUE(report.balanced) << "unit weights, trial " << trial;
    }
  }
}

TEST(Modes, AllModesValid) {
  std::mt19937_64 rng(53);
  MemeticConfig memetic;
  memetic.maxGenerations = 4;
  for (int trial = 0; trial < 10; ++trial) {
    const auto hg = testkit::randomDah(testkit::randomSpec(rng, 80, trial % 2 == 0));
    const BlockId k = std::min<BlockId>(static_cast<BlockId>(hg.numVertices()), 2 + trial % 3);
    for (Mode mode : {Mode::Multilevel, Mode::Memetic, Mode::TopoRB, Mode::TopoKWay}) {
      const auto outcome = runMode(hg, mode, configFor(k, trial), memetic);
      EXPECT_TRUE(outcome.report.valid()) << toString(mode);
    }
  }
  EXPECT_EQ(parseMode("toporb"), Mode::TopoRB);
  EXPECT_FALSE(parseMode("nope").has_value());
}

}  // namespace
}  // namespace dahp
