#include <gtest/gtest.h>

#include <map>
#include <random>

#include "dahp/analysis.hpp"
#include "dahp/driver.hpp"
#include "dahp/memetic.hpp"
#include "dahp/testkit.hpp"
#include "fixtures.hpp"

namespace dahp {
namespace {

using Blocks = std::vector<BlockId>;

Individual withCuts(std::vector<std::pair<NetId, std::uint32_t>> cuts) {
  Individual i;
  i.cutMultiset = std::move(cuts);
  return i;
}

PartitionerConfig configFor(BlockId k, std::uint64_t seed = 1) {
  PartitionerConfig config;
  config.k = k;
  config.seed = seed;
  return config;
}

TEST(PopulationSize, Formula) {
  EXPECT_EQ(populationSize(3600, 100, 0.15), 5u);
  EXPECT_EQ(populationSize(10, 10, 0.15), 3u);
  EXPECT_EQ(populationSize(10, 50, 0.15), 3u);
  EXPECT_EQ(populationSize(1e6, 1, 0.15), 50u);
  EXPECT_EQ(populationSize(200, 1, 0.15), 30u);
}

TEST(Distance, MultisetSemantics) {
  EXPECT_EQ(distance(withCuts({{2, 1}, {3, 1}}), withCuts({{1, 1}, {3, 1}})), 2u);
  EXPECT_EQ(distance(withCuts({{2, 1}, {3, 1}}), withCuts({{2, 1}, {3, 1}})), 0u);
  EXPECT_EQ(distance(withCuts({{5, 2}}), withCuts({{5, 1}})), 1u);
  EXPECT_EQ(distance(withCuts({}), withCuts({{0, 3}})), 3u);
}

TEST(Distance, MatchesExpandedReference) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    std::map<NetId, std::uint32_t> a, b;
    for (int i = 0; i < 10; ++i) {
      a[std::uniform_int_distribution<NetId>(0, 15)(rng)] = std::uniform_int_distribution<std::uint32_t>(1, 4)(rng);
      b[std::uniform_int_distribution<NetId>(0, 15)(rng)] = std::uniform_int_distribution<std::uint32_t>(1, 4)(rng);
    }
    // Expand each multiset into a sorted list and count the symmetric difference.
    std::multiset<NetId> ea, eb;
    for (auto [e, m] : a) for (std::uint32_t i = 0; i < m; ++i) ea.insert(e);
    for (auto [e, m] : b) for (std::uint32_t i = 0; i < m; ++i) eb.insert(e);
    std::vector<NetId> diff;
    std::set_symmetric_difference(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(diff));
    EXPECT_EQ(distance(withCuts({a.begin(), a.end()}), withCuts({b.begin(), b.end()})), diff.size());
  }
}

TEST(Individual, CutMultisetMatchesPartition) {
  const auto hg = fixtures::diamond();
  const auto i = makeIndividual(hg, {0, 0, 1, 1}, 2);
  EXPECT_DOUBLE_EQ(i.fitness, 2.0);
  EXPECT_EQ(i.cutMultiset, (std::vector<std::pair<NetId, std::uint32_t>>{{1, 1}, {2, 1}}));
}

TEST(Recombine, DiamondParents) {
  const auto hg = fixtures::diamond();
  const auto a = makeIndividual(hg, {0, 0, 1, 1}, 2);
  const auto b = makeIndividual(hg, {0, 1, 0, 1}, 2);
  const auto child = recombine(hg, a, b, configFor(2));
  EXPECT_DOUBLE_EQ(child.fitness, 2.0);
  const auto same = recombine(hg, a, a, configFor(2));
  EXPECT_DOUBLE_EQ(same.fitness, 2.0);
}

TEST(Recombine, IncompatibleParents) {
  const auto hg = fixtures::path(6);
  const auto a = makeIndividual(hg, {0, 0, 0, 1, 1, 1}, 2);
  const auto b = makeIndividual(hg, {0, 0, 1, 1, 2, 2}, 3);
  try {
    recombine(hg, a, b, configFor(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IncompatibleParents);
  }
  const auto other = fixtures::path(5);
  const auto c = makeIndividual(other, {0, 0, 0, 1, 1}, 2);
  EXPECT_THROW(recombine(hg, a, c, configFor(2)), Error);
}

TEST(Recombine, Dominance) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 60; ++trial) {
    const auto hg = testkit::randomDah(testkit::randomSpec(rng, 120, false));
    const BlockId k = std::min<BlockId>(static_cast<BlockId>(hg.numVertices()), 2 + trial % 4);
    const auto a = makeIndividual(hg, partitionKway(hg, configFor(k, 2 * trial)), k);
    const auto b = makeIndividual(hg, topoKWay(hg, configFor(k, 2 * trial + 1)), k);
    const auto child = recombine(hg, a, b, configFor(k, trial));
    EXPECT_LE(child.fitness, std::min(a.fitness, b.fitness) + 1e-9);
    EXPECT_TRUE(verifyPartition(hg, child.assignment, k, 0.03).acyclic);
    EXPECT_DOUBLE_EQ(child.fitness, connectivityMetric(hg, child.assignment, k));
  }
}

TEST(Mutation, VcycleNeverWorsens) {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 60; ++trial) {
    const auto hg = testkit::randomDah(testkit::randomSpec(rng, 120, false));
    const BlockId k = std::min<BlockId>(static_cast<BlockId>(hg.numVertices()), 2 + trial % 4);
    const auto start = makeIndividual(hg, topoKWay(hg, configFor(k, trial)), k);
    const auto out = mutateVcycle(hg, start, configFor(k, trial));
    EXPECT_LE(out.fitness, start.fitness + 1e-9);
    EXPECT_TRUE(verifyPartition(hg, out.assignment, k, 0.03).acyclic);
  }
}

TEST(Mutation, VcycleOnFixtures) {
  // Already optimal: unchanged.
  const auto hg = fixtures::path(12);
  const auto valid = makeIndividual(hg, {0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1}, 2);
  EXPECT_DOUBLE_EQ(mutateVcycle(hg, valid, configFor(2)).fitness, 1.0);

  // A 3-block split with a heavy cut net the V-cycle can avoid.
  std::vector<NetSpec> nets;
  for (VertexId v = 0; v < 8; ++v) nets.push_back({{v + 1}, {v}, v == 2 ? 4.0 : 1.0});
  const auto weighted = DirectedHypergraph::build(std::vector<Weight>(9, 1.0), nets);
  PartitionerConfig loose = configFor(3);
  loose.epsilon = 0.34;
  const auto slack = makeIndividual(weighted, {0, 0, 0, 1, 1, 1, 2, 2, 2}, 3);
  const auto improved = mutateVcycle(weighted, slack, loose);
  EXPECT_LT(improved.fitness, slack.fitness);
}

TEST(Mutation, NewAndRecombineValidAndDeterministic) {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 20; ++trial) {
    const auto hg = testkit::randomDah(testkit::randomSpec(rng, 100, false));
    const BlockId k = std::min<BlockId>(static_cast<BlockId>(hg.numVertices()), 2 + trial % 3);
    const auto start = makeIndividual(hg, topoKWay(hg, configFor(k, trial)), k);
    const auto out = mutateNewAndRecombine(hg, start, configFor(k, trial), 77);
    const auto report = verifyPartition(hg, out.assignment, k, 0.03);
    EXPECT_TRUE(report.acyclic);
    EXPECT_TRUE(report.blocksNonempty);
    EXPECT_TRUE(report.balanced);
    EXPECT_EQ(mutateNewAndRecombine(hg, start, configFor(k, trial), 77).assignment, out.assignment);
  }
}

TEST(Evolve, TraceMonotoneAndDeterministic) {
  testkit::RandomDahSpec spec;
  spec.layers = 8;
  spec.width = 10;
  spec.seed = 3;
  const auto hg = testkit::randomDah(spec);
  MemeticConfig memetic;
  memetic.maxGenerations = 15;
  std::vector<std::string> lines;
  memetic.log = [&](const std::string& line) { lines.push_back(line); };
  const auto result = evolve(hg, configFor(4, 9), memetic);
  EXPECT_EQ(result.generations, 15u);
  EXPECT_EQ(lines.size(), 15u);
  ASSERT_EQ(result.bestTrace.size(), 15u);
  for (std::size_t i = 1; i < result.bestTrace.size(); ++i) {
    EXPECT_LE(result.bestTrace[i], result.bestTrace[i - 1]);
  }
  EXPECT_DOUBLE_EQ(result.best.fitness, result.bestTrace.back());
  EXPECT_TRUE(verifyPartition(hg, result.best.assignment, 4, 0.03).acyclic);

  memetic.log = {};
  EXPECT_EQ(evolve(hg, configFor(4, 9), memetic).best.assignment, result.best.assignment);
}

TEST(Evolve, BudgetErrors) {
  const auto hg = fixtures::path(40);
  MemeticConfig none;
  EXPECT_THROW(evolve(hg, configFor(2), none), Error);
  MemeticConfig tiny;
  tiny.timeLimit = 1e-9;
  try {
    evolve(hg, configFor(2), tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TimeBudgetTooSmall);
  }
}

TEST(Evolve, TinyInstancesReachOptimum) {
  std::mt19937_64 rng(65);
  int optimal = 0, total = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto hg = testkit::randomDah(testkit::randomSpec(rng, 12, false));
    if (hg.numVertices() < 2) continue;
    const auto oracle = testkit::bruteForceOptimum(hg, 2, 0.03);
    if (!oracle) continue;
    MemeticConfig memetic;
    memetic.maxGenerations = 50;
    const auto result = evolve(hg, configFor(2, trial), memetic);
    EXPECT_GE(result.best.fitness, oracle->km1 - 1e-9);
    ++total;
    if (result.best.fitness <= oracle->km1 + 1e-9) ++optimal;
  }
  EXPECT_GE(optimal * 10, total * 7);
}

}  // namespace
}  // namespace dahp
