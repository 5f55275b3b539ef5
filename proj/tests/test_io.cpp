#include <gtest/gtest.h>

#include <random>

#include "dahp/analysis.hpp"
#include "dahp/io.hpp"
#include "dahp/testkit.hpp"
#include "fixtures.hpp"

namespace dahp {
namespace {

std::size_t malformedLine(std::string_view text) {
  try {
    io::parseDirectedHypergraph(text);
  } catch (const MalformedInput& e) {
    return e.line();
  }
  ADD_FAILURE() << "no MalformedInput for:\n" << text;
  return 0;
}

TEST(ParseHypergraph, UnitWeights) {
  const auto hg = io::parseDirectedHypergraph("2 3\n1 2 1\n1 3 2\n");
  EXPECT_EQ(testkit::snapshot(hg), testkit::snapshot(fixtures::chain3()));
}

TEST(ParseHypergraph, NetWeightsAndComments) {
  const auto hg = io::parseDirectedHypergraph("% diamond\n3 4 1\n1 1 2 1\n1 1 3 1\n% last net\n2 1 4 2 3\n");
  ASSERT_EQ(hg.numNets(), 3u);
  EXPECT_DOUBLE_EQ(hg.netWeight(2), 2.0);
  EXPECT_EQ(hg.headCount(2), 1u);
  EXPECT_EQ(hg.roleIn(2, 3), PinRole::Head);
  EXPECT_EQ(hg.roleIn(2, 1), PinRole::Tail);
  EXPECT_EQ(hg.roleIn(2, 2), PinRole::Tail);
}

TEST(ParseHypergraph, VertexWeights) {
  const auto hg = io::parseDirectedHypergraph("1 2 10\n1 2 1\n3\n4\n");
  EXPECT_DOUBLE_EQ(hg.vertexWeight(0), 3.0);
  EXPECT_DOUBLE_EQ(hg.vertexWeight(1), 4.0);
}

TEST(ParseHypergraph, MalformedReportsLine) {
  EXPECT_EQ(malformedLine("1 3\n0 2 3\n"), 2u);
  EXPECT_EQ(malformedLine(""), 1u);
  EXPECT_EQ(malformedLine("1 3 7\n1 2 3\n"), 1u);
  EXPECT_EQ(malformedLine("2 3\n1 2 1\n"), 3u);
  EXPECT_EQ(malformedLine("1 3\n1 2 9\n"), 2u);
  EXPECT_EQ(malformedLine("1 3\n1 2\n"), 2u);
  EXPECT_EQ(malformedLine("1 3\n1 2 2\n"), 2u);
  EXPECT_EQ(malformedLine("1 2\n1 2 1\nextra\n"), 3u);
}

TEST(ParseHypergraph, WriteRoundTrip) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto hg = testkit::randomDah(testkit::randomSpec(rng, 60, trial % 2 == 0));
    const auto text = io::writeDirectedHypergraph(hg);
    const auto back = io::parseDirectedHypergraph(text);
    EXPECT_EQ(testkit::snapshot(back), testkit::snapshot(hg));
    EXPECT_EQ(io::writeDirectedHypergraph(back), text);
  }
}

TEST(DagEdgeList, ParseAndDrop) {
  const auto chain = io::parseDagEdgeList("3 2\n1 2\n2 3\n");
  EXPECT_EQ(chain.n, 3u);
  EXPECT_EQ(chain.edges, (std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {1, 2}}));

  const auto loop = io::parseDagEdgeList("2 1\n1 1\n");
  EXPECT_TRUE(loop.edges.empty());
  EXPECT_EQ(loop.droppedSelfLoops, 1u);

  EXPECT_THROW(io::parseDagEdgeList(""), MalformedInput);
  EXPECT_THROW(io::parseDagEdgeList("1 2\n"), MalformedInput);
}

TEST(BreakCycles, Examples) {
  using Edges = std::vector<std::pair<VertexId, VertexId>>;
  io::DagEdgeList ring{3, {{0, 1}, {1, 2}, {2, 0}}};
  const auto broken = io::breakCycles(ring);
  EXPECT_EQ(broken.dag.edges, (Edges{{0, 1}, {1, 2}}));
  EXPECT_EQ(broken.skipped, 1u);

  io::DagEdgeList chain{3, {{0, 1}, {1, 2}}};
  EXPECT_EQ(io::breakCycles(chain).dag.edges, chain.edges);

  const auto parsed = io::parseDagEdgeList("2 3\n1 2\n2 1\n1 2\n");
  EXPECT_EQ(parsed.droppedDuplicates, 1u);
  const auto pair = io::breakCycles(parsed);
  EXPECT_EQ(pair.dag.edges, (Edges{{0, 1}}));
  EXPECT_EQ(pair.skipped, 1u);
}

// Reference: keep an edge iff the head cannot already reach the tail.
std::vector<std::pair<VertexId, VertexId>> greedyReference(const io::DagEdgeList& d) {
  std::vector<std::vector<VertexId>> out(d.n);
  std::vector<std::pair<VertexId, VertexId>> kept;
  for (const auto& [u, v] : d.edges) {
    std::vector<char> seen(d.n, 0);
    std::vector<VertexId> stack{v};
    seen[v] = 1;
    bool reaches = false;
    while (!stack.empty() && !reaches) {
      const VertexId x = stack.back();
      stack.pop_back();
      if (x == u) reaches = true;
      for (VertexId y : out[x]) {
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    if (!reaches) {
      out[u].push_back(v);
      kept.emplace_back(u, v);
    }
  }
  return kept;
}

TEST(BreakCycles, MatchesGreedyReference) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    io::DagEdgeList d;
    d.n = std::uniform_int_distribution<std::size_t>(2, 40)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(0, 3 * d.n)(rng);
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(d.n - 1));
    std::set<std::pair<VertexId, VertexId>> seen;
    for (std::size_t i = 0; i < m; ++i) {
      const VertexId u = pick(rng), v = pick(rng);
      if (u != v && seen.insert({u, v}).second) d.edges.emplace_back(u, v);
    }
    const auto result = io::breakCycles(d);
    const auto expected = greedyReference(d);
    EXPECT_EQ(result.dag.edges, expected);
    EXPECT_EQ(result.skipped, d.edges.size() - expected.size());
    EXPECT_TRUE(isAcyclic(io::dagToRowNetDah(result.dag)));
  }
}

TEST(RowNet, Conversion) {
  const auto chain = io::dagToRowNetDah({3, {{0, 1}, {1, 2}}});
  ASSERT_EQ(chain.numNets(), 2u);
  EXPECT_EQ(chain.roleIn(0, 0), PinRole::Head);
  EXPECT_EQ(chain.roleIn(0, 1), PinRole::Tail);
  EXPECT_EQ(chain.roleIn(1, 1), PinRole::Head);
  EXPECT_EQ(chain.roleIn(1, 2), PinRole::Tail);

  const auto star = io::dagToRowNetDah({5, {{0, 1}, {0, 2}, {0, 3}}});
  ASSERT_EQ(star.numNets(), 1u);
  EXPECT_EQ(star.headCount(0), 1u);
  EXPECT_EQ(star.tailCount(0), 3u);
  EXPECT_TRUE(star.incidentNets(4).empty());

  EXPECT_THROW(io::dagToRowNetDah({2, {{0, 1}, {1, 0}}}), Error);
}

TEST(PartitionFile, RoundTrip) {
  EXPECT_EQ(io::writePartitionFile({0, 0, 1, 1}), "0\n0\n1\n1\n");
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<BlockId> a(std::uniform_int_distribution<std::size_t>(1, 100)(rng));
    for (auto& b : a) b = std::uniform_int_distribution<BlockId>(0, 7)(rng);
    EXPECT_EQ(io::readPartitionFile(io::writePartitionFile(a), a.size(), 8), a);
  }
  EXPECT_THROW(io::readPartitionFile("0\n2\n", 2, 2), MalformedInput);
  EXPECT_THROW(io::readPartitionFile("0\n", 2, 2), MalformedInput);
}

TEST(ExternalAdapter, ExportAndImport) {
  const auto hg = fixtures::diamond();
  const auto text = io::exportUndirected(hg);
  EXPECT_EQ(text.substr(0, text.find('\n')), "3 4");
  // Pin order inside a line is irrelevant to hMetis; compare as sets.
  std::vector<std::set<int>> nets;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    std::set<int> pins;
    for (int p; tokens >> p;) pins.insert(p);
    nets.push_back(pins);
  }
  EXPECT_EQ(nets, (std::vector<std::set<int>>{{1, 2}, {1, 3}, {2, 3, 4}}));

  EXPECT_EQ(io::importExternalBipartition("0\n0\n1\n1\n", hg), (std::vector<BlockId>{0, 0, 1, 1}));
  EXPECT_THROW(io::importExternalBipartition("0\n1\n2\n1\n", hg), MalformedInput);
}

}  // namespace
}  // namespace dahp
