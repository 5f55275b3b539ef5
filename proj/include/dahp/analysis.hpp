// analysis.hpp - orderings, toplevels, quotient graphs, objectives, verification
#pragma once

#include <optional>
#include <vector>

#include "dahp/hypergraph.hpp"
#include "dahp/partition.hpp"

namespace dahp {

enum class LevelDirection { Forward, Reversed };

inline LevelDirection opposite(LevelDirection d) {
  return d == LevelDirection::Forward ? LevelDirection::Reversed : LevelDirection::Forward;
}

// Kahn's algorithm on a directed hypergraph. A vertex becomes ready once every
// directed net in which it is a head has had all of its tails ordered. Ties
// are resolved FIFO, with the initial queue in ascending vertex id.
// Only enabled vertices appear in the result. Returns nullopt on a cycle.
std::optional<std::vector<VertexId>> tryTopologicalOrder(const DirectedHypergraph& hg);
std::vector<VertexId> topologicalOrder(const DirectedHypergraph& hg);  // throws CyclicInput
bool isAcyclic(const DirectedHypergraph& hg);

// Longest distance from a source (Forward) or to a sink (Reversed).
// Disabled vertices get level 0. Throws CyclicInput.
std::vector<std::uint32_t> computeToplevels(const DirectedHypergraph& hg, LevelDirection direction);

// k-node digraph over blocks. multiplicity(i, j) counts the nets that have a
// tail in block i and a head in block j (i != j).
class QuotientGraph {
 public:
  QuotientGraph() = default;
  explicit QuotientGraph(BlockId k) : k_(k), multiplicity_(static_cast<std::size_t>(k) * k, 0) {}

  static QuotientGraph build(const DirectedHypergraph& hg, const Partition& partition);
  static QuotientGraph build(const DirectedHypergraph& hg, const std::vector<BlockId>& assignment, BlockId k);

  BlockId k() const { return k_; }
  std::int64_t multiplicity(BlockId from, BlockId to) const { return multiplicity_[from * k_ + to]; }
  bool hasEdge(BlockId from, BlockId to) const { return multiplicity(from, to) > 0; }
  void add(BlockId from, BlockId to, std::int64_t delta) { multiplicity_[from * k_ + to] += delta; }
  std::size_t numEdges() const;

  // Adds the witnesses of net e under the given partition with sign +1/-1.
  void accountNet(const DirectedHypergraph& hg, const Partition& partition, NetId e, int sign);
  // Same, restricted to the witness pairs with an endpoint in block a or b.
  void accountNetTouching(const DirectedHypergraph& hg, const Partition& partition, NetId e, BlockId a, BlockId b,
                          int sign);

  bool isAcyclic() const;

  friend bool operator==(const QuotientGraph&, const QuotientGraph&) = default;

 private:
  BlockId k_ = 0;
  std::vector<std::int64_t> multiplicity_;
};

inline bool quotientIsAcyclic(const QuotientGraph& q) { return q.isAcyclic(); }

// (lambda - 1) and cut-net objectives, recounted from scratch over enabled nets.
Weight connectivityMetric(const DirectedHypergraph& hg, const std::vector<BlockId>& assignment, BlockId k);
Weight cutNetMetric(const DirectedHypergraph& hg, const std::vector<BlockId>& assignment, BlockId k);

// L_max = (1 + eps) * ceil(c(V) / k)
Weight maxBlockWeight(Weight totalWeight, BlockId k, double epsilon);

struct PartitionReport {
  bool acyclic = false;
  bool balanced = false;
  bool blocksNonempty = false;
  Weight km1 = 0;
  Weight cut = 0;
  Weight maxBlockWeight = 0;
  Weight lMax = 0;

  bool valid() const { return acyclic && blocksNonempty; }
};

// Throws PartitionIncomplete if an enabled vertex has no block in [0, k).
PartitionReport verifyPartition(const DirectedHypergraph& hg, const std::vector<BlockId>& assignment, BlockId k,
                                double epsilon);

}  // namespace dahp
