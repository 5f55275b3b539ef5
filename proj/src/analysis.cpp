// analysis.cpp
#include "dahp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace dahp {

namespace {

struct KahnResult {
  std::vector<VertexId> order;
  std::vector<std::uint32_t> levels;
  bool complete = false;
};

// Forward: a net releases its heads once all of its tails are ordered.
// Reversed: roles are swapped, which orders the reversed hypergraph.
KahnResult kahn(const DirectedHypergraph& hg, LevelDirection direction) {
  const PinRole sourceRole = direction == LevelDirection::Forward ? PinRole::Tail : PinRole::Head;
  const std::size_t n = hg.numVertices();
  const std::size_t m = hg.numNets();

  std::vector<std::uint32_t> pending(n, 0);
  std::vector<std::uint32_t> remaining(m, 0);
  std::vector<std::uint32_t> netLevel(m, 0);
  for (NetId e = 0; e < m; ++e) {
    if (!hg.netEnabled(e) || !hg.netIsDirected(e)) continue;
    for (const Pin& p : hg.pins(e)) {
      if (p.role == sourceRole) {
        ++remaining[e];
      } else {
        ++pending[p.vertex];
      }
    }
  }

  KahnResult result;
  result.levels.assign(n, 0);
  std::deque<VertexId> ready;
  for (VertexId v = 0; v < n; ++v) {
    if (hg.vertexEnabled(v) && pending[v] == 0) ready.push_back(v);
  }
  result.order.reserve(hg.numEnabledVertices());
  while (!ready.empty()) {
    const VertexId v = ready.front();
    ready.pop_front();
    result.order.push_back(v);
    for (const NetId e : hg.incidentNets(v)) {
      if (!hg.netEnabled(e) || !hg.netIsDirected(e)) continue;
      if (hg.roleIn(e, v) != sourceRole) continue;
      netLevel[e] = std::max(netLevel[e], result.levels[v]);
      if (--remaining[e] != 0) continue;
      for (const Pin& p : hg.pins(e)) {
        if (p.role == sourceRole) continue;
        result.levels[p.vertex] = std::max(result.levels[p.vertex], netLevel[e] + 1);
        if (--pending[p.vertex] == 0) ready.push_back(p.vertex);
      }
    }
  }
  result.complete = result.order.size() == hg.numEnabledVertices();
  return result;
}

}  // namespace

std::optional<std::vector<VertexId>> tryTopologicalOrder(const DirectedHypergraph& hg) {
  KahnResult r = kahn(hg, LevelDirection::Forward);
  if (!r.complete) return std::nullopt;
  return std::move(r.order);
}

std::vector<VertexId> topologicalOrder(const DirectedHypergraph& hg) {
  auto order = tryTopologicalOrder(hg);
  if (!order) throw Error(ErrorCode::CyclicInput, "hypergraph contains a cycle");
  return std::move(*order);
}

bool isAcyclic(const DirectedHypergraph& hg) { return kahn(hg, LevelDirection::Forward).complete; }

std::vector<std::uint32_t> computeToplevels(const DirectedHypergraph& hg, LevelDirection direction) {
  KahnResult r = kahn(hg, direction);
  if (!r.complete) throw Error(ErrorCode::CyclicInput, "toplevels of a cyclic hypergraph");
  return std::move(r.levels);
}

QuotientGraph QuotientGraph::build(const DirectedHypergraph& hg, const Partition& partition) {
  QuotientGraph q(partition.k());
  for (NetId e = 0; e < hg.numNets(); ++e) q.accountNet(hg, partition, e, +1);
  return q;
}

QuotientGraph QuotientGraph::build(const DirectedHypergraph& hg, const std::vector<BlockId>& assignment,
                                   BlockId k) {
  QuotientGraph q(k);
  std::vector<char> tailIn(k), headIn(k);
  for (NetId e = 0; e < hg.numNets(); ++e) {
    if (!hg.netEnabled(e) || !hg.netIsDirected(e)) continue;
    std::fill(tailIn.begin(), tailIn.end(), 0);
    std::fill(headIn.begin(), headIn.end(), 0);
    for (const Pin& p : hg.pins(e)) {
      (p.role == PinRole::Tail ? tailIn : headIn)[assignment[p.vertex]] = 1;
    }
    for (BlockId i = 0; i < k; ++i) {
      if (!tailIn[i]) continue;
      for (BlockId j = 0; j < k; ++j) {
        if (i != j && headIn[j]) q.add(i, j, 1);
      }
    }
  }
  return q;
}

void QuotientGraph::accountNet(const DirectedHypergraph& hg, const Partition& partition, NetId e, int sign) {
  if (!hg.netEnabled(e) || !hg.netIsDirected(e)) return;
  for (BlockId i = 0; i < k_; ++i) {
    if (partition.tailPins(e, i) == 0) continue;
    for (BlockId j = 0; j < k_; ++j) {
      if (i != j && partition.headPins(e, j) > 0) add(i, j, sign);
    }
  }
}

void QuotientGraph::accountNetTouching(const DirectedHypergraph& hg, const Partition& partition, NetId e,
                                       BlockId a, BlockId b, int sign) {
  if (!hg.netEnabled(e) || !hg.netIsDirected(e)) return;
  const BlockId ends[2] = {a, b};
  for (const BlockId i : ends) {
    if (partition.tailPins(e, i) == 0) continue;
    for (BlockId j = 0; j < k_; ++j) {
      if (j != i && partition.headPins(e, j) > 0) add(i, j, sign);
    }
  }
  for (const BlockId j : ends) {
    if (partition.headPins(e, j) == 0) continue;
    for (BlockId i = 0; i < k_; ++i) {
      if (i != a && i != b && partition.tailPins(e, i) > 0) add(i, j, sign);
    }
  }
}

std::size_t QuotientGraph::numEdges() const {
  return static_cast<std::size_t>(
      std::count_if(multiplicity_.begin(), multiplicity_.end(), [](std::int64_t m) { return m > 0; }));
}

bool QuotientGraph::isAcyclic() const {
  std::vector<int> indegree(k_, 0);
  for (BlockId i = 0; i < k_; ++i) {
    for (BlockId j = 0; j < k_; ++j) {
      if (i != j && hasEdge(i, j)) ++indegree[j];
    }
  }
  std::vector<BlockId> stack;
  for (BlockId i = 0; i < k_; ++i) {
    if (indegree[i] == 0) stack.push_back(i);
  }
  BlockId seen = 0;
  while (!stack.empty()) {
    const BlockId i = stack.back();
    stack.pop_back();
    ++seen;
    for (BlockId j = 0; j < k_; ++j) {
      if (i != j && hasEdge(i, j) && --indegree[j] == 0) stack.push_back(j);
    }
  }
  return seen == k_;
}

namespace {

template <typename PerNet>
Weight sumOverNets(const DirectedHypergraph& hg, const std::vector<BlockId>& assignment, BlockId k, PerNet f) {
  std::vector<char> touched(k, 0);
  Weight total = 0;
  for (NetId e = 0; e < hg.numNets(); ++e) {
    if (!hg.netEnabled(e)) continue;
    std::fill(touched.begin(), touched.end(), 0);
    std::uint32_t lambda = 0;
    for (const Pin& p : hg.pins(e)) {
      const BlockId b = assignment[p.vertex];
      if (!touched[b]) {
        touched[b] = 1;
        ++lambda;
      }
    }
    total += f(lambda) * hg.netWeight(e);
  }
  return total;
}

}  // namespace

Weight connectivityMetric(const DirectedHypergraph& hg, const std::vector<BlockId>& assignment, BlockId k) {
  return sumOverNets(hg, assignment, k, [](std::uint32_t lambda) { return lambda - 1.0; });
}

Weight cutNetMetric(const DirectedHypergraph& hg, const std::vector<BlockId>& assignment, BlockId k) {
  return sumOverNets(hg, assignment, k, [](std::uint32_t lambda) { return lambda > 1 ? 1.0 : 0.0; });
}

Weight maxBlockWeight(Weight totalWeight, BlockId k, double epsilon) {
  return (1.0 + epsilon) * std::ceil(totalWeight / static_cast<Weight>(k));
}

PartitionReport verifyPartition(const DirectedHypergraph& hg, const std::vector<BlockId>& assignment, BlockId k,
                                double epsilon) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (assignment.size() != hg.numVertices()) {
    throw Error(ErrorCode::PartitionIncomplete, "assignment size " + std::to_string(assignment.size()) +
                                                    " does not match " + std::to_string(hg.numVertices()) +
                                                    " vertices");
  }
  std::vector<Weight> weights(k, 0);
  std::vector<std::size_t> sizes(k, 0);
  for (VertexId v = 0; v < hg.numVertices(); ++v) {
    if (!hg.vertexEnabled(v)) continue;
    const BlockId b = assignment[v];
    if (b < 0 || b >= k) {
      throw Error(ErrorCode::PartitionIncomplete, "vertex " + std::to_string(v) + " is unassigned");
    }
    weights[b] += hg.vertexWeight(v);
    ++sizes[b];
  }
  PartitionReport report;
  report.lMax = maxBlockWeight(hg.totalWeight(), k, epsilon);
  report.maxBlockWeight = *std::max_element(weights.begin(), weights.end());
  report.balanced = report.maxBlockWeight <= report.lMax;
  report.blocksNonempty = std::all_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s > 0; });
  report.acyclic = QuotientGraph::build(hg, assignment, k).isAcyclic();
  report.km1 = connectivityMetric(hg, assignment, k);
  report.cut = cutNetMetric(hg, assignment, k);
  return report;
}

}  // namespace dahp
