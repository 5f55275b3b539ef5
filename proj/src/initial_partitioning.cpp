// initial_partitioning.cpp
#include "dahp/initial_partitioning.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <tuple>

#include "dahp/analysis.hpp"
#include "dahp/io.hpp"

namespace dahp {

namespace {

constexpr Weight kTolerance = 1e-9;

std::vector<BlockId> emptyAssignment(const DirectedHypergraph& hg) {
  return std::vector<BlockId>(hg.numVertices(), kInvalidBlock);
}

}  // namespace

std::vector<BlockId> topoGreedyAssignment(const DirectedHypergraph& hg, std::span<const Weight> targets,
                                          std::span<const std::size_t> minSizes) {
  const BlockId k = static_cast<BlockId>(targets.size());
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "at least one block is required");
  auto minSize = [&](BlockId b) -> std::size_t { return minSizes.empty() ? 1 : std::max<std::size_t>(1, minSizes[b]); };
  std::vector<std::size_t> reservedAfter(k, 0);  // sum of minimum sizes of blocks > b
  for (BlockId b = k - 1; b > 0; --b) reservedAfter[b - 1] = reservedAfter[b] + minSize(b);

  const std::vector<VertexId> order = topologicalOrder(hg);
  std::vector<BlockId> assignment = emptyAssignment(hg);
  BlockId current = 0;
  Weight weight = 0;
  std::size_t size = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const VertexId v = order[i];
    const Weight c = hg.vertexWeight(v);
    const std::size_t remaining = order.size() - i;
    const bool full = weight >= targets[current] - kTolerance || weight + c > targets[current] + kTolerance;
    const bool forced = remaining <= reservedAfter[current];
    if (current + 1 < k && size >= minSize(current) && (full || forced)) {
      ++current;
      weight = 0;
      size = 0;
    }
    assignment[v] = current;
    weight += c;
    ++size;
  }
  return assignment;
}

Partition topoGreedyKway(const DirectedHypergraph& hg, BlockId k) {
  const std::vector<Weight> targets(k, std::ceil(hg.totalWeight() / static_cast<Weight>(k)));
  return Partition(hg, k, topoGreedyAssignment(hg, targets));
}

std::vector<BlockId> fixCyclic(const DirectedHypergraph& hg, std::vector<BlockId> assignment, BlockId removeFrom,
                               FixMode mode) {
  const BlockId a = removeFrom;
  const BlockId b = 1 - removeFrom;
  std::vector<VertexId> stack;
  if (mode == FixMode::MoveSuccessors) {
    // Pull every successor reachable from a into a.
    for (VertexId v = 0; v < hg.numVertices(); ++v) {
      if (hg.vertexEnabled(v) && assignment[v] == a) stack.push_back(v);
    }
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      hg.forEachSuccessor(u, [&](VertexId s, NetId) {
        if (assignment[s] == b) {
          assignment[s] = a;
          stack.push_back(s);
        }
      });
    }
  } else {
    // Push every predecessor reaching b into b.
    for (VertexId v = 0; v < hg.numVertices(); ++v) {
      if (hg.vertexEnabled(v) && assignment[v] == b) stack.push_back(v);
    }
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      hg.forEachPredecessor(u, [&](VertexId p, NetId) {
        if (assignment[p] == a) {
          assignment[p] = b;
          stack.push_back(p);
        }
      });
    }
  }
  return assignment;
}

BalanceReport balanceBipartition(const DirectedHypergraph& hg, std::vector<BlockId>& assignment,
                                 const BalanceConstraint& balance) {
  BalanceReport report;
  Partition partition(hg, 2, assignment);
  const QuotientGraph quotient = QuotientGraph::build(hg, partition);

  for (BlockId o = 0; o < 2; ++o) {
    if (partition.blockWeight(o) <= balance.maxWeight[o] + kTolerance) continue;
    const BlockId t = 1 - o;
    // blocking[v]: same-block successors (o is source) or predecessors (o is sink).
    const bool oIsSource = !quotient.hasEdge(t, o);
    if (quotient.hasEdge(o, t) && quotient.hasEdge(t, o)) break;

    std::vector<std::int64_t> blocking(hg.numVertices(), 0);
    auto forEachBlocker = [&](VertexId v, auto&& f) {
      if (oIsSource) {
        hg.forEachSuccessor(v, f);
      } else {
        hg.forEachPredecessor(v, f);
      }
    };
    auto forEachDependent = [&](VertexId v, auto&& f) {
      if (oIsSource) {
        hg.forEachPredecessor(v, f);
      } else {
        hg.forEachSuccessor(v, f);
      }
    };

    using Entry = std::tuple<Weight, std::int64_t, std::uint32_t>;  // gain, -vertex, version
    std::priority_queue<Entry> queue;
    std::vector<std::uint32_t> version(hg.numVertices(), 0);
    auto push = [&](VertexId v) {
      queue.emplace(moveGain(hg, partition, v, t), -static_cast<std::int64_t>(v), ++version[v]);
    };

    for (VertexId v = 0; v < hg.numVertices(); ++v) {
      if (!hg.vertexEnabled(v) || partition.blockOf(v) != o) continue;
      forEachBlocker(v, [&](VertexId w, NetId) {
        if (partition.blockOf(w) == o) ++blocking[v];
      });
      if (blocking[v] == 0) push(v);
    }

    while (partition.blockWeight(o) > balance.maxWeight[o] + kTolerance && !queue.empty()) {
      const auto [gain, negVertex, stamp] = queue.top();
      queue.pop();
      const auto v = static_cast<VertexId>(-negVertex);
      if (stamp != version[v] || partition.blockOf(v) != o || blocking[v] != 0) continue;
      if (partition.blockWeight(t) + hg.vertexWeight(v) > balance.maxWeight[t] + kTolerance) continue;
      if (partition.blockSize(o) <= balance.minSize[o]) break;

      partition.move(hg, v, t);
      ++report.moves;
      forEachDependent(v, [&](VertexId w, NetId) {
        if (partition.blockOf(w) == o) --blocking[w];
      });
      for (const NetId e : hg.incidentNets(v)) {
        if (!hg.netEnabled(e)) continue;
        for (const Pin& p : hg.pins(e)) {
          if (partition.blockOf(p.vertex) == o && blocking[p.vertex] == 0) push(p.vertex);
        }
      }
    }
  }

  assignment = partition.assignment();
  report.balanced = overload(partition, balance) <= kTolerance;
  report.unbalanceableWarning = !report.balanced;
  return report;
}

std::vector<BlockId> builtinUndirectedBipartition(const DirectedHypergraph& hg, const BalanceConstraint& balance,
                                                  std::uint64_t seed, int attempts) {
  std::vector<VertexId> vertices;
  for (VertexId v = 0; v < hg.numVertices(); ++v) {
    if (hg.vertexEnabled(v)) vertices.push_back(v);
  }
  std::vector<BlockId> best;
  if (vertices.empty()) return emptyAssignment(hg);

  std::mt19937_64 rng(seed);
  const Weight target = std::ceil(hg.totalWeight() / 2.0);
  Weight bestOverload = 0;
  Weight bestKm1 = 0;
  FmConfig fmConfig;
  fmConfig.enforceAcyclicity = false;

  for (int attempt = 0; attempt < std::max(1, attempts); ++attempt) {
    std::vector<BlockId> assignment = emptyAssignment(hg);
    for (const VertexId v : vertices) assignment[v] = 1;
    Partition partition(hg, 2, assignment);

    // Grow block 0 by the highest gain frontier vertex; restart from a random
    // unassigned vertex when the frontier runs dry.
    GainQueue frontier(hg.numVertices());
    std::uniform_int_distribution<std::size_t> pick(0, vertices.size() - 1);
    std::vector<char> rejected(hg.numVertices(), 0);
    frontier.insert(vertices[pick(rng)], 0);
    while (partition.blockWeight(0) < target && partition.blockSize(1) > 1) {
      if (frontier.empty()) {
        std::vector<VertexId> rest;
        for (const VertexId v : vertices) {
          if (partition.blockOf(v) == 1 && !rejected[v]) rest.push_back(v);
        }
        if (rest.empty()) break;
        frontier.insert(rest[std::uniform_int_distribution<std::size_t>(0, rest.size() - 1)(rng)], 0);
      }
      const VertexId v = frontier.pop();
      if (partition.blockWeight(0) > 0 && partition.blockWeight(0) + hg.vertexWeight(v) > balance.maxWeight[0]) {
        rejected[v] = 1;
        continue;
      }
      partition.move(hg, v, 0);
      for (const NetId e : hg.incidentNets(v)) {
        if (!hg.netEnabled(e)) continue;
        for (const Pin& p : hg.pins(e)) {
          if (partition.blockOf(p.vertex) == 1) frontier.insertOrUpdate(p.vertex, moveGain(hg, partition, p.vertex, 0));
        }
      }
    }

    TwoWayFm fm(hg, partition, balance, fmConfig);
    fm.refine();
    const Weight ov = overload(partition, balance);
    if (best.empty() || ov < bestOverload - kTolerance ||
        (ov <= bestOverload + kTolerance && partition.km1() < bestKm1 - kTolerance)) {
      best = partition.assignment();
      bestOverload = ov;
      bestKm1 = partition.km1();
    }
  }
  return best;
}

bool candidateBetter(const IpCandidate& a, const IpCandidate& b) {
  if (a.valid != b.valid) return a.valid;
  if (std::abs(a.km1 - b.km1) > kTolerance) return a.km1 < b.km1;
  if (std::abs(a.maxBlockWeight - b.maxBlockWeight) > kTolerance) return a.maxBlockWeight < b.maxBlockWeight;
  return false;
}

namespace {

IpCandidate evaluateCandidate(const DirectedHypergraph& hg, std::vector<BlockId> assignment,
                              const BalanceConstraint& balance, const FmConfig& fmConfig) {
  IpCandidate candidate;
  const BalanceReport report = balanceBipartition(hg, assignment, balance);
  candidate.unbalanceableWarning = report.unbalanceableWarning;
  Partition partition(hg, 2, std::move(assignment));
  TwoWayFm fm(hg, partition, balance, fmConfig);
  fm.refine();
  candidate.km1 = partition.km1();
  candidate.maxBlockWeight = std::max(partition.blockWeight(0), partition.blockWeight(1));
  candidate.valid = overload(partition, balance) <= kTolerance && partition.blockSize(0) >= balance.minSize[0] &&
                    partition.blockSize(1) >= balance.minSize[1] && partition.blockSize(0) > 0 &&
                    partition.blockSize(1) > 0;
  candidate.assignment = partition.assignment();
  return candidate;
}

}  // namespace

BipartitionResult undirectedBipartition(const DirectedHypergraph& hg, const BalanceConstraint& balance,
                                        const IpConfig& config) {
  if (!isAcyclic(hg)) throw Error(ErrorCode::CyclicInput, "initial partitioning needs an acyclic hypergraph");

  std::vector<BlockId> base;
  if (config.externalBipartitionFile) {
    base = io::importExternalBipartition(io::readFile(*config.externalBipartitionFile), hg);
  } else {
    base = builtinUndirectedBipartition(hg, balance, config.seed, config.builtinAttempts);
  }

  BipartitionResult result;
  for (const BlockId from : {BlockId{0}, BlockId{1}}) {
    if ((from == 0 && !config.removeForwardEdge) || (from == 1 && !config.removeBackwardEdge)) continue;
    for (const FixMode mode : {FixMode::MoveSuccessors, FixMode::MovePredecessors}) {
      if ((mode == FixMode::MoveSuccessors && !config.moveSuccessors) ||
          (mode == FixMode::MovePredecessors && !config.movePredecessors)) {
        continue;
      }
      IpCandidate candidate = evaluateCandidate(hg, fixCyclic(hg, base, from, mode), balance, config.fm);
      candidate.removedFrom = from;
      candidate.mode = mode;
      result.candidates.push_back(std::move(candidate));
    }
  }

  const bool anyValid =
      std::any_of(result.candidates.begin(), result.candidates.end(), [](const IpCandidate& c) { return c.valid; });
  if (!anyValid) {
    const Weight total = balance.maxWeight[0] + balance.maxWeight[1];
    const std::vector<Weight> targets = {hg.totalWeight() * balance.maxWeight[0] / total,
                                         hg.totalWeight() * balance.maxWeight[1] / total};
    IpCandidate fallback = evaluateCandidate(hg, topoGreedyAssignment(hg, targets), balance, config.fm);
    fallback.removedFrom = kInvalidBlock;
    result.candidates.push_back(std::move(fallback));
  }

  for (std::size_t i = 1; i < result.candidates.size(); ++i) {
    if (candidateBetter(result.candidates[i], result.candidates[result.chosen])) result.chosen = i;
  }
  result.assignment = result.candidates[result.chosen].assignment;
  return result;
}

}  // namespace dahp
