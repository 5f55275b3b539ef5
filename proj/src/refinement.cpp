// refinement.cpp
#include "dahp/refinement.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace dahp {

namespace {

constexpr Weight kTolerance = 1e-9;

thread_local FmObserver gObserver;

void notify(const FmResult& result, bool twoWay) {
  if (gObserver) gObserver(result, twoWay);
}

// Lexicographic (overload, km1) comparison used to track the best state.
bool improves(Weight overload, Weight km1, Weight bestOverload, Weight bestKm1) {
  if (overload < bestOverload - kTolerance) return true;
  if (overload > bestOverload + kTolerance) return false;
  return km1 < bestKm1 - kTolerance;
}

}  // namespace

void setFmObserver(FmObserver observer) { gObserver = std::move(observer); }

Weight overload(const Partition& partition, const BalanceConstraint& balance) {
  Weight total = 0;
  for (BlockId b = 0; b < partition.k(); ++b) {
    total += std::max<Weight>(0, partition.blockWeight(b) - balance.maxWeight[b]);
  }
  return total;
}

Weight moveGain(const DirectedHypergraph& hg, const Partition& partition, VertexId v, BlockId target) {
  const BlockId from = partition.blockOf(v);
  if (partition.k() < 2 || target < 0 || target >= partition.k() || target == from) {
    throw Error(ErrorCode::NoTarget, "no valid target block for vertex " + std::to_string(v));
  }
  Weight gain = 0;
  for (const NetId e : hg.incidentNets(v)) {
    if (!hg.netEnabled(e)) continue;
    if (partition.pinCount(e, from) == 1) gain += hg.netWeight(e);
    if (partition.pinCount(e, target) == 0) gain -= hg.netWeight(e);
  }
  return gain;
}

namespace detail {

StoppingModel::StoppingModel(const FmConfig& config, std::size_t n)
    : config_(config),
      beta_(config.adaptiveBeta > 0 ? config.adaptiveBeta : std::log(std::max<double>(2.0, static_cast<double>(n)))) {}

void StoppingModel::reset() {
  steps_ = 0;
  mean_ = 0;
  m2_ = 0;
}

void StoppingModel::observe(Weight gain) {
  ++steps_;
  const double delta = gain - mean_;
  mean_ += delta / static_cast<double>(steps_);
  m2_ += delta * (gain - mean_);
}

bool StoppingModel::shouldStop(std::size_t movesSinceImprovement) const {
  if (config_.stopRule == StopRule::ConsecutiveMoves) {
    return movesSinceImprovement >= config_.maxNonImprovingMoves;
  }
  const double steps = static_cast<double>(steps_);
  if (steps <= beta_) return false;
  const double variance = steps_ > 1 ? m2_ / (steps - 1) : 0.0;
  if (mean_ == 0) return true;
  return steps >= config_.adaptiveAlpha * variance / (mean_ * mean_) + beta_;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// TwoWayFm

TwoWayFm::TwoWayFm(const DirectedHypergraph& hg, Partition& partition, BalanceConstraint balance, FmConfig config)
    : hg_(hg),
      partition_(partition),
      balance_(std::move(balance)),
      config_(config),
      quotient_(2),
      succInBlock_(hg.numVertices(), 0),
      predInBlock_(hg.numVertices(), 0),
      marked_(hg.numVertices(), 0),
      stamp_(hg.numVertices(), 0),
      stopping_(config, hg.numEnabledVertices()) {
  if (partition.k() != 2) throw Error(ErrorCode::InvalidArgument, "two-way FM needs a bipartition");
  queues_[0].resize(hg.numVertices());
  queues_[1].resize(hg.numVertices());
  for (NetId e = 0; e < hg.numNets(); ++e) accountNet(e, +1);
}

void TwoWayFm::accountNet(NetId e, int sign) {
  if (!hg_.netEnabled(e) || !hg_.netIsDirected(e)) return;
  quotient_.accountNet(hg_, partition_, e, sign);
  const auto pins = hg_.pins(e);
  for (const Pin& t : pins) {
    if (t.role != PinRole::Tail) continue;
    const BlockId b = partition_.blockOf(t.vertex);
    for (const Pin& h : pins) {
      if (h.role == PinRole::Head && partition_.blockOf(h.vertex) == b) {
        succInBlock_[t.vertex] += sign;
        predInBlock_[h.vertex] += sign;
      }
    }
  }
}

std::optional<BlockId> TwoWayFm::sourceBlock() const {
  const bool forward = quotient_.hasEdge(0, 1);
  const bool backward = quotient_.hasEdge(1, 0);
  if (forward == backward) return std::nullopt;
  return forward ? BlockId{0} : BlockId{1};
}

bool TwoWayFm::movable(VertexId v) const {
  if (!hg_.vertexEnabled(v)) return false;
  if (!config_.enforceAcyclicity) return true;
  const bool forward = quotient_.hasEdge(0, 1);
  const bool backward = quotient_.hasEdge(1, 0);
  if (forward && backward) return false;
  if (!forward && !backward) return succInBlock_[v] == 0 || predInBlock_[v] == 0;
  const BlockId source = forward ? 0 : 1;
  return partition_.blockOf(v) == source ? succInBlock_[v] == 0 : predInBlock_[v] == 0;
}

bool TwoWayFm::admissible(VertexId v, BlockId to) const {
  const BlockId from = partition_.blockOf(v);
  if (partition_.blockWeight(to) + hg_.vertexWeight(v) > balance_.maxWeight[to] + kTolerance) return false;
  if (partition_.blockSize(from) < balance_.minSize[from] + 1) return false;
  return movable(v);
}

Weight TwoWayFm::gainOf(VertexId v) const { return moveGain(hg_, partition_, v, 1 - partition_.blockOf(v)); }

void TwoWayFm::applyMove(VertexId v, BlockId to) {
  const BlockId from = partition_.blockOf(v);
  for (const NetId e : hg_.incidentNets(v)) {
    if (hg_.netEnabled(e) && hg_.netIsDirected(e)) quotient_.accountNet(hg_, partition_, e, -1);
  }
  partition_.move(hg_, v, to);
  for (const NetId e : hg_.incidentNets(v)) {
    if (!hg_.netEnabled(e) || !hg_.netIsDirected(e)) continue;
    quotient_.accountNet(hg_, partition_, e, +1);
    const PinRole role = *hg_.roleIn(e, v);
    for (const Pin& p : hg_.pins(e)) {
      if (p.role == role) continue;
      const BlockId b = partition_.blockOf(p.vertex);
      const int delta = b == to ? +1 : (b == from ? -1 : 0);
      if (delta == 0) continue;
      if (role == PinRole::Tail) {
        succInBlock_[v] += delta;
        predInBlock_[p.vertex] += delta;
      } else {
        predInBlock_[v] += delta;
        succInBlock_[p.vertex] += delta;
      }
    }
  }
}

void TwoWayFm::activate(VertexId v) {
  if (!hg_.vertexEnabled(v) || marked_[v]) return;
  GainQueue& queue = queues_[partition_.blockOf(v)];
  if (movable(v)) {
    queue.insertOrUpdate(v, gainOf(v));
  } else if (queue.contains(v)) {
    queue.remove(v);
  }
}

FmResult TwoWayFm::refine() {
  std::vector<VertexId> all;
  all.reserve(hg_.numEnabledVertices());
  for (VertexId v = 0; v < hg_.numVertices(); ++v) {
    if (hg_.vertexEnabled(v)) all.push_back(v);
  }
  return refine(all);
}

FmResult TwoWayFm::refine(std::span<const VertexId> seeds) {
  FmResult result;
  result.km1Before = partition_.km1();
  result.overloadBefore = overload(partition_, balance_);

  for (const VertexId v : seeds) activate(v);

  std::vector<VertexId> moves;
  std::vector<VertexId> markedList;
  Weight bestOverload = result.overloadBefore;
  Weight bestKm1 = result.km1Before;
  std::size_t bestPrefix = 0;
  std::size_t sinceImprovement = 0;
  stopping_.reset();

  while (!queues_[0].empty() || !queues_[1].empty()) {
    int q = 0;
    if (queues_[0].empty()) {
      q = 1;
    } else if (!queues_[1].empty()) {
      const Weight g0 = queues_[0].topGain();
      const Weight g1 = queues_[1].topGain();
      if (g1 > g0 || (g1 == g0 && queues_[1].topVertex() < queues_[0].topVertex())) q = 1;
    }
    const Weight gain = queues_[q].topGain();
    const VertexId v = queues_[q].pop();
    marked_[v] = 1;
    markedList.push_back(v);
    const BlockId to = 1 - q;
    if (!admissible(v, to)) continue;
    assert(std::abs(gain - gainOf(v)) < 1e-6);

    applyMove(v, to);
    moves.push_back(v);
    stopping_.observe(gain);

    const Weight currentOverload = overload(partition_, balance_);
    if (improves(currentOverload, partition_.km1(), bestOverload, bestKm1)) {
      bestOverload = currentOverload;
      bestKm1 = partition_.km1();
      bestPrefix = moves.size();
      sinceImprovement = 0;
      stopping_.reset();
    } else if (stopping_.shouldStop(++sinceImprovement)) {
      break;
    }

    ++currentStamp_;
    stamp_[v] = currentStamp_;
    for (const NetId e : hg_.incidentNets(v)) {
      if (!hg_.netEnabled(e)) continue;
      for (const Pin& p : hg_.pins(e)) {
        if (stamp_[p.vertex] == currentStamp_) continue;
        stamp_[p.vertex] = currentStamp_;
        activate(p.vertex);
      }
    }
  }

  for (std::size_t i = moves.size(); i > bestPrefix; --i) {
    const VertexId v = moves[i - 1];
    applyMove(v, 1 - partition_.blockOf(v));
  }
  queues_[0].clear();
  queues_[1].clear();
  for (const VertexId v : markedList) marked_[v] = 0;

  result.km1After = partition_.km1();
  result.overloadAfter = overload(partition_, balance_);
  result.movesKept = bestPrefix;
  notify(result, true);
  return result;
}

void TwoWayFm::beforeUncontract(const ContractionMemento& m) {
  for (const auto& change : m.changes) accountNet(change.net, -1);
}

void TwoWayFm::afterUncontract(const ContractionMemento& m) {
  for (const auto& change : m.changes) accountNet(change.net, +1);
  marked_[m.removed] = 0;
}

bool TwoWayFm::countersConsistent() const {
  std::vector<std::int64_t> succ(hg_.numVertices(), 0), pred(hg_.numVertices(), 0);
  for (VertexId v = 0; v < hg_.numVertices(); ++v) {
    if (!hg_.vertexEnabled(v)) continue;
    hg_.forEachSuccessor(v, [&](VertexId s, NetId e) {
      if (!hg_.netIsDirected(e) || partition_.blockOf(s) != partition_.blockOf(v)) return;
      ++succ[v];
      ++pred[s];
    });
  }
  for (VertexId v = 0; v < hg_.numVertices(); ++v) {
    if (!hg_.vertexEnabled(v)) continue;
    if (succ[v] != succInBlock_[v] || pred[v] != predInBlock_[v]) return false;
  }
  return quotient_ == QuotientGraph::build(hg_, partition_);
}

// ---------------------------------------------------------------------------
// KWayFm

KWayFm::KWayFm(const DirectedHypergraph& hg, Partition& partition, BalanceConstraint balance, FmConfig config)
    : hg_(hg),
      partition_(partition),
      balance_(std::move(balance)),
      config_(config),
      quotient_(QuotientGraph::build(hg, partition)),
      queues_(partition.k()),
      marked_(hg.numVertices(), 0),
      stamp_(hg.numVertices(), 0),
      connection_(partition.k(), 0),
      stopping_(config, hg.numEnabledVertices()) {
  for (GainQueue& queue : queues_) queue.resize(hg.numVertices());
}

bool KWayFm::admissible(VertexId v, BlockId to) const {
  const BlockId from = partition_.blockOf(v);
  if (partition_.blockWeight(to) + hg_.vertexWeight(v) > balance_.maxWeight[to] + kTolerance) return false;
  return partition_.blockSize(from) >= balance_.minSize[from] + 1;
}

void KWayFm::deactivate(VertexId v) {
  for (GainQueue& queue : queues_) {
    if (queue.contains(v)) queue.remove(v);
  }
}

void KWayFm::activate(VertexId v) {
  if (!hg_.vertexEnabled(v) || marked_[v]) return;
  const BlockId k = partition_.k();
  const BlockId from = partition_.blockOf(v);
  std::fill(connection_.begin(), connection_.end(), 0);
  Weight base = 0;
  Weight incident = 0;
  for (const NetId e : hg_.incidentNets(v)) {
    if (!hg_.netEnabled(e)) continue;
    const Weight w = hg_.netWeight(e);
    incident += w;
    if (partition_.pinCount(e, from) == 1) base += w;
    if (partition_.connectivity(e) < 2) continue;
    for (BlockId t = 0; t < k; ++t) {
      if (t != from && partition_.pinCount(e, t) > 0) connection_[t] += w;
    }
  }
  for (BlockId t = 0; t < k; ++t) {
    if (t == from) continue;
    if (connection_[t] > 0) {
      queues_[t].insertOrUpdate(v, base - (incident - connection_[t]));
    } else if (queues_[t].contains(v)) {
      queues_[t].remove(v);
    }
  }
  if (queues_[from].contains(v)) queues_[from].remove(v);
}

bool KWayFm::applyMove(VertexId v, BlockId to) {
  const BlockId k = partition_.k();
  const BlockId from = partition_.blockOf(v);
  std::vector<char> before(4 * static_cast<std::size_t>(k));
  for (BlockId j = 0; j < k; ++j) {
    before[4 * j + 0] = quotient_.hasEdge(from, j);
    before[4 * j + 1] = quotient_.hasEdge(j, from);
    before[4 * j + 2] = quotient_.hasEdge(to, j);
    before[4 * j + 3] = quotient_.hasEdge(j, to);
  }
  for (const NetId e : hg_.incidentNets(v)) quotient_.accountNetTouching(hg_, partition_, e, from, to, -1);
  partition_.move(hg_, v, to);
  for (const NetId e : hg_.incidentNets(v)) quotient_.accountNetTouching(hg_, partition_, e, from, to, +1);
  for (BlockId j = 0; j < k; ++j) {
    if ((!before[4 * j + 0] && quotient_.hasEdge(from, j)) || (!before[4 * j + 1] && quotient_.hasEdge(j, from)) ||
        (!before[4 * j + 2] && quotient_.hasEdge(to, j)) || (!before[4 * j + 3] && quotient_.hasEdge(j, to))) {
      return true;
    }
  }
  return false;
}

FmResult KWayFm::refine() {
  std::vector<VertexId> all;
  for (VertexId v = 0; v < hg_.numVertices(); ++v) {
    if (hg_.vertexEnabled(v)) all.push_back(v);
  }
  return refine(all);
}

FmResult KWayFm::refine(std::span<const VertexId> seeds) {
  FmResult result;
  result.km1Before = partition_.km1();
  result.overloadBefore = overload(partition_, balance_);
  const BlockId k = partition_.k();
  if (k < 2) {
    result.km1After = result.km1Before;
    result.overloadAfter = result.overloadBefore;
    notify(result, false);
    return result;
  }

  for (const VertexId v : seeds) activate(v);

  std::vector<std::pair<VertexId, BlockId>> moves;  // (vertex, previous block)
  std::vector<VertexId> markedList;
  Weight bestOverload = result.overloadBefore;
  Weight bestKm1 = result.km1Before;
  std::size_t bestPrefix = 0;
  std::size_t sinceImprovement = 0;
  stopping_.reset();

  while (true) {
    BlockId target = kInvalidBlock;
    for (BlockId t = 0; t < k; ++t) {
      if (queues_[t].empty()) continue;
      if (target == kInvalidBlock) {
        target = t;
        continue;
      }
      const Weight g = queues_[t].topGain();
      const Weight best = queues_[target].topGain();
      if (g > best || (g == best && queues_[t].topVertex() < queues_[target].topVertex())) target = t;
    }
    if (target == kInvalidBlock) break;

    const Weight gain = queues_[target].topGain();
    const VertexId v = queues_[target].pop();
    if (!admissible(v, target)) continue;
    assert(std::abs(gain - moveGain(hg_, partition_, v, target)) < 1e-6);

    marked_[v] = 1;
    markedList.push_back(v);
    deactivate(v);
    const BlockId from = partition_.blockOf(v);
    if (applyMove(v, target) && !quotient_.isAcyclic()) {
      applyMove(v, from);
      ++undoneMoves_;
      continue;
    }
    moves.emplace_back(v, from);
    stopping_.observe(gain);

    const Weight currentOverload = overload(partition_, balance_);
    if (improves(currentOverload, partition_.km1(), bestOverload, bestKm1)) {
      bestOverload = currentOverload;
      bestKm1 = partition_.km1();
      bestPrefix = moves.size();
      sinceImprovement = 0;
      stopping_.reset();
    } else if (stopping_.shouldStop(++sinceImprovement)) {
      break;
    }

    ++currentStamp_;
    stamp_[v] = currentStamp_;
    for (const NetId e : hg_.incidentNets(v)) {
      if (!hg_.netEnabled(e)) continue;
      for (const Pin& p : hg_.pins(e)) {
        if (stamp_[p.vertex] == currentStamp_) continue;
        stamp_[p.vertex] = currentStamp_;
        activate(p.vertex);
      }
    }
  }

  for (std::size_t i = moves.size(); i > bestPrefix; --i) applyMove(moves[i - 1].first, moves[i - 1].second);
  for (GainQueue& queue : queues_) queue.clear();
  for (const VertexId v : markedList) marked_[v] = 0;

  result.km1After = partition_.km1();
  result.overloadAfter = overload(partition_, balance_);
  result.movesKept = bestPrefix;
  notify(result, false);
  return result;
}

void KWayFm::beforeUncontract(const ContractionMemento& m) {
  for (const auto& change : m.changes) quotient_.accountNet(hg_, partition_, change.net, -1);
}

void KWayFm::afterUncontract(const ContractionMemento& m) {
  for (const auto& change : m.changes) quotient_.accountNet(hg_, partition_, change.net, +1);
  marked_[m.removed] = 0;
}

}  // namespace dahp
