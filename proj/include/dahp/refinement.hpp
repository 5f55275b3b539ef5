// refinement.hpp - acyclicity-preserving FM local search (2-way and k-way)
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dahp/analysis.hpp"
#include "dahp/gain_queue.hpp"
#include "dahp/hypergraph.hpp"
#include "dahp/partition.hpp"

namespace dahp {

struct BalanceConstraint {
  std::vector<Weight> maxWeight;      // per block
  std::vector<std::size_t> minSize;   // per block, in enabled vertices

  static BalanceConstraint uniform(BlockId k, Weight maxWeight, std::size_t minSize = 1) {
    return {std::vector<Weight>(k, maxWeight), std::vector<std::size_t>(k, minSize)};
  }
};

// Total weight above the per-block limits.
Weight overload(const Partition& partition, const BalanceConstraint& balance);

// Reduction of the (lambda - 1) objective when moving v to target.
// Throws NoTarget if k == 1, target is out of range or equals v's block.
Weight moveGain(const DirectedHypergraph& hg, const Partition& partition, VertexId v, BlockId target);

enum class StopRule {
  ConsecutiveMoves,  // stop after maxNonImprovingMoves moves without improvement
  Adaptive,          // random-walk model on the observed gains
};

struct FmConfig {
  std::size_t maxNonImprovingMoves = 350;
  StopRule stopRule = StopRule::ConsecutiveMoves;
  double adaptiveAlpha = 1.0;
  double adaptiveBeta = 0.0;  // 0 selects ln(n)
  // Disabled only for undirected bipartitioning.
  bool enforceAcyclicity = true;
};

struct FmResult {
  Weight km1Before = 0;
  Weight km1After = 0;
  Weight overloadBefore = 0;
  Weight overloadAfter = 0;
  std::size_t movesKept = 0;
};

// Called after every completed refinement pass on this thread; used by the
// acceptance suite to audit monotonicity. Pass an empty function to detach.
using FmObserver = std::function<void(const FmResult& result, bool twoWay)>;
void setFmObserver(FmObserver observer);

namespace detail {
class StoppingModel {
 public:
  StoppingModel(const FmConfig& config, std::size_t n);
  void reset();
  void observe(Weight gain);
  bool shouldStop(std::size_t movesSinceImprovement) const;

 private:
  FmConfig config_;
  double beta_;
  std::size_t steps_ = 0;
  double mean_ = 0;
  double m2_ = 0;
};
}  // namespace detail

// Two-way FM. With quotient edge V_a -> V_b a vertex of V_a may move iff it
// has no successor in V_a, a vertex of V_b iff it has no predecessor in V_b.
// Same-block successor/predecessor counts are kept per vertex, counted with
// multiplicity over (net, pin) witnesses.
class TwoWayFm {
 public:
  TwoWayFm(const DirectedHypergraph& hg, Partition& partition, BalanceConstraint balance, FmConfig config = {});

  // Pass seeded with all enabled vertices.
  FmResult refine();
  // Localized pass; an empty or immovable seed set skips the pass.
  FmResult refine(std::span<const VertexId> seeds);

  // Keep counters in sync with n-level uncoarsening. Call beforeUncontract
  // prior to hg.uncontract(m) and afterUncontract after partition.uncontract.
  void beforeUncontract(const ContractionMemento& m);
  void afterUncontract(const ContractionMemento& m);

  std::int64_t sameBlockSuccessors(VertexId v) const { return succInBlock_[v]; }
  std::int64_t sameBlockPredecessors(VertexId v) const { return predInBlock_[v]; }
  bool countersConsistent() const;
  // Source block of the quotient edge, if there is exactly one edge.
  std::optional<BlockId> sourceBlock() const;
  bool movable(VertexId v) const;

 private:
  void accountNet(NetId e, int sign);
  void applyMove(VertexId v, BlockId to);
  Weight gainOf(VertexId v) const;
  void activate(VertexId v);
  bool admissible(VertexId v, BlockId to) const;

  const DirectedHypergraph& hg_;
  Partition& partition_;
  BalanceConstraint balance_;
  FmConfig config_;
  QuotientGraph quotient_;
  std::vector<std::int64_t> succInBlock_;
  std::vector<std::int64_t> predInBlock_;
  GainQueue queues_[2];
  std::vector<char> marked_;
  std::vector<std::size_t> stamp_;
  std::size_t currentStamp_ = 0;
  detail::StoppingModel stopping_;
};

// k-way FM over border vertices and adjacent target blocks. Every applied move
// updates the quotient graph; a move that creates a quotient edge is checked
// with Kahn's algorithm and undone if it closed a cycle.
class KWayFm {
 public:
  KWayFm(const DirectedHypergraph& hg, Partition& partition, BalanceConstraint balance, FmConfig config = {});

  // Pass seeded with all border vertices.
  FmResult refine();
  FmResult refine(std::span<const VertexId> seeds);

  void beforeUncontract(const ContractionMemento& m);
  void afterUncontract(const ContractionMemento& m);

  const QuotientGraph& quotient() const { return quotient_; }
  std::size_t undoneMoves() const { return undoneMoves_; }

 private:
  // Returns true if the move created at least one new quotient edge.
  bool applyMove(VertexId v, BlockId to);
  void activate(VertexId v);
  void deactivate(VertexId v);
  bool admissible(VertexId v, BlockId to) const;

  const DirectedHypergraph& hg_;
  Partition& partition_;
  BalanceConstraint balance_;
  FmConfig config_;
  QuotientGraph quotient_;
  std::vector<GainQueue> queues_;  // queues_[t]: vertices that may move to t
  std::vector<char> marked_;
  std::vector<std::size_t> stamp_;
  std::size_t currentStamp_ = 0;
  std::vector<Weight> connection_;  // scratch, size k
  std::size_t undoneMoves_ = 0;
  detail::StoppingModel stopping_;
};

}  // namespace dahp
