// partition.hpp - k-way block assignment with incremental pin-count bookkeeping
#pragma once

#include <span>
#include <vector>

#include "dahp/hypergraph.hpp"

namespace dahp {

// Block assignment of the enabled vertices of a hypergraph together with
// block weights, per-net tail/head pin counts per block and the connectivity
// objective. Disabled vertices keep a stale block id that is never read.
//
// The hypergraph is passed explicitly to every mutating call; a Partition is a
// plain value that may outlive a particular contraction state as long as it is
// only used with the state it was built for.
class Partition {
 public:
  Partition() = default;
  Partition(const DirectedHypergraph& hg, BlockId k, std::vector<BlockId> assignment);

  BlockId k() const { return k_; }
  BlockId blockOf(VertexId v) const { return assignment_[v]; }
  const std::vector<BlockId>& assignment() const { return assignment_; }

  Weight blockWeight(BlockId b) const { return blockWeight_[b]; }
  std::size_t blockSize(BlockId b) const { return blockSize_[b]; }

  std::uint32_t tailPins(NetId e, BlockId b) const { return tailCount_[index(e, b)]; }
  std::uint32_t headPins(NetId e, BlockId b) const { return headCount_[index(e, b)]; }
  // Phi(e, b)
  std::uint32_t pinCount(NetId e, BlockId b) const { return tailPins(e, b) + headPins(e, b); }
  // lambda(e)
  std::uint32_t connectivity(NetId e) const { return connectivity_[e]; }

  // (lambda - 1) objective over enabled nets, maintained incrementally.
  Weight km1() const { return km1_; }

  void move(const DirectedHypergraph& hg, VertexId v, BlockId to);

  // Must be called right after hg.uncontract(m): the re-enabled vertex joins
  // the survivor's current block and the touched nets are recounted.
  void uncontract(const DirectedHypergraph& hg, const ContractionMemento& m);

  // From-scratch recount of every counter; used by tests and verification.
  bool consistentWith(const DirectedHypergraph& hg) const;

 private:
  std::size_t index(NetId e, BlockId b) const {
    return static_cast<std::size_t>(e) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(b);
  }
  void recountNet(const DirectedHypergraph& hg, NetId e);

  BlockId k_ = 0;
  std::vector<BlockId> assignment_;
  std::vector<Weight> blockWeight_;
  std::vector<std::size_t> blockSize_;
  std::vector<std::uint32_t> tailCount_;
  std::vector<std::uint32_t> headCount_;
  std::vector<std::uint32_t> connectivity_;
  Weight km1_ = 0;
};

}  // namespace dahp
