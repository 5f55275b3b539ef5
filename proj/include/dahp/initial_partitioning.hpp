// initial_partitioning.hpp - acyclic partitions computed before coarsening
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dahp/hypergraph.hpp"
#include "dahp/partition.hpp"
#include "dahp/refinement.hpp"

namespace dahp {

enum class IpScheme { TopoGreedy, UndirectedBased };

struct IpConfig {
  IpScheme scheme = IpScheme::UndirectedBased;
  // When set, the undirected bipartition is read from this file (one block
  // id 0/1 per vertex) instead of being computed by the builtin partitioner.
  std::optional<std::string> externalBipartitionFile;
  bool removeForwardEdge = true;   // candidates that break V1 -> V2
  bool removeBackwardEdge = true;  // candidates that break V2 -> V1
  bool moveSuccessors = true;
  bool movePredecessors = true;
  std::uint64_t seed = 0;
  int builtinAttempts = 3;
  FmConfig fm;
};

// Walks a FIFO topological order and fills blocks 0, 1, ... in sequence; the
// number of blocks is targets.size(). A block is closed once its weight
// reaches its target or when the next vertex would push a nonempty block past
// it, but never before it holds minSizes[b] vertices (default 1). Blocks are
// also closed early when the remaining vertices are just enough for the
// minimum sizes of the later blocks. Throws CyclicInput.
std::vector<BlockId> topoGreedyAssignment(const DirectedHypergraph& hg, std::span<const Weight> targets,
                                          std::span<const std::size_t> minSizes = {});

// targets = ceil(c(V) / k) for every block.
Partition topoGreedyKway(const DirectedHypergraph& hg, BlockId k);

enum class FixMode { MoveSuccessors, MovePredecessors };

// Removes the quotient edge removeFrom -> (1 - removeFrom) from a bipartition.
std::vector<BlockId> fixCyclic(const DirectedHypergraph& hg, std::vector<BlockId> assignment, BlockId removeFrom,
                               FixMode mode);

struct BalanceReport {
  bool balanced = false;
  bool unbalanceableWarning = false;
  std::size_t moves = 0;
};

// Moves highest-gain movable vertices out of an overloaded block until it
// fits. Movable means no successor in the block when it is the quotient
// source (or there is no quotient edge), no predecessor when it is the sink.
BalanceReport balanceBipartition(const DirectedHypergraph& hg, std::vector<BlockId>& assignment,
                                 const BalanceConstraint& balance);

// Greedy growing from a random vertex to half the total weight, then FM
// without acyclicity constraints; best of `attempts` runs.
std::vector<BlockId> builtinUndirectedBipartition(const DirectedHypergraph& hg, const BalanceConstraint& balance,
                                                  std::uint64_t seed, int attempts = 3);

struct IpCandidate {
  BlockId removedFrom = 0;  // kInvalidBlock for the topological fallback
  FixMode mode = FixMode::MoveSuccessors;
  std::vector<BlockId> assignment;
  Weight km1 = 0;
  Weight maxBlockWeight = 0;
  bool valid = false;  // balanced and every block meets its minimum size
  bool unbalanceableWarning = false;
};

struct BipartitionResult {
  std::vector<BlockId> assignment;
  std::vector<IpCandidate> candidates;
  std::size_t chosen = 0;
};

// Valid first, then lower km1, then lower max block weight. Equal candidates
// keep generation order.
bool candidateBetter(const IpCandidate& a, const IpCandidate& b);

// Four candidates (both quotient edges x both fix modes), each balanced and
// refined. Falls back to a refined topological split when no candidate is
// valid. Throws CyclicInput, ExternalFileMissing.
BipartitionResult undirectedBipartition(const DirectedHypergraph& hg, const BalanceConstraint& balance,
                                        const IpConfig& config);

}  // namespace dahp
