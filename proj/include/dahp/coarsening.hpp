// coarsening.hpp - acyclic clustering and n-level contraction rounds
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dahp/analysis.hpp"
#include "dahp/hypergraph.hpp"

namespace dahp {

class Clustering {
 public:
  Clustering() = default;
  Clustering(const DirectedHypergraph& hg, std::vector<std::uint32_t> levels);

  std::uint32_t clusterOf(VertexId v) const { return clusterOf_[v]; }
  const std::vector<VertexId>& members(std::uint32_t cluster) const { return members_[cluster]; }
  std::uint32_t level(VertexId v) const { return levels_[v]; }
  std::uint32_t minLevel(std::uint32_t cluster) const { return minLevel_[cluster]; }
  std::uint32_t maxLevel(std::uint32_t cluster) const { return maxLevel_[cluster]; }
  bool mixedLevel(std::uint32_t cluster) const { return maxLevel_[cluster] != minLevel_[cluster]; }
  bool singleton(VertexId v) const { return members_[clusterOf_[v]].size() == 1; }
  std::size_t numVertices() const { return clusterOf_.size(); }

  // Moves the singleton u into the given cluster.
  void join(VertexId u, std::uint32_t cluster);
  void leave(VertexId u);  // undoes the most recent join of u

  // Non-singleton clusters, members ascending, ordered by smallest member.
  std::vector<std::vector<VertexId>> nonSingletonClusters() const;

 private:
  std::vector<std::uint32_t> clusterOf_;
  std::vector<std::vector<VertexId>> members_;
  std::vector<std::uint32_t> levels_;
  std::vector<std::uint32_t> minLevel_;
  std::vector<std::uint32_t> maxLevel_;
};

// BFS over the mixed-level cluster that holds the candidate. Starts from its
// members at the lower level t, follows successors (predecessors for
// reversed levels), enters other clusters through their level-t members and
// rejects if a successor inside the candidate cluster is reached from outside.
bool clusterCycleCheck(const DirectedHypergraph& hg, const Clustering& clustering, std::uint32_t candidate,
                       LevelDirection direction);

struct ClusteringOptions {
  Weight maxClusterWeight = 0;  // 0: unlimited
  ContractionMode mode = ContractionMode::SingleHead;
};

// Every assignment in `constraints` must agree for two vertices to share a
// cluster (the initial partition, or both parents during recombination).
Clustering computeClustering(const DirectedHypergraph& hg, std::span<const std::vector<BlockId>> constraints,
                             const std::vector<std::uint32_t>& levels, LevelDirection direction,
                             const ClusteringOptions& options);

struct CoarseningConfig {
  // Stop once fewer than `limit` vertices remain; 0 runs until a round finds
  // no non-singleton cluster.
  std::size_t limit = 0;
  Weight maxClusterWeight = 0;  // 0: unlimited
  LevelDirection firstDirection = LevelDirection::Forward;
};

// ceil(c(V) / limit), or 0 (unlimited) for limit 0.
Weight defaultMaxClusterWeight(const DirectedHypergraph& hg, std::size_t limit);

struct CoarseningResult {
  std::vector<ContractionMemento> mementos;  // in contraction order
  std::size_t rounds = 0;
};

// Contracts hg in place, pair by pair; undo with hg.uncontract in reverse.
CoarseningResult coarsen(DirectedHypergraph& hg, std::span<const std::vector<BlockId>> constraints,
                         const CoarseningConfig& config);

}  // namespace dahp
