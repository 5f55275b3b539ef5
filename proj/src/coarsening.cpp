// coarsening.cpp
#include "dahp/coarsening.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace dahp {

Clustering::Clustering(const DirectedHypergraph& hg, std::vector<std::uint32_t> levels)
    : clusterOf_(hg.numVertices()),
      members_(hg.numVertices()),
      levels_(std::move(levels)),
      minLevel_(levels_),
      maxLevel_(levels_) {
  for (VertexId v = 0; v < hg.numVertices(); ++v) {
    clusterOf_[v] = v;
    members_[v] = {v};
  }
}

void Clustering::join(VertexId u, std::uint32_t cluster) {
  members_[clusterOf_[u]].clear();
  clusterOf_[u] = cluster;
  members_[cluster].push_back(u);
  minLevel_[cluster] = std::min(minLevel_[cluster], levels_[u]);
  maxLevel_[cluster] = std::max(maxLevel_[cluster], levels_[u]);
}

void Clustering::leave(VertexId u) {
  const std::uint32_t cluster = clusterOf_[u];
  auto& list = members_[cluster];
  list.erase(std::find(list.begin(), list.end(), u));
  minLevel_[cluster] = maxLevel_[cluster] = levels_[list.front()];
  for (const VertexId w : list) {
    minLevel_[cluster] = std::min(minLevel_[cluster], levels_[w]);
    maxLevel_[cluster] = std::max(maxLevel_[cluster], levels_[w]);
  }
  clusterOf_[u] = u;
  members_[u] = {u};
  minLevel_[u] = maxLevel_[u] = levels_[u];
}

std::vector<std::vector<VertexId>> Clustering::nonSingletonClusters() const {
  std::vector<std::vector<VertexId>> result;
  for (const auto& list : members_) {
    if (list.size() < 2) continue;
    result.push_back(list);
    std::sort(result.back().begin(), result.back().end());
  }
  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return result;
}

bool clusterCycleCheck(const DirectedHypergraph& hg, const Clustering& clustering, std::uint32_t candidate,
                       LevelDirection direction) {
  const std::uint32_t t = clustering.minLevel(candidate);
  std::vector<char> visited(clustering.numVertices(), 0);
  std::deque<VertexId> queue;
  auto enqueueCluster = [&](std::uint32_t cluster) {
    if (visited[cluster]) return;
    visited[cluster] = 1;
    for (const VertexId w : clustering.members(cluster)) {
      if (clustering.level(w) == t) queue.push_back(w);
    }
  };
  enqueueCluster(candidate);

  bool cycle = false;
  while (!queue.empty() && !cycle) {
    const VertexId x = queue.front();
    queue.pop_front();
    const bool xInside = clustering.clusterOf(x) == candidate;
    auto visit = [&](VertexId y, NetId) {
      if (cycle) return;
      const std::uint32_t cy = clustering.clusterOf(y);
      if (cy == candidate) {
        if (!xInside) cycle = true;
      } else {
        enqueueCluster(cy);
      }
    };
    if (direction == LevelDirection::Forward) {
      hg.forEachSuccessor(x, visit);
    } else {
      hg.forEachPredecessor(x, visit);
    }
  }
  return !cycle;
}

namespace {

bool sameConstraints(std::span<const std::vector<BlockId>> constraints, VertexId u, VertexId v) {
  return std::all_of(constraints.begin(), constraints.end(), [&](const auto& a) { return a[u] == a[v]; });
}

}  // namespace

Clustering computeClustering(const DirectedHypergraph& hg, std::span<const std::vector<BlockId>> constraints,
                             const std::vector<std::uint32_t>& levels, LevelDirection direction,
                             const ClusteringOptions& options) {
  Clustering clustering(hg, levels);
  const std::size_t n = hg.numVertices();
  std::vector<Weight> clusterWeight(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (hg.vertexEnabled(v)) clusterWeight[v] = hg.vertexWeight(v);
  }
  std::vector<Weight> rating(n, 0);
  std::vector<VertexId> touched;
  std::vector<std::pair<Weight, VertexId>> candidates;

  for (VertexId u = 0; u < n; ++u) {
    if (!hg.vertexEnabled(u) || !clustering.singleton(u)) continue;

    for (const NetId e : hg.incidentNets(u)) {
      if (!hg.netEnabled(e) || hg.netSize(e) < 2) continue;
      const Weight r = hg.netWeight(e) / static_cast<Weight>(hg.netSize(e) - 1);
      for (const Pin& p : hg.pins(e)) {
        if (p.vertex == u) continue;
        if (rating[p.vertex] == 0) touched.push_back(p.vertex);
        rating[p.vertex] += r;
      }
    }
    candidates.clear();
    for (const VertexId v : touched) {
      candidates.emplace_back(rating[v], v);
      rating[v] = 0;
    }
    touched.clear();
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });

    for (const auto& [r, v] : candidates) {
      if (!sameConstraints(constraints, u, v)) continue;
      const std::uint32_t cluster = clustering.clusterOf(v);
      const Weight combined = clusterWeight[cluster] + hg.vertexWeight(u);
      if (options.maxClusterWeight > 0 && combined > options.maxClusterWeight + 1e-9) continue;
      const std::uint32_t lo = std::min(clustering.minLevel(cluster), levels[u]);
      const std::uint32_t hi = std::max(clustering.maxLevel(cluster), levels[u]);
      if (hi - lo > 1) continue;
      const auto& members = clustering.members(cluster);
      if (!std::all_of(members.begin(), members.end(),
                       [&](VertexId w) { return hg.canContract(std::min(u, w), std::max(u, w), options.mode); })) {
        continue;
      }

      // Single attempt with the best admissible partner.
      clustering.join(u, cluster);
      if (clustering.mixedLevel(cluster) && !clusterCycleCheck(hg, clustering, cluster, direction)) {
        clustering.leave(u);
      } else {
        clusterWeight[cluster] = combined;
        clusterWeight[u] = 0;
      }
      break;
    }
  }
  return clustering;
}

Weight defaultMaxClusterWeight(const DirectedHypergraph& hg, std::size_t limit) {
  if (limit == 0) return 0;
  return std::ceil(hg.totalWeight() / static_cast<Weight>(limit));
}

CoarseningResult coarsen(DirectedHypergraph& hg, std::span<const std::vector<BlockId>> constraints,
                         const CoarseningConfig& config) {
  CoarseningResult result;
  const ClusteringOptions options{config.maxClusterWeight, hg.naturalContractionMode()};
  LevelDirection direction = config.firstDirection;
  auto belowLimit = [&] { return config.limit > 0 && hg.numEnabledVertices() < config.limit; };

  while (!belowLimit()) {
    const Clustering clustering =
        computeClustering(hg, constraints, computeToplevels(hg, direction), direction, options);
    const auto clusters = clustering.nonSingletonClusters();
    if (clusters.empty()) break;
    ++result.rounds;
    bool stopped = false;
    for (const auto& members : clusters) {
      for (std::size_t i = 1; i < members.size(); ++i) {
        if (belowLimit()) {
          stopped = true;
          break;
        }
        result.mementos.push_back(hg.contract(members.front(), members[i], options.mode));
      }
      if (stopped) break;
    }
    if (stopped) break;
    direction = opposite(direction);
  }
  return result;
}

}  // namespace dahp
