// testkit.hpp - random instances and exhaustive oracles for tests
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "dahp/hypergraph.hpp"

namespace dahp::testkit {

// Vertices are laid out in layers (ids layer by layer). Every net takes its
// tails from layers up to some layer l and its heads from the next one or
// two layers, so the result is acyclic by construction.
struct RandomDahSpec {
  std::size_t layers = 4;
  std::size_t width = 4;
  double netProbability = 0.5;  // per vertex, for both a forward and a backward net
  std::size_t maxTails = 3;
  std::size_t maxHeads = 1;
  std::uint64_t seed = 0;
  bool unitWeights = true;
  int maxVertexWeight = 5;  // used unless unitWeights
  int maxNetWeight = 1;
};

DirectedHypergraph randomDah(const RandomDahSpec& spec);

// Everything observable through the accessors, for round-trip comparisons.
struct HypergraphSnapshot {
  std::vector<Weight> vertexWeight;
  std::vector<char> vertexEnabled;
  std::vector<std::vector<NetId>> incidence;
  std::vector<Weight> netWeight;
  std::vector<char> netEnabled;
  std::vector<std::vector<Pin>> pins;
  std::vector<std::size_t> headCount;

  friend bool operator==(const HypergraphSnapshot&, const HypergraphSnapshot&) = default;
};

HypergraphSnapshot snapshot(const DirectedHypergraph& hg);

// Random spec drawn from broad ranges with at most maxVertices vertices.
RandomDahSpec randomSpec(std::mt19937_64& rng, std::size_t maxVertices, bool allowWeights);

struct BruteForceResult {
  double km1 = 0;
  std::vector<BlockId> assignment;
};

// Enumerates all assignments (labels canonicalized by first occurrence) with
// partial balance pruning; keeps balanced, acyclic partitions with nonempty
// blocks. nullopt when none exists. Throws TooLarge (k^n > 1e7), CyclicInput.
std::optional<BruteForceResult> bruteForceOptimum(const DirectedHypergraph& hg, BlockId k, double epsilon);

// Simultaneously contracts every cluster (clusterOf[v] for enabled v) on an
// edge-expanded copy and reports whether the result is acyclic.
bool contractAndCheck(const DirectedHypergraph& hg, const std::vector<std::uint32_t>& clusterOf);

// Random clustering satisfying the level-span condition and the
// forbidden-edge condition between mixed-level clusters for the given levels.
std::vector<std::uint32_t> randomLevelClustering(const DirectedHypergraph& hg, const std::vector<std::uint32_t>& levels,
                                                 std::mt19937_64& rng);

// Checks both clustering conditions directly.
bool satisfiesClusterConditions(const DirectedHypergraph& hg, const std::vector<std::uint32_t>& levels,
                                const std::vector<std::uint32_t>& clusterOf);

}  // namespace dahp::testkit
