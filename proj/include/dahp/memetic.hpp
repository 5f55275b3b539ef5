// memetic.hpp - steady-state evolutionary search over acyclic partitions
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dahp/driver.hpp"

namespace dahp {

struct Individual {
  BlockId k = 0;
  std::vector<BlockId> assignment;
  Weight fitness = 0;
  // Cut nets with multiplicity lambda(e) - 1, sorted by net id.
  std::vector<std::pair<NetId, std::uint32_t>> cutMultiset;
};

Individual makeIndividual(const DirectedHypergraph& hg, std::vector<BlockId> assignment, BlockId k);

// floor(delta * t / tI) clamped to [3, 50].
std::size_t populationSize(double timeLimit, double timePerIndividual, double delta);

// Size of the multiset symmetric difference of the cut multisets.
std::size_t distance(const Individual& a, const Individual& b);

// Coarsens until no contraction is possible while only merging vertices on
// which both parents agree, starts from the fitter parent and refines with
// k-way FM. Throws IncompatibleParents.
Individual recombine(const DirectedHypergraph& hg, const Individual& a, const Individual& b,
                     const PartitionerConfig& config);

// V-cycle seeded with the individual's own partition.
Individual mutateVcycle(const DirectedHypergraph& hg, const Individual& individual, const PartitionerConfig& config);

// Fresh multilevel partition (seeded by `seed`) recombined with the
// individual; the fresh partition is the starting point at the coarsest level.
Individual mutateNewAndRecombine(const DirectedHypergraph& hg, const Individual& individual,
                                 const PartitionerConfig& config, std::uint64_t seed);

struct MemeticConfig {
  std::optional<double> timeLimit;            // seconds
  std::optional<std::size_t> maxGenerations;  // deterministic budget
  std::optional<std::size_t> populationSize;  // overrides the sizing rule
  double delta = 0.15;
  double recombineProbability = 0.7;
  double mutationVcycleProbability = 0.15;  // remaining mass goes to the second mutation
  std::function<void(const std::string&)> log;
};

struct EvolutionResult {
  Individual best;
  std::vector<Weight> bestTrace;  // best fitness after each generation
  std::size_t populationSize = 0;
  std::size_t generations = 0;
};

// Initial population from multilevel runs with distinct seeds, then one
// offspring per generation until the time or generation budget runs out.
// With only a generation budget the population size uses the generation
// count in place of t / tI. Throws TimeBudgetTooSmall.
EvolutionResult evolve(const DirectedHypergraph& hg, const PartitionerConfig& config, const MemeticConfig& memetic);

}  // namespace dahp
