// driver.hpp - multilevel bipartitioning, recursive bisection and V-cycles
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dahp/analysis.hpp"
#include "dahp/coarsening.hpp"
#include "dahp/hypergraph.hpp"
#include "dahp/initial_partitioning.hpp"
#include "dahp/refinement.hpp"

namespace dahp {

struct PartitionerConfig {
  BlockId k = 2;
  double epsilon = 0.03;
  std::uint64_t seed = 0;
  IpConfig ip;
  std::size_t contractionLimitPerBlock = 160;  // coarsening stops below this times k
  FmConfig fm;
};

// Vertices of one block with every net restricted to its in-block pins. Nets
// with fewer than two in-block pins are dropped; nets that lose all heads or
// all tails become direction-less. originalIds[i] is the id of sub-vertex i.
struct InducedSubhypergraph {
  DirectedHypergraph hg;
  std::vector<VertexId> originalIds;
};
InducedSubhypergraph inducedSubhypergraph(const DirectedHypergraph& hg, const std::vector<BlockId>& assignment,
                                          BlockId block);

// Coarsens a copy of hg with the given same-block constraints, projects
// `initial` to the coarsest level, runs one global FM pass there and a
// localized pass after every uncontraction. Returns the refined assignment.
std::vector<BlockId> multilevelRefine(const DirectedHypergraph& hg, std::span<const std::vector<BlockId>> constraints,
                                      const std::vector<BlockId>& initial, BlockId k,
                                      const BalanceConstraint& balance, const CoarseningConfig& coarsening,
                                      const FmConfig& fm);

// IP on the full hypergraph, coarsening restricted to its blocks and 2-way FM
// during uncoarsening.
std::vector<BlockId> bipartition(const DirectedHypergraph& hg, const BalanceConstraint& balance,
                                 const PartitionerConfig& config, std::uint64_t seed);

// Per-side limits for splitting a sub-hypergraph of weight c into k0 + k1
// final blocks so that every final block can stay below globalMax.
BalanceConstraint bisectionBalance(Weight subWeight, BlockId k0, BlockId k1, Weight globalMax);

// Splits a (sub-)hypergraph into two sides; used by recursive bisection.
using Bisector = std::function<std::vector<BlockId>(const DirectedHypergraph&, const BalanceConstraint&,
                                                    std::uint64_t seed)>;

// Recursive bisection into k blocks (ceil/floor split of k).
std::vector<BlockId> recursiveBisection(const DirectedHypergraph& hg, BlockId k, double epsilon, std::uint64_t seed,
                                        const Bisector& bisector);

// One V-cycle: coarsening restricted to the blocks of `assignment`, then
// k-way FM during uncoarsening. Never worsens (overload, km1).
std::vector<BlockId> vcycle(const DirectedHypergraph& hg, const std::vector<BlockId>& assignment,
                            const PartitionerConfig& config);

// Recursive multilevel bisection followed by one k-way V-cycle. Throws
// KTooLargeForInstance, VerificationFailed.
std::vector<BlockId> partitionKway(const DirectedHypergraph& hg, const PartitionerConfig& config);

// Baselines.
std::vector<BlockId> topoKWay(const DirectedHypergraph& hg, const PartitionerConfig& config);
std::vector<BlockId> topoRB(const DirectedHypergraph& hg, const PartitionerConfig& config);

BalanceConstraint globalBalance(const DirectedHypergraph& hg, BlockId k, double epsilon);

// Throws VerificationFailed unless the partition is acyclic with nonempty blocks.
PartitionReport verifyOrThrow(const DirectedHypergraph& hg, const std::vector<BlockId>& assignment, BlockId k,
                              double epsilon);

}  // namespace dahp
