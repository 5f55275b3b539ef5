// driver.cpp
#include "dahp/driver.hpp"

#include <algorithm>
#include <cmath>

namespace dahp {

namespace {

std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void checkK(const DirectedHypergraph& hg, BlockId k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (static_cast<std::size_t>(k) > hg.numEnabledVertices()) {
    throw Error(ErrorCode::KTooLargeForInstance, "k = " + std::to_string(k) + " exceeds " +
                                                     std::to_string(hg.numEnabledVertices()) + " vertices");
  }
}

// Side weights proportional to the number of final blocks on each side; the
// bisection balance stores those counts as minimum sizes.
std::vector<Weight> proportionalTargets(const DirectedHypergraph& hg, const BalanceConstraint& balance) {
  const auto total = static_cast<Weight>(balance.minSize[0] + balance.minSize[1]);
  return {hg.totalWeight() * static_cast<Weight>(balance.minSize[0]) / total,
          hg.totalWeight() * static_cast<Weight>(balance.minSize[1]) / total};
}

}  // namespace

BalanceConstraint globalBalance(const DirectedHypergraph& hg, BlockId k, double epsilon) {
  return BalanceConstraint::uniform(k, maxBlockWeight(hg.totalWeight(), k, epsilon));
}

PartitionReport verifyOrThrow(const DirectedHypergraph& hg, const std::vector<BlockId>& assignment, BlockId k,
                              double epsilon) {
  const PartitionReport report = verifyPartition(hg, assignment, k, epsilon);
  if (!report.acyclic) throw Error(ErrorCode::VerificationFailed, "quotient graph is cyclic");
  if (!report.blocksNonempty) throw Error(ErrorCode::VerificationFailed, "partition has an empty block");
  return report;
}

InducedSubhypergraph inducedSubhypergraph(const DirectedHypergraph& hg, const std::vector<BlockId>& assignment,
                                          BlockId block) {
  InducedSubhypergraph result;
  std::vector<VertexId> local(hg.numVertices(), 0);
  std::vector<Weight> weights;
  for (VertexId v = 0; v < hg.numVertices(); ++v) {
    if (!hg.vertexEnabled(v) || assignment[v] != block) continue;
    local[v] = static_cast<VertexId>(result.originalIds.size());
    result.originalIds.push_back(v);
    weights.push_back(hg.vertexWeight(v));
  }
  std::vector<NetSpec> nets;
  for (NetId e = 0; e < hg.numNets(); ++e) {
    if (!hg.netEnabled(e)) continue;
    NetSpec spec;
    spec.weight = hg.netWeight(e);
    for (const Pin& p : hg.pins(e)) {
      if (assignment[p.vertex] != block) continue;
      (p.role == PinRole::Head ? spec.heads : spec.tails).push_back(local[p.vertex]);
    }
    if (spec.heads.size() + spec.tails.size() < 2) continue;
    if (spec.heads.empty() || spec.tails.empty()) {
      spec.tails.insert(spec.tails.end(), spec.heads.begin(), spec.heads.end());
      spec.heads.clear();
      std::sort(spec.tails.begin(), spec.tails.end());
    }
    nets.push_back(std::move(spec));
  }
  result.hg = DirectedHypergraph::build(std::move(weights), std::move(nets), BuildOptions{true});
  return result;
}

std::vector<BlockId> multilevelRefine(const DirectedHypergraph& hg, std::span<const std::vector<BlockId>> constraints,
                                      const std::vector<BlockId>& initial, BlockId k,
                                      const BalanceConstraint& balance, const CoarseningConfig& coarsening,
                                      const FmConfig& fm) {
  DirectedHypergraph work = hg;
  const CoarseningResult hierarchy = coarsen(work, constraints, coarsening);
  Partition partition(work, k, initial);

  auto uncoarsen = [&](auto& refiner) {
    refiner.refine();
    for (auto it = hierarchy.mementos.rbegin(); it != hierarchy.mementos.rend(); ++it) {
      refiner.beforeUncontract(*it);
      work.uncontract(*it);
      partition.uncontract(work, *it);
      refiner.afterUncontract(*it);
      const VertexId seeds[2] = {it->survivor, it->removed};
      refiner.refine(seeds);
    }
  };
  if (k == 2) {
    TwoWayFm refiner(work, partition, balance, fm);
    uncoarsen(refiner);
  } else {
    KWayFm refiner(work, partition, balance, fm);
    uncoarsen(refiner);
  }
  return partition.assignment();
}

std::vector<BlockId> bipartition(const DirectedHypergraph& hg, const BalanceConstraint& balance,
                                 const PartitionerConfig& config, std::uint64_t seed) {
  std::vector<BlockId> initial;
  if (config.ip.scheme == IpScheme::TopoGreedy) {
    initial = topoGreedyAssignment(hg, proportionalTargets(hg, balance), balance.minSize);
  } else {
    IpConfig ip = config.ip;
    ip.seed = seed;
    ip.fm = config.fm;
    initial = undirectedBipartition(hg, balance, ip).assignment;
  }
  CoarseningConfig coarsening;
  coarsening.limit = config.contractionLimitPerBlock * 2;
  coarsening.maxClusterWeight = defaultMaxClusterWeight(hg, coarsening.limit);
  return multilevelRefine(hg, std::span<const std::vector<BlockId>>(&initial, 1), initial, 2, balance, coarsening,
                          config.fm);
}

BalanceConstraint bisectionBalance(Weight subWeight, BlockId k0, BlockId k1, Weight globalMax) {
  const BlockId ks = k0 + k1;
  const double depth = std::ceil(std::log2(static_cast<double>(ks)));
  double eps = std::pow(globalMax * ks / subWeight, 1.0 / std::max(1.0, depth)) - 1.0;
  eps = std::max(0.0, eps);
  BalanceConstraint balance;
  for (const BlockId ki : {k0, k1}) {
    const Weight share = subWeight * ki / ks;
    Weight limit = std::max((1.0 + eps) * share, std::ceil(share));
    limit = std::min(limit, std::max(globalMax * ki, std::ceil(share)));
    balance.maxWeight.push_back(limit);
    balance.minSize.push_back(static_cast<std::size_t>(ki));
  }
  return balance;
}

namespace {

void bisectRecursively(const DirectedHypergraph& hg, const std::vector<VertexId>& originalIds, BlockId k,
                       BlockId firstBlock, Weight globalMax, std::uint64_t seed, const Bisector& bisector,
                       std::vector<BlockId>& out) {
  if (k == 1) {
    for (const VertexId v : originalIds) out[v] = firstBlock;
    return;
  }
  const BlockId k0 = (k + 1) / 2;
  const BlockId k1 = k / 2;
  const BalanceConstraint balance = bisectionBalance(hg.totalWeight(), k0, k1, globalMax);
  const std::vector<BlockId> sides = bisector(hg, balance, seed);

  const BlockId sideK[2] = {k0, k1};
  const BlockId sideFirst[2] = {firstBlock, firstBlock + k0};
  for (BlockId side = 0; side < 2; ++side) {
    InducedSubhypergraph sub = inducedSubhypergraph(hg, sides, side);
    if (sub.originalIds.size() < static_cast<std::size_t>(sideK[side])) {
      throw Error(ErrorCode::VerificationFailed, "bisection left too few vertices for the requested blocks");
    }
    std::vector<VertexId> ids;
    ids.reserve(sub.originalIds.size());
    for (const VertexId v : sub.originalIds) ids.push_back(originalIds[v]);
    bisectRecursively(sub.hg, ids, sideK[side], sideFirst[side], globalMax, mixSeed(seed, side), bisector, out);
  }
}

}  // namespace

std::vector<BlockId> recursiveBisection(const DirectedHypergraph& hg, BlockId k, double epsilon, std::uint64_t seed,
                                        const Bisector& bisector) {
  checkK(hg, k);
  std::vector<BlockId> out(hg.numVertices(), kInvalidBlock);
  std::vector<VertexId> ids;
  for (VertexId v = 0; v < hg.numVertices(); ++v) {
    if (hg.vertexEnabled(v)) ids.push_back(v);
  }
  const Weight globalMax = maxBlockWeight(hg.totalWeight(), k, epsilon);
  if (ids.size() == hg.numVertices()) {
    bisectRecursively(hg, ids, k, 0, globalMax, seed, bisector, out);
  } else {
    // Work on a compacted copy so that sub-hypergraph ids stay dense.
    std::vector<BlockId> all(hg.numVertices(), 0);
    InducedSubhypergraph sub = inducedSubhypergraph(hg, all, 0);
    bisectRecursively(sub.hg, ids, k, 0, globalMax, seed, bisector, out);
  }
  return out;
}

std::vector<BlockId> vcycle(const DirectedHypergraph& hg, const std::vector<BlockId>& assignment,
                            const PartitionerConfig& config) {
  CoarseningConfig coarsening;
  coarsening.limit = config.contractionLimitPerBlock * static_cast<std::size_t>(config.k);
  coarsening.maxClusterWeight = defaultMaxClusterWeight(hg, coarsening.limit);
  const BalanceConstraint balance = globalBalance(hg, config.k, config.epsilon);
  return multilevelRefine(hg, std::span<const std::vector<BlockId>>(&assignment, 1), assignment, config.k, balance,
                          coarsening, config.fm);
}

std::vector<BlockId> partitionKway(const DirectedHypergraph& hg, const PartitionerConfig& config) {
  checkK(hg, config.k);
  std::vector<BlockId> assignment;
  if (config.k == 1) {
    assignment.assign(hg.numVertices(), 0);
  } else {
    const Bisector bisector = [&config](const DirectedHypergraph& sub, const BalanceConstraint& balance,
                                        std::uint64_t seed) { return bipartition(sub, balance, config, seed); };
    assignment = recursiveBisection(hg, config.k, config.epsilon, config.seed, bisector);
    assignment = vcycle(hg, assignment, config);
  }
  verifyOrThrow(hg, assignment, config.k, config.epsilon);
  return assignment;
}

std::vector<BlockId> topoKWay(const DirectedHypergraph& hg, const PartitionerConfig& config) {
  checkK(hg, config.k);
  Partition partition = topoGreedyKway(hg, config.k);
  if (config.k > 1) {
    KWayFm fm(hg, partition, globalBalance(hg, config.k, config.epsilon), config.fm);
    fm.refine();
  }
  verifyOrThrow(hg, partition.assignment(), config.k, config.epsilon);
  return partition.assignment();
}

std::vector<BlockId> topoRB(const DirectedHypergraph& hg, const PartitionerConfig& config) {
  checkK(hg, config.k);
  std::vector<BlockId> assignment;
  if (config.k == 1) {
    assignment.assign(hg.numVertices(), 0);
  } else {
    const Bisector bisector = [&config](const DirectedHypergraph& sub, const BalanceConstraint& balance,
                                        std::uint64_t) {
      Partition partition(sub, 2, topoGreedyAssignment(sub, proportionalTargets(sub, balance), balance.minSize));
      TwoWayFm fm(sub, partition, balance, config.fm);
      fm.refine();
      return partition.assignment();
    };
    assignment = recursiveBisection(hg, config.k, config.epsilon, config.seed, bisector);
  }
  verifyOrThrow(hg, assignment, config.k, config.epsilon);
  return assignment;
}

}  // namespace dahp
