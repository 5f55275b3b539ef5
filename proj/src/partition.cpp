// partition.cpp
#include "dahp/partition.hpp"

#include <cmath>
#include <string>

namespace dahp {

Partition::Partition(const DirectedHypergraph& hg, BlockId k, std::vector<BlockId> assignment)
    : k_(k), assignment_(std::move(assignment)) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (assignment_.size() != hg.numVertices()) {
    throw Error(ErrorCode::PartitionIncomplete, "assignment has " + std::to_string(assignment_.size()) +
                                                    " entries, expected " + std::to_string(hg.numVertices()));
  }
  blockWeight_.assign(k_, 0);
  blockSize_.assign(k_, 0);
  for (VertexId v = 0; v < hg.numVertices(); ++v) {
    if (!hg.vertexEnabled(v)) continue;
    const BlockId b = assignment_[v];
    if (b < 0 || b >= k_) {
      throw Error(ErrorCode::PartitionIncomplete, "vertex " + std::to_string(v) + " has block " + std::to_string(b));
    }
    blockWeight_[b] += hg.vertexWeight(v);
    ++blockSize_[b];
  }
  const std::size_t cells = hg.numNets() * static_cast<std::size_t>(k_);
  tailCount_.assign(cells, 0);
  headCount_.assign(cells, 0);
  connectivity_.assign(hg.numNets(), 0);
  for (NetId e = 0; e < hg.numNets(); ++e) recountNet(hg, e);
}

void Partition::recountNet(const DirectedHypergraph& hg, NetId e) {
  const Weight before = hg.netEnabled(e) && connectivity_[e] > 0 ? (connectivity_[e] - 1.0) : 0.0;
  for (BlockId b = 0; b < k_; ++b) {
    tailCount_[index(e, b)] = 0;
    headCount_[index(e, b)] = 0;
  }
  std::uint32_t lambda = 0;
  for (const Pin& p : hg.pins(e)) {
    const std::size_t i = index(e, assignment_[p.vertex]);
    if (tailCount_[i] + headCount_[i] == 0) ++lambda;
    if (p.role == PinRole::Tail) {
      ++tailCount_[i];
    } else {
      ++headCount_[i];
    }
  }
  connectivity_[e] = lambda;
  const Weight after = hg.netEnabled(e) && lambda > 0 ? (lambda - 1.0) : 0.0;
  km1_ += (after - before) * hg.netWeight(e);
}

void Partition::move(const DirectedHypergraph& hg, VertexId v, BlockId to) {
  const BlockId from = assignment_[v];
  if (from == to) return;
  const Weight w = hg.vertexWeight(v);
  blockWeight_[from] -= w;
  blockWeight_[to] += w;
  --blockSize_[from];
  ++blockSize_[to];
  assignment_[v] = to;

  for (const NetId e : hg.incidentNets(v)) {
    const auto role = hg.roleIn(e, v);
    auto& counts = *role == PinRole::Tail ? tailCount_ : headCount_;
    const std::size_t iFrom = index(e, from);
    const std::size_t iTo = index(e, to);
    --counts[iFrom];
    ++counts[iTo];
    Weight delta = 0;
    if (tailCount_[iFrom] + headCount_[iFrom] == 0) {
      --connectivity_[e];
      delta -= 1;
    }
    if (tailCount_[iTo] + headCount_[iTo] == 1) {
      ++connectivity_[e];
      delta += 1;
    }
    if (hg.netEnabled(e)) km1_ += delta * hg.netWeight(e);
  }
}

void Partition::uncontract(const DirectedHypergraph& hg, const ContractionMemento& m) {
  const BlockId b = assignment_[m.survivor];
  assignment_[m.removed] = b;
  // Block weight is unchanged: the survivor's weight was split between two
  // vertices of the same block.
  ++blockSize_[b];
  for (const auto& change : m.changes) {
    if (change.kind == ContractionMemento::Kind::RemovedVFromE) {
      recountNet(hg, change.net);
    }
  }
}

bool Partition::consistentWith(const DirectedHypergraph& hg) const {
  Partition fresh(hg, k_, assignment_);
  if (fresh.blockSize_ != blockSize_) return false;
  for (BlockId b = 0; b < k_; ++b) {
    if (std::abs(fresh.blockWeight_[b] - blockWeight_[b]) > 1e-9 * (1 + std::abs(blockWeight_[b]))) return false;
  }
  if (fresh.tailCount_ != tailCount_ || fresh.headCount_ != headCount_) return false;
  if (fresh.connectivity_ != connectivity_) return false;
  return std::abs(fresh.km1_ - km1_) <= 1e-9 * (1 + std::abs(km1_));
}

}  // namespace dahp
