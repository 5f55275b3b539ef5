// hypergraph.cpp - construction, neighborhood queries and n-level contraction
#include "dahp/hypergraph.hpp"

#include <algorithm>
#include <string>

namespace dahp {

std::string_view toString(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicatePin: return "DuplicatePin";
    case ErrorCode::EmptyHeadOrTail: return "EmptyHeadOrTail";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::IdOutOfRange: return "IdOutOfRange";
    case ErrorCode::RoleConflict: return "RoleConflict";
    case ErrorCode::VertexDisabled: return "VertexDisabled";
    case ErrorCode::OutOfOrderUncontract: return "OutOfOrderUncontract";
    case ErrorCode::CyclicInput: return "CyclicInput";
    case ErrorCode::PartitionIncomplete: return "PartitionIncomplete";
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::NoTarget: return "NoTarget";
    case ErrorCode::IncompatibleParents: return "IncompatibleParents";
    case ErrorCode::TimeBudgetTooSmall: return "TimeBudgetTooSmall";
    case ErrorCode::KTooLargeForInstance: return "KTooLargeForInstance";
    case ErrorCode::MissingCell: return "MissingCell";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ExternalFileMissing: return "ExternalFileMissing";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

DirectedHypergraph DirectedHypergraph::build(std::vector<Weight> vertexWeights,
                                             const std::vector<NetSpec>& nets,
                                             BuildOptions options) {
  DirectedHypergraph hg;
  const std::size_t n = vertexWeights.size();
  for (std::size_t v = 0; v < n; ++v) {
    if (!(vertexWeights[v] > 0)) {
      throw Error(ErrorCode::NonPositiveWeight, "vertex " + std::to_string(v));
    }
  }
  hg.vertexWeight_ = std::move(vertexWeights);
  hg.incidence_.resize(n);
  hg.vertexEnabled_.assign(n, 1);
  hg.numEnabledVertices_ = n;

  hg.pins_.reserve(nets.size());
  std::vector<std::size_t> seen(n, static_cast<std::size_t>(-1));
  for (std::size_t e = 0; e < nets.size(); ++e) {
    const NetSpec& spec = nets[e];
    const std::string where = "net " + std::to_string(e);
    if (!(spec.weight > 0)) throw Error(ErrorCode::NonPositiveWeight, where);
    if (spec.tails.empty() && !options.allowDirectionlessNets) {
      throw Error(ErrorCode::EmptyHeadOrTail, where + " has no tails");
    }
    if (spec.heads.empty() && !options.allowDirectionlessNets) {
      throw Error(ErrorCode::EmptyHeadOrTail, where + " has no heads");
    }
    if (spec.heads.size() + spec.tails.size() < 2) {
      throw Error(ErrorCode::EmptyHeadOrTail, where + " has fewer than two pins");
    }
    std::vector<Pin> pins;
    pins.reserve(spec.heads.size() + spec.tails.size());
    auto addPin = [&](VertexId v, PinRole role) {
      if (v >= n) throw Error(ErrorCode::IdOutOfRange, where + " pin " + std::to_string(v));
      if (seen[v] == e) throw Error(ErrorCode::DuplicatePin, where + " pin " + std::to_string(v));
      seen[v] = e;
      pins.push_back({v, role});
    };
    for (VertexId v : spec.heads) addPin(v, PinRole::Head);
    for (VertexId v : spec.tails) addPin(v, PinRole::Tail);
    for (const Pin& p : pins) hg.incidence_[p.vertex].push_back(static_cast<NetId>(e));
    hg.headCount_.push_back(static_cast<std::uint32_t>(spec.heads.size()));
    hg.pins_.push_back(std::move(pins));
    hg.netWeight_.push_back(spec.weight);
  }
  hg.netEnabled_.assign(nets.size(), 1);
  return hg;
}

Weight DirectedHypergraph::totalWeight() const {
  Weight total = 0;
  for (std::size_t v = 0; v < numVertices(); ++v) {
    if (vertexEnabled_[v]) total += vertexWeight_[v];
  }
  return total;
}

std::size_t DirectedHypergraph::maxHeadsPerNet() const {
  std::size_t result = 0;
  for (std::size_t e = 0; e < numNets(); ++e) {
    if (netEnabled_[e]) result = std::max<std::size_t>(result, headCount_[e]);
  }
  return result;
}

namespace {
std::vector<VertexId> sortedUnique(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}
}  // namespace

std::vector<VertexId> DirectedHypergraph::successors(VertexId v) const {
  std::vector<VertexId> out;
  forEachSuccessor(v, [&](VertexId s, NetId) { out.push_back(s); });
  return sortedUnique(std::move(out));
}

std::vector<VertexId> DirectedHypergraph::predecessors(VertexId v) const {
  std::vector<VertexId> out;
  forEachPredecessor(v, [&](VertexId p, NetId) { out.push_back(p); });
  return sortedUnique(std::move(out));
}

std::vector<VertexId> DirectedHypergraph::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (const NetId e : incidence_[v]) {
    if (!netEnabled_[e]) continue;
    for (const Pin& p : pins_[e]) {
      if (p.vertex != v) out.push_back(p.vertex);
    }
  }
  return sortedUnique(std::move(out));
}

Weight DirectedHypergraph::heavyEdgeRating(VertexId u, VertexId v) const {
  // Iterate the smaller incidence list and probe the pins of each net.
  const VertexId small = incidence_[u].size() <= incidence_[v].size() ? u : v;
  const VertexId other = small == u ? v : u;
  Weight rating = 0;
  for (const NetId e : incidence_[small]) {
    if (!netEnabled_[e]) continue;
    if (roleIn(e, other)) {
      rating += netWeight_[e] / static_cast<Weight>(pins_[e].size() - 1);
    }
  }
  return rating;
}

std::optional<PinRole> DirectedHypergraph::roleIn(NetId e, VertexId v) const {
  for (const Pin& p : pins_[e]) {
    if (p.vertex == v) return p.role;
  }
  return std::nullopt;
}

bool DirectedHypergraph::rolesCompatible(VertexId u, VertexId v, ContractionMode mode) const {
  for (const NetId e : incidence_[v]) {
    const auto roleU = roleIn(e, u);
    if (!roleU) continue;
    const auto roleV = roleIn(e, v);
    if (*roleU == *roleV) continue;
    if (mode == ContractionMode::MultiHead || headCount_[e] != 1) return false;
  }
  return true;
}

bool DirectedHypergraph::canContract(VertexId u, VertexId v, ContractionMode mode) const {
  if (u >= numVertices() || v >= numVertices() || u == v) return false;
  if (!vertexEnabled_[u] || !vertexEnabled_[v]) return false;
  return rolesCompatible(u, v, mode);
}

ContractionMemento DirectedHypergraph::contract(VertexId u, VertexId v, ContractionMode mode) {
  if (u >= numVertices() || v >= numVertices()) {
    throw Error(ErrorCode::IdOutOfRange, "contract(" + std::to_string(u) + ", " + std::to_string(v) + ")");
  }
  if (u == v || !vertexEnabled_[u] || !vertexEnabled_[v]) {
    throw Error(ErrorCode::VertexDisabled, "contract(" + std::to_string(u) + ", " + std::to_string(v) + ")");
  }
  if (!rolesCompatible(u, v, mode)) {
    throw Error(ErrorCode::RoleConflict, "contract(" + std::to_string(u) + ", " + std::to_string(v) + ")");
  }

  ContractionMemento m;
  m.survivor = u;
  m.removed = v;
  m.weightDelta = vertexWeight_[v];
  m.survivorWeightBefore = vertexWeight_[u];
  m.changes.reserve(incidence_[v].size());

  for (const NetId e : incidence_[v]) {
    std::vector<Pin>& pins = pins_[e];
    std::uint32_t posV = 0;
    std::int64_t posU = -1;
    for (std::uint32_t i = 0; i < pins.size(); ++i) {
      if (pins[i].vertex == v) posV = i;
      if (pins[i].vertex == u) posU = i;
    }
    const PinRole roleV = pins[posV].role;
    if (posU < 0) {
      pins[posV].vertex = u;
      incidence_[u].push_back(e);
      m.changes.push_back({e, ContractionMemento::Kind::ReplacedVInE, posV, roleV, false});
      continue;
    }
    bool roleChanged = false;
    if (roleV == PinRole::Head && pins[posU].role == PinRole::Tail) {
      pins[posU].role = PinRole::Head;
      roleChanged = true;
    } else if (roleV == PinRole::Head) {
      --headCount_[e];
    }
    // Swap-remove; the memento's position lets uncontract restore pin order.
    pins[posV] = pins.back();
    pins.pop_back();
    m.changes.push_back({e, ContractionMemento::Kind::RemovedVFromE, posV, roleV, roleChanged});
    if (pins.size() < 2 && netEnabled_[e]) {
      netEnabled_[e] = 0;
      m.disabledNets.push_back(e);
    }
  }

  vertexWeight_[u] += vertexWeight_[v];
  vertexEnabled_[v] = 0;
  --numEnabledVertices_;
  m.depth = ++depth_;
  return m;
}

void DirectedHypergraph::uncontract(const ContractionMemento& m) {
  if (m.depth != depth_ || depth_ == 0 || vertexEnabled_[m.removed] || !vertexEnabled_[m.survivor]) {
    throw Error(ErrorCode::OutOfOrderUncontract,
                "memento depth " + std::to_string(m.depth) + ", current depth " + std::to_string(depth_));
  }
  const VertexId u = m.survivor;
  const VertexId v = m.removed;

  for (const NetId e : m.disabledNets) netEnabled_[e] = 1;

  for (auto it = m.changes.rbegin(); it != m.changes.rend(); ++it) {
    std::vector<Pin>& pins = pins_[it->net];
    if (it->kind == ContractionMemento::Kind::ReplacedVInE) {
      pins[it->position].vertex = v;
      incidence_[u].pop_back();
      continue;
    }
    if (it->survivorRoleChanged) {
      for (Pin& p : pins) {
        if (p.vertex == u) p.role = PinRole::Tail;
      }
    } else if (it->removedRole == PinRole::Head) {
      ++headCount_[it->net];
    }
    pins.push_back({v, it->removedRole});
    std::swap(pins[it->position], pins.back());
  }

  vertexWeight_[u] = m.survivorWeightBefore;
  vertexEnabled_[v] = 1;
  ++numEnabledVertices_;
  --depth_;
}

}  // namespace dahp
