// hypergraph.hpp - directed hypergraph with reversible pairwise contraction
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dahp/types.hpp"

namespace dahp {

enum class PinRole : std::uint8_t { Tail, Head };

struct Pin {
  VertexId vertex;
  PinRole role;

  friend bool operator==(const Pin&, const Pin&) = default;
};

struct NetSpec {
  std::vector<VertexId> heads;
  std::vector<VertexId> tails;
  Weight weight = 1.0;
};

// SingleHead: a head and a tail of the same net may be merged when the net
// has exactly one head; the merged vertex keeps the head role.
// MultiHead: merged vertices must play the same role in every shared net.
enum class ContractionMode { SingleHead, MultiHead };

struct BuildOptions {
  // Allows nets without heads. Such nets carry no ordering constraint and
  // only count towards the objective (used for induced subhypergraphs).
  bool allowDirectionlessNets = false;
};

struct ContractionMemento {
  enum class Kind : std::uint8_t { ReplacedVInE, RemovedVFromE };

  struct NetChange {
    NetId net;
    Kind kind;
    std::uint32_t position;      // position of the removed vertex in pins(net)
    PinRole removedRole;         // role of the removed vertex in this net
    bool survivorRoleChanged;    // survivor went Tail -> Head (SingleHead only)
  };

  VertexId survivor = 0;
  VertexId removed = 0;
  Weight weightDelta = 0;
  Weight survivorWeightBefore = 0;
  std::vector<NetChange> changes;
  std::vector<NetId> disabledNets;
  std::size_t depth = 0;  // stack depth after this contraction was applied
};

class DirectedHypergraph {
 public:
  DirectedHypergraph() = default;

  static DirectedHypergraph build(std::vector<Weight> vertexWeights,
                                  const std::vector<NetSpec>& nets,
                                  BuildOptions options = {});

  std::size_t numVertices() const { return vertexWeight_.size(); }
  std::size_t numNets() const { return netWeight_.size(); }
  std::size_t numEnabledVertices() const { return numEnabledVertices_; }

  Weight vertexWeight(VertexId v) const { return vertexWeight_[v]; }
  Weight netWeight(NetId e) const { return netWeight_[e]; }
  bool vertexEnabled(VertexId v) const { return vertexEnabled_[v]; }
  bool netEnabled(NetId e) const { return netEnabled_[e]; }

  std::span<const Pin> pins(NetId e) const { return pins_[e]; }
  std::size_t netSize(NetId e) const { return pins_[e].size(); }
  std::size_t headCount(NetId e) const { return headCount_[e]; }
  std::size_t tailCount(NetId e) const { return pins_[e].size() - headCount_[e]; }
  // A net orders vertices only if it has at least one tail and one head.
  bool netIsDirected(NetId e) const { return headCount(e) > 0 && tailCount(e) > 0; }

  // Incident nets of v, including currently disabled ones.
  std::span<const NetId> incidentNets(VertexId v) const { return incidence_[v]; }

  // Sum of the weights of all enabled vertices.
  Weight totalWeight() const;
  std::size_t maxHeadsPerNet() const;
  ContractionMode naturalContractionMode() const {
    return maxHeadsPerNet() <= 1 ? ContractionMode::SingleHead : ContractionMode::MultiHead;
  }

  // Successors/predecessors with multiplicity: f(neighbor, net) is called once
  // for every (net, pin) pair that witnesses the relation.
  template <typename F>
  void forEachSuccessor(VertexId v, F&& f) const {
    forEachRelated(v, PinRole::Tail, f);
  }
  template <typename F>
  void forEachPredecessor(VertexId v, F&& f) const {
    forEachRelated(v, PinRole::Head, f);
  }

  // Deduplicated, ascending.
  std::vector<VertexId> successors(VertexId v) const;
  std::vector<VertexId> predecessors(VertexId v) const;
  std::vector<VertexId> neighbors(VertexId v) const;

  // Heavy-edge rating: sum over shared enabled nets of w(e) / (|e| - 1).
  Weight heavyEdgeRating(VertexId u, VertexId v) const;

  std::optional<PinRole> roleIn(NetId e, VertexId v) const;

  // Verifies the contraction preconditions without mutating anything.
  bool canContract(VertexId u, VertexId v, ContractionMode mode) const;

  ContractionMemento contract(VertexId u, VertexId v, ContractionMode mode);
  void uncontract(const ContractionMemento& memento);
  std::size_t contractionDepth() const { return depth_; }

 private:
  template <typename F>
  void forEachRelated(VertexId v, PinRole ownRole, F& f) const {
    const PinRole other = ownRole == PinRole::Tail ? PinRole::Head : PinRole::Tail;
    for (const NetId e : incidence_[v]) {
      if (!netEnabled_[e]) continue;
      bool member = false;
      for (const Pin& p : pins_[e]) {
        if (p.vertex == v) {
          member = p.role == ownRole;
          break;
        }
      }
      if (!member) continue;
      for (const Pin& p : pins_[e]) {
        if (p.role == other) f(p.vertex, e);
      }
    }
  }

  bool rolesCompatible(VertexId u, VertexId v, ContractionMode mode) const;

  std::vector<Weight> vertexWeight_;
  std::vector<Weight> netWeight_;
  std::vector<std::vector<Pin>> pins_;
  std::vector<std::uint32_t> headCount_;
  std::vector<std::vector<NetId>> incidence_;
  std::vector<char> vertexEnabled_;
  std::vector<char> netEnabled_;
  std::size_t numEnabledVertices_ = 0;
  std::size_t depth_ = 0;
};

}  // namespace dahp
