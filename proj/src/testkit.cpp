// testkit.cpp
#include "dahp/testkit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "dahp/analysis.hpp"

namespace dahp::testkit {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

DirectedHypergraph randomDah(const RandomDahSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const std::size_t layers = std::max<std::size_t>(1, spec.layers);
  const std::size_t width = std::max<std::size_t>(1, spec.width);
  const std::size_t n = layers * width;
  auto layerOf = [&](VertexId v) { return v / width; };
  auto randomIn = [&](std::size_t firstLayer, std::size_t lastLayer) {
    return static_cast<VertexId>(uniform(rng, firstLayer * width, (lastLayer + 1) * width - 1));
  };
  std::bernoulli_distribution coin(std::clamp(spec.netProbability, 0.0, 1.0));

  std::vector<NetSpec> nets;
  auto netWeight = [&]() -> Weight {
    return spec.maxNetWeight > 1 ? static_cast<Weight>(uniform(rng, 1, spec.maxNetWeight)) : 1.0;
  };
  auto addNet = [&](std::set<VertexId> tails, std::set<VertexId> heads) {
    if (tails.empty() || heads.empty()) return;
    nets.push_back({std::vector<VertexId>(heads.begin(), heads.end()),
                    std::vector<VertexId>(tails.begin(), tails.end()), netWeight()});
  };

  if (layers > 1) {
    for (VertexId u = 0; u < n; ++u) {
      const std::size_t l = layerOf(u);
      // Forward net anchored at tail u.
      if (l + 1 < layers && coin(rng)) {
        std::set<VertexId> tails = {u};
        const std::size_t extraTails = uniform(rng, 0, spec.maxTails > 0 ? spec.maxTails - 1 : 0);
        for (std::size_t i = 0; i < extraTails; ++i) tails.insert(randomIn(l > 0 ? l - 1 : 0, l));
        std::set<VertexId> heads;
        const std::size_t headCount = uniform(rng, 1, std::max<std::size_t>(1, spec.maxHeads));
        for (std::size_t i = 0; i < headCount; ++i) heads.insert(randomIn(l + 1, std::min(layers - 1, l + 2)));
        addNet(std::move(tails), std::move(heads));
      }
      // Backward net anchored at head u.
      if (l > 0 && coin(rng)) {
        std::set<VertexId> heads = {u};
        std::set<VertexId> tails;
        const std::size_t tailCount = uniform(rng, 1, std::max<std::size_t>(1, spec.maxTails));
        for (std::size_t i = 0; i < tailCount; ++i) tails.insert(randomIn(l >= 2 ? l - 2 : 0, l - 1));
        addNet(std::move(tails), std::move(heads));
      }
    }
  }

  std::vector<Weight> weights(n, 1.0);
  if (!spec.unitWeights) {
    for (Weight& w : weights) w = static_cast<Weight>(uniform(rng, 1, std::max(1, spec.maxVertexWeight)));
  }
  return DirectedHypergraph::build(std::move(weights), std::move(nets));
}

RandomDahSpec randomSpec(std::mt19937_64& rng, std::size_t maxVertices, bool allowWeights) {
  RandomDahSpec spec;
  const std::size_t total = uniform(rng, std::min<std::size_t>(4, maxVertices), maxVertices);
  spec.layers = uniform(rng, 2, std::max<std::size_t>(2, std::min<std::size_t>(12, total / 2)));
  spec.width = std::max<std::size_t>(1, total / spec.layers);
  spec.netProbability = std::uniform_real_distribution<double>(0.3, 0.9)(rng);
  spec.maxTails = uniform(rng, 1, 4);
  spec.maxHeads = uniform(rng, 1, 3);
  spec.seed = rng();
  spec.unitWeights = !allowWeights || uniform(rng, 0, 3) != 0;
  spec.maxVertexWeight = static_cast<int>(uniform(rng, 2, 6));
  spec.maxNetWeight = static_cast<int>(uniform(rng, 1, 3));
  return spec;
}

std::optional<BruteForceResult> bruteForceOptimum(const DirectedHypergraph& hg, BlockId k, double epsilon) {
  std::vector<VertexId> vertices;
  for (VertexId v = 0; v < hg.numVertices(); ++v) {
    if (hg.vertexEnabled(v)) vertices.push_back(v);
  }
  if (std::pow(static_cast<double>(k), static_cast<double>(vertices.size())) > 1e7) {
    throw Error(ErrorCode::TooLarge, "enumeration exceeds 1e7 assignments");
  }
  if (!isAcyclic(hg)) throw Error(ErrorCode::CyclicInput, "oracle needs an acyclic hypergraph");

  const Weight limit = maxBlockWeight(hg.totalWeight(), k, epsilon);
  std::vector<BlockId> assignment(hg.numVertices(), 0);
  std::vector<Weight> load(k, 0);
  std::optional<BruteForceResult> best;

  auto recurse = [&](auto&& self, std::size_t i, BlockId used) -> void {
    if (i == vertices.size()) {
      if (used < k) return;
      if (!QuotientGraph::build(hg, assignment, k).isAcyclic()) return;
      const double km1 = connectivityMetric(hg, assignment, k);
      if (!best || km1 < best->km1) best = BruteForceResult{km1, assignment};
      return;
    }
    // Not enough vertices left to open the remaining blocks.
    if (static_cast<std::size_t>(k - used) > vertices.size() - i) return;
    const VertexId v = vertices[i];
    const BlockId top = std::min<BlockId>(used, k - 1);
    for (BlockId b = 0; b <= top; ++b) {
      if (load[b] + hg.vertexWeight(v) > limit + 1e-9) continue;
      assignment[v] = b;
      load[b] += hg.vertexWeight(v);
      self(self, i + 1, std::max<BlockId>(used, b + 1));
      load[b] -= hg.vertexWeight(v);
    }
  };
  recurse(recurse, 0, 0);
  return best;
}

bool contractAndCheck(const DirectedHypergraph& hg, const std::vector<std::uint32_t>& clusterOf) {
  std::map<std::uint32_t, std::uint32_t> dense;
  for (VertexId v = 0; v < hg.numVertices(); ++v) {
    if (hg.vertexEnabled(v)) dense.try_emplace(clusterOf[v], static_cast<std::uint32_t>(dense.size()));
  }
  const std::size_t c = dense.size();
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (NetId e = 0; e < hg.numNets(); ++e) {
    if (!hg.netEnabled(e)) continue;
    for (const Pin& t : hg.pins(e)) {
      if (t.role != PinRole::Tail) continue;
      for (const Pin& h : hg.pins(e)) {
        if (h.role != PinRole::Head) continue;
        const std::uint32_t a = dense.at(clusterOf[t.vertex]);
        const std::uint32_t b = dense.at(clusterOf[h.vertex]);
        if (a != b) edges.insert({a, b});
      }
    }
  }
  std::vector<std::vector<std::uint32_t>> out(c);
  std::vector<std::size_t> indegree(c, 0);
  for (const auto& [a, b] : edges) {
    out[a].push_back(b);
    ++indegree[b];
  }
  std::vector<std::uint32_t> ready;
  for (std::uint32_t i = 0; i < c; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const std::uint32_t a = ready.back();
    ready.pop_back();
    ++seen;
    for (const std::uint32_t b : out[a]) {
      if (--indegree[b] == 0) ready.push_back(b);
    }
  }
  return seen == c;
}

bool satisfiesClusterConditions(const DirectedHypergraph& hg, const std::vector<std::uint32_t>& levels,
                                const std::vector<std::uint32_t>& clusterOf) {
  std::map<std::uint32_t, std::pair<std::uint32_t, std::uint32_t>> span;  // cluster -> (min, max) level
  for (VertexId v = 0; v < hg.numVertices(); ++v) {
    if (!hg.vertexEnabled(v)) continue;
    auto [it, inserted] = span.try_emplace(clusterOf[v], levels[v], levels[v]);
    it->second.first = std::min(it->second.first, levels[v]);
    it->second.second = std::max(it->second.second, levels[v]);
  }
  for (const auto& [cluster, range] : span) {
    if (range.second - range.first > 1) return false;
  }
  auto mixed = [&](std::uint32_t cluster) { return span.at(cluster).first != span.at(cluster).second; };
  for (NetId e = 0; e < hg.numNets(); ++e) {
    if (!hg.netEnabled(e)) continue;
    for (const Pin& t : hg.pins(e)) {
      if (t.role != PinRole::Tail) continue;
      for (const Pin& h : hg.pins(e)) {
        if (h.role != PinRole::Head) continue;
        const std::uint32_t a = clusterOf[t.vertex];
        const std::uint32_t b = clusterOf[h.vertex];
        if (a == b || !mixed(a) || !mixed(b)) continue;
        const auto diff = levels[t.vertex] > levels[h.vertex] ? levels[t.vertex] - levels[h.vertex]
                                                               : levels[h.vertex] - levels[t.vertex];
        if (diff <= 1) return false;
      }
    }
  }
  return true;
}

std::vector<std::uint32_t> randomLevelClustering(const DirectedHypergraph& hg, const std::vector<std::uint32_t>& levels,
                                                 std::mt19937_64& rng) {
  const std::size_t n = hg.numVertices();
  std::vector<std::uint32_t> clusterOf(n);
  for (VertexId v = 0; v < n; ++v) clusterOf[v] = v;

  std::vector<VertexId> order;
  for (VertexId v = 0; v < n; ++v) {
    if (hg.vertexEnabled(v)) order.push_back(v);
  }
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> taken(n, 0);

  // Grow clusters from neighbors within a two-level window.
  for (const VertexId u : order) {
    if (taken[u]) continue;
    taken[u] = 1;
    const std::uint32_t base = levels[u] > 0 && uniform(rng, 0, 1) == 1 ? levels[u] - 1 : levels[u];
    const std::size_t target = uniform(rng, 1, 4);
    std::vector<VertexId> pool = hg.neighbors(u);
    for (int extra = 0; extra < 2; ++extra) pool.push_back(order[uniform(rng, 0, order.size() - 1)]);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t size = 1;
    for (const VertexId v : pool) {
      if (size >= target) break;
      if (taken[v] || levels[v] < base || levels[v] > base + 1) continue;
      taken[v] = 1;
      clusterOf[v] = u;
      ++size;
    }
  }

  // Dissolve mixed-level clusters involved in a forbidden pair until none remain.
  while (!satisfiesClusterConditions(hg, levels, clusterOf)) {
    std::map<std::uint32_t, std::pair<std::uint32_t, std::uint32_t>> span;
    for (VertexId v = 0; v < n; ++v) {
      if (!hg.vertexEnabled(v)) continue;
      auto [it, inserted] = span.try_emplace(clusterOf[v], levels[v], levels[v]);
      it->second.first = std::min(it->second.first, levels[v]);
      it->second.second = std::max(it->second.second, levels[v]);
    }
    std::optional<std::uint32_t> victim;
    for (NetId e = 0; e < hg.numNets() && !victim; ++e) {
      if (!hg.netEnabled(e)) continue;
      for (const Pin& t : hg.pins(e)) {
        if (t.role != PinRole::Tail || victim) continue;
        for (const Pin& h : hg.pins(e)) {
          if (h.role != PinRole::Head) continue;
          const std::uint32_t a = clusterOf[t.vertex];
          const std::uint32_t b = clusterOf[h.vertex];
          if (a == b || span[a].first == span[a].second || span[b].first == span[b].second) continue;
          const auto diff = levels[t.vertex] > levels[h.vertex] ? levels[t.vertex] - levels[h.vertex]
                                                                 : levels[h.vertex] - levels[t.vertex];
          if (diff <= 1) {
            victim = uniform(rng, 0, 1) == 0 ? a : b;
            break;
          }
        }
      }
    }
    if (!victim) break;
    for (VertexId v = 0; v < n; ++v) {
      if (clusterOf[v] == *victim) clusterOf[v] = v;
    }
  }
  return clusterOf;
}

HypergraphSnapshot snapshot(const DirectedHypergraph& hg) {
  HypergraphSnapshot s;
  for (VertexId v = 0; v < hg.numVertices(); ++v) {
    s.vertexWeight.push_back(hg.vertexWeight(v));
    s.vertexEnabled.push_back(hg.vertexEnabled(v));
    const auto nets = hg.incidentNets(v);
    s.incidence.emplace_back(nets.begin(), nets.end());
  }
  for (NetId e = 0; e < hg.numNets(); ++e) {
    s.netWeight.push_back(hg.netWeight(e));
    s.netEnabled.push_back(hg.netEnabled(e));
    const auto pins = hg.pins(e);
    s.pins.emplace_back(pins.begin(), pins.end());
    s.headCount.push_back(hg.headCount(e));
  }
  return s;
}

}  // namespace dahp::testkit
