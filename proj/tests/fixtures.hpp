// fixtures.hpp - small hand-built instances shared by the unit tests
#pragma once

#include "dahp/hypergraph.hpp"

namespace dahp::fixtures {

// 0 -> 1 -> 2
inline DirectedHypergraph chain3() {
  return DirectedHypergraph::build({1, 1, 1}, {{{1}, {0}}, {{2}, {1}}});
}

// 0 -> 1, 0 -> 2, {1, 2} -> 3
inline DirectedHypergraph diamond() {
  return DirectedHypergraph::build({1, 1, 1, 1}, {{{1}, {0}}, {{2}, {0}}, {{3}, {1, 2}}});
}

// 0 -> 1 -> 0
inline DirectedHypergraph twoCycle() {
  return DirectedHypergraph::build({1, 1}, {{{1}, {0}}, {{0}, {1}}});
}

// Unit-weight path 0 -> 1 -> ... -> n-1 with one 2-pin net per edge.
inline DirectedHypergraph path(std::size_t n) {
  std::vector<NetSpec> nets;
  for (VertexId v = 0; v + 1 < n; ++v) nets.push_back({{v + 1}, {v}});
  return DirectedHypergraph::build(std::vector<Weight>(n, 1.0), nets);
}

}  // namespace dahp::fixtures
