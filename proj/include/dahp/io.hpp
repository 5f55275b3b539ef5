// io.hpp - text formats and DAG ingestion
//
// Directed hypergraph format (.dhg), modeled on hMetis:
//   % comment lines are skipped anywhere
//   m n [fmt]                 fmt in {0, 1, 10, 11}
//   [w] h p_1 .. p_h t_1 .. t_q   one line per net, w iff fmt in {1, 11},
//                                 h >= 1 heads followed by q >= 1 tails
//   c                         one line per vertex iff fmt in {10, 11}
// All vertex ids in files are 1-based.
#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dahp/hypergraph.hpp"

namespace dahp::io {

DirectedHypergraph parseDirectedHypergraph(std::string_view text);
std::string writeDirectedHypergraph(const DirectedHypergraph& hg);

struct DagEdgeList {
  std::size_t n = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;  // 0-based
  std::size_t droppedSelfLoops = 0;
  std::size_t droppedDuplicates = 0;
};

// "n m" header followed by m lines "u v". Self-loops and duplicate edges are
// dropped and counted.
DagEdgeList parseDagEdgeList(std::string_view text);

struct CycleBreakResult {
  DagEdgeList dag;
  std::size_t skipped = 0;  // edges dropped because they closed a cycle
};

// Inserts edges in input order and skips every edge that would close a cycle
// with the edges kept so far.
CycleBreakResult breakCycles(const DagEdgeList& input);

// Row-net model: one net per vertex u with outgoing edges, head u and the
// successors of u as tails. Unit weights. Throws CyclicInput.
DirectedHypergraph dagToRowNetDah(const DagEdgeList& dag);

// One 0-based block id per line, line i for vertex i.
std::string writePartitionFile(const std::vector<BlockId>& assignment);
std::vector<BlockId> readPartitionFile(std::string_view text, std::size_t n, BlockId k = 0);

// hMetis export of the undirected version (heads and tails merged).
std::string exportUndirected(const DirectedHypergraph& hg);
// Reads an external 2-way partition file (block ids 0/1) onto hg's vertices.
std::vector<BlockId> importExternalBipartition(std::string_view text, const DirectedHypergraph& hg);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, std::string_view content);

}  // namespace dahp::io
