// io.cpp
#include "dahp/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "dahp/analysis.hpp"

namespace dahp::io {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

// Splits into non-comment, non-blank lines of whitespace-separated tokens.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (!raw.empty() && raw.front() == '%') continue;
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t') ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

std::uint64_t parseUnsigned(std::string_view token, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw MalformedInput(line, std::string("expected non-negative integer for ") + what + ", got '" +
                                   std::string(token) + "'");
  }
  return value;
}

double parsePositiveReal(std::string_view token, std::size_t line, const char* what) {
  double value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !(value > 0)) {
    throw MalformedInput(line, std::string("expected positive number for ") + what + ", got '" +
                                   std::string(token) + "'");
  }
  return value;
}

VertexId parseVertex(std::string_view token, std::size_t line, std::size_t n) {
  const std::uint64_t id = parseUnsigned(token, line, "vertex id");
  if (id < 1 || id > n) {
    throw MalformedInput(line, "vertex id " + std::string(token) + " out of range 1.." + std::to_string(n));
  }
  return static_cast<VertexId>(id - 1);
}

std::string formatNumber(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

bool allUnit(const std::vector<double>& weights) {
  return std::all_of(weights.begin(), weights.end(), [](double w) { return w == 1.0; });
}

}  // namespace

DirectedHypergraph parseDirectedHypergraph(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw MalformedInput(1, "missing header");
  const Line& header = lines.front();
  if (header.tokens.size() < 2 || header.tokens.size() > 3) {
    throw MalformedInput(header.number, "header must be 'm n [fmt]'");
  }
  const std::size_t m = parseUnsigned(header.tokens[0], header.number, "net count");
  const std::size_t n = parseUnsigned(header.tokens[1], header.number, "vertex count");
  std::uint64_t fmt = 0;
  if (header.tokens.size() == 3) {
    fmt = parseUnsigned(header.tokens[2], header.number, "fmt");
    if (fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11) {
      throw MalformedInput(header.number, "fmt must be one of 0, 1, 10, 11");
    }
  }
  const bool netWeights = fmt == 1 || fmt == 11;
  const bool vertexWeights = fmt == 10 || fmt == 11;
  const std::size_t expected = 1 + m + (vertexWeights ? n : 0);
  if (lines.size() < expected) {
    const std::size_t last = lines.back().number;
    throw MalformedInput(last + 1, "expected " + std::to_string(expected - 1) + " data lines, found " +
                                       std::to_string(lines.size() - 1));
  }
  if (lines.size() > expected) throw MalformedInput(lines[expected].number, "unexpected trailing content");

  std::vector<NetSpec> nets(m);
  std::vector<std::size_t> netLine(m);
  for (std::size_t e = 0; e < m; ++e) {
    const Line& line = lines[1 + e];
    netLine[e] = line.number;
    std::size_t t = 0;
    if (netWeights) nets[e].weight = parsePositiveReal(line.tokens[t++], line.number, "net weight");
    if (t >= line.tokens.size()) throw MalformedInput(line.number, "missing head count");
    const std::size_t h = parseUnsigned(line.tokens[t++], line.number, "head count");
    if (h == 0) throw MalformedInput(line.number, "net needs at least one head");
    if (line.tokens.size() < t + h + 1) throw MalformedInput(line.number, "net needs at least one tail");
    for (std::size_t i = 0; i < h; ++i) nets[e].heads.push_back(parseVertex(line.tokens[t++], line.number, n));
    while (t < line.tokens.size()) nets[e].tails.push_back(parseVertex(line.tokens[t++], line.number, n));
  }
  std::vector<Weight> weights(n, 1.0);
  if (vertexWeights) {
    for (std::size_t v = 0; v < n; ++v) {
      const Line& line = lines[1 + m + v];
      if (line.tokens.size() != 1) throw MalformedInput(line.number, "expected a single vertex weight");
      weights[v] = parsePositiveReal(line.tokens[0], line.number, "vertex weight");
    }
  }
  // Per-net structural errors are reported against the net's line.
  std::vector<std::size_t> stamp(n, static_cast<std::size_t>(-1));
  for (std::size_t e = 0; e < m; ++e) {
    for (const auto* list : {&nets[e].heads, &nets[e].tails}) {
      for (VertexId v : *list) {
        if (stamp[v] == e) throw MalformedInput(netLine[e], "duplicate pin " + std::to_string(v + 1));
        stamp[v] = e;
      }
    }
  }
  return DirectedHypergraph::build(std::move(weights), nets);
}

std::string writeDirectedHypergraph(const DirectedHypergraph& hg) {
  std::vector<double> netWeights;
  std::vector<double> vertexWeights;
  for (NetId e = 0; e < hg.numNets(); ++e) netWeights.push_back(hg.netWeight(e));
  for (VertexId v = 0; v < hg.numVertices(); ++v) vertexWeights.push_back(hg.vertexWeight(v));
  const bool withNetWeights = !allUnit(netWeights);
  const bool withVertexWeights = !allUnit(vertexWeights);

  std::ostringstream out;
  out << hg.numNets() << ' ' << hg.numVertices();
  if (withNetWeights || withVertexWeights) out << ' ' << (withVertexWeights ? "1" : "") << (withNetWeights ? "1" : "0");
  out << '\n';
  for (NetId e = 0; e < hg.numNets(); ++e) {
    if (withNetWeights) out << formatNumber(hg.netWeight(e)) << ' ';
    out << hg.headCount(e);
    for (const Pin& p : hg.pins(e)) {
      if (p.role == PinRole::Head) out << ' ' << p.vertex + 1;
    }
    for (const Pin& p : hg.pins(e)) {
      if (p.role == PinRole::Tail) out << ' ' << p.vertex + 1;
    }
    out << '\n';
  }
  if (withVertexWeights) {
    for (VertexId v = 0; v < hg.numVertices(); ++v) out << formatNumber(hg.vertexWeight(v)) << '\n';
  }
  return out.str();
}

DagEdgeList parseDagEdgeList(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw MalformedInput(1, "missing header");
  const Line& header = lines.front();
  if (header.tokens.size() != 2) throw MalformedInput(header.number, "header must be 'n m'");
  DagEdgeList dag;
  dag.n = parseUnsigned(header.tokens[0], header.number, "vertex count");
  const std::size_t m = parseUnsigned(header.tokens[1], header.number, "edge count");
  if (lines.size() != m + 1) {
    const std::size_t at = lines.size() > m + 1 ? lines[m + 1].number : lines.back().number + 1;
    throw MalformedInput(at, "expected " + std::to_string(m) + " edge lines, found " +
                                 std::to_string(lines.size() - 1));
  }
  std::set<std::pair<VertexId, VertexId>> seen;
  for (std::size_t i = 1; i <= m; ++i) {
    const Line& line = lines[i];
    if (line.tokens.size() != 2) throw MalformedInput(line.number, "edge line must be 'u v'");
    const VertexId u = parseVertex(line.tokens[0], line.number, dag.n);
    const VertexId v = parseVertex(line.tokens[1], line.number, dag.n);
    if (u == v) {
      ++dag.droppedSelfLoops;
      continue;
    }
    if (!seen.insert({u, v}).second) {
      ++dag.droppedDuplicates;
      continue;
    }
    dag.edges.emplace_back(u, v);
  }
  return dag;
}

CycleBreakResult breakCycles(const DagEdgeList& input) {
  CycleBreakResult result;
  result.dag.n = input.n;
  result.dag.droppedSelfLoops = input.droppedSelfLoops;
  result.dag.droppedDuplicates = input.droppedDuplicates;

  std::vector<std::vector<VertexId>> out(input.n);
  std::vector<std::size_t> visited(input.n, 0);
  std::size_t stamp = 0;
  std::vector<VertexId> stack;
  std::set<std::pair<VertexId, VertexId>> kept;

  auto reaches = [&](VertexId from, VertexId to) {
    ++stamp;
    stack.assign(1, from);
    visited[from] = stamp;
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      if (x == to) return true;
      for (VertexId y : out[x]) {
        if (visited[y] != stamp) {
          visited[y] = stamp;
          stack.push_back(y);
        }
      }
    }
    return false;
  };

  for (const auto& [u, v] : input.edges) {
    if (u == v) {
      ++result.dag.droppedSelfLoops;
      continue;
    }
    if (kept.count({u, v})) {
      ++result.dag.droppedDuplicates;
      continue;
    }
    if (reaches(v, u)) {
      ++result.skipped;
      continue;
    }
    out[u].push_back(v);
    kept.insert({u, v});
    result.dag.edges.emplace_back(u, v);
  }
  return result;
}

DirectedHypergraph dagToRowNetDah(const DagEdgeList& dag) {
  std::vector<std::vector<VertexId>> successors(dag.n);
  for (const auto& [u, v] : dag.edges) {
    if (u >= dag.n || v >= dag.n) throw Error(ErrorCode::IdOutOfRange, "edge endpoint out of range");
    successors[u].push_back(v);
  }
  // DAG acyclicity check (Kahn on the plain digraph).
  std::vector<std::size_t> indegree(dag.n, 0);
  for (const auto& [u, v] : dag.edges) ++indegree[v];
  std::vector<VertexId> ready;
  for (VertexId v = 0; v < dag.n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t ordered = 0;
  while (!ready.empty()) {
    const VertexId u = ready.back();
    ready.pop_back();
    ++ordered;
    for (VertexId v : successors[u]) {
      if (--indegree[v] == 0) ready.push_back(v);
    }
  }
  if (ordered != dag.n) throw Error(ErrorCode::CyclicInput, "edge list contains a cycle");

  std::vector<NetSpec> nets;
  for (VertexId u = 0; u < dag.n; ++u) {
    if (successors[u].empty()) continue;
    std::vector<VertexId> tails = successors[u];
    std::sort(tails.begin(), tails.end());
    tails.erase(std::unique(tails.begin(), tails.end()), tails.end());
    nets.push_back({{u}, std::move(tails), 1.0});
  }
  return DirectedHypergraph::build(std::vector<Weight>(dag.n, 1.0), nets);
}

std::string writePartitionFile(const std::vector<BlockId>& assignment) {
  std::string out;
  out.reserve(assignment.size() * 2);
  for (BlockId b : assignment) {
    out += std::to_string(b);
    out += '\n';
  }
  return out;
}

std::vector<BlockId> readPartitionFile(std::string_view text, std::size_t n, BlockId k) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.size() != n) {
    const std::size_t at = lines.size() > n ? lines[n].number : (lines.empty() ? 1 : lines.back().number + 1);
    throw MalformedInput(at, "expected " + std::to_string(n) + " block ids, found " + std::to_string(lines.size()));
  }
  std::vector<BlockId> assignment(n);
  for (std::size_t v = 0; v < n; ++v) {
    const Line& line = lines[v];
    if (line.tokens.size() != 1) throw MalformedInput(line.number, "expected a single block id");
    const std::uint64_t b = parseUnsigned(line.tokens[0], line.number, "block id");
    if (k > 0 && b >= static_cast<std::uint64_t>(k)) {
      throw MalformedInput(line.number, "block id " + std::to_string(b) + " >= k=" + std::to_string(k));
    }
    assignment[v] = static_cast<BlockId>(b);
  }
  return assignment;
}

std::string exportUndirected(const DirectedHypergraph& hg) {
  std::vector<double> netWeights;
  std::vector<double> vertexWeights;
  std::size_t enabledNets = 0;
  for (NetId e = 0; e < hg.numNets(); ++e) {
    if (!hg.netEnabled(e)) continue;
    ++enabledNets;
    netWeights.push_back(hg.netWeight(e));
  }
  for (VertexId v = 0; v < hg.numVertices(); ++v) vertexWeights.push_back(hg.vertexWeight(v));
  const bool withNetWeights = !allUnit(netWeights);
  const bool withVertexWeights = !allUnit(vertexWeights);

  std::ostringstream out;
  out << enabledNets << ' ' << hg.numVertices();
  if (withNetWeights || withVertexWeights) out << ' ' << (withVertexWeights ? "1" : "") << (withNetWeights ? "1" : "0");
  out << '\n';
  for (NetId e = 0; e < hg.numNets(); ++e) {
    if (!hg.netEnabled(e)) continue;
    bool first = true;
    if (withNetWeights) {
      out << formatNumber(hg.netWeight(e));
      first = false;
    }
    for (const Pin& p : hg.pins(e)) {
      if (!first) out << ' ';
      out << p.vertex + 1;
      first = false;
    }
    out << '\n';
  }
  if (withVertexWeights) {
    for (VertexId v = 0; v < hg.numVertices(); ++v) out << formatNumber(hg.vertexWeight(v)) << '\n';
  }
  return out.str();
}

std::vector<BlockId> importExternalBipartition(std::string_view text, const DirectedHypergraph& hg) {
  const std::vector<Line> lines = tokenize(text);
  std::vector<BlockId> raw = readPartitionFile(text, hg.numVertices());
  for (std::size_t v = 0; v < raw.size(); ++v) {
    if (raw[v] > 1) {
      throw MalformedInput(lines[v].number, "bipartition expected, found block id " + std::to_string(raw[v]));
    }
  }
  return raw;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ExternalFileMissing, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void writeFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << content;
}

}  // namespace dahp::io
