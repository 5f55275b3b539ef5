// profile.cpp
#include "dahp/profile.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include <fmt/format.h>

namespace dahp {

namespace {

std::vector<std::string_view> splitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parseNumber(std::string_view field, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw MalformedInput(line, fmt::format("invalid {} '{}'", what, field));
  }
  return value;
}

bool parseFlag(std::string_view field, std::size_t line) {
  if (field == "1" || field == "true") return true;
  if (field == "0" || field == "false") return false;
  throw MalformedInput(line, fmt::format("invalid flag '{}'", field));
}

}  // namespace

std::string writeResultsCsv(const std::vector<ResultRecord>& records) {
  std::string out(kResultsHeader);
  out += '\n';
  for (const ResultRecord& r : records) {
    out += fmt::format("{},{},{},{},{},{},{:.6f},{},{}\n", r.instance, r.algorithm, r.k, r.seed, r.km1, r.cut,
                       r.seconds, r.acyclic ? 1 : 0, r.balanced ? 1 : 0);
  }
  return out;
}

std::vector<ResultRecord> parseResultsCsv(std::string_view text) {
  std::vector<ResultRecord> records;
  std::size_t lineNo = 0;
  bool headerSeen = false;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view() : text.substr(eol + 1);
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!headerSeen) {
      if (line != kResultsHeader) throw MalformedInput(lineNo, "expected header '" + std::string(kResultsHeader) + "'");
      headerSeen = true;
      continue;
    }
    const auto f = splitFields(line);
    if (f.size() != 9) throw MalformedInput(lineNo, fmt::format("expected 9 fields, found {}", f.size()));
    ResultRecord r;
    r.instance = std::string(f[0]);
    r.algorithm = std::string(f[1]);
    r.k = parseNumber<BlockId>(f[2], lineNo, "k");
    r.seed = parseNumber<std::uint64_t>(f[3], lineNo, "seed");
    r.km1 = parseNumber<double>(f[4], lineNo, "km1");
    r.cut = parseNumber<double>(f[5], lineNo, "cut");
    r.seconds = parseNumber<double>(f[6], lineNo, "seconds");
    r.acyclic = parseFlag(f[7], lineNo);
    r.balanced = parseFlag(f[8], lineNo);
    records.push_back(std::move(r));
  }
  if (!headerSeen) throw MalformedInput(1, "missing header");
  return records;
}

std::vector<double> defaultTauGrid() {
  std::vector<double> taus;
  for (int i = 0; i <= 100; ++i) taus.push_back((100 + i) / 100.0);
  for (int i = 1; i <= 80; ++i) taus.push_back((20 + i) / 10.0);
  return taus;
}

std::vector<ProfilePoint> performanceProfile(const std::vector<ResultRecord>& records,
                                             const std::vector<double>& taus) {
  using InstanceKey = std::pair<std::string, BlockId>;
  std::set<InstanceKey> instances;
  std::set<std::string> algorithms;
  std::map<std::pair<std::string, InstanceKey>, Weight> best;  // (algorithm, instance) -> min km1
  for (const ResultRecord& r : records) {
    const InstanceKey key{r.instance, r.k};
    instances.insert(key);
    algorithms.insert(r.algorithm);
    auto [it, inserted] = best.try_emplace({r.algorithm, key}, r.km1);
    if (!inserted) it->second = std::min(it->second, r.km1);
  }

  std::map<InstanceKey, Weight> overall;
  for (const auto& key : instances) {
    Weight m = std::numeric_limits<Weight>::infinity();
    for (const auto& algorithm : algorithms) {
      const auto it = best.find({algorithm, key});
      if (it == best.end()) {
        throw Error(ErrorCode::MissingCell,
                    fmt::format("algorithm {} has no result for instance {} (k={})", algorithm, key.first, key.second));
      }
      m = std::min(m, it->second);
    }
    overall[key] = m;
  }

  std::vector<ProfilePoint> points;
  for (const auto& algorithm : algorithms) {
    for (const double tau : taus) {
      std::size_t within = 0;
      for (const auto& key : instances) {
        if (best.at({algorithm, key}) <= tau * overall.at(key) * (1 + 1e-12)) ++within;
      }
      points.push_back({tau, algorithm, static_cast<double>(within) / static_cast<double>(instances.size())});
    }
  }
  return points;
}

std::string writeProfileCsv(const std::vector<ProfilePoint>& points) {
  std::string out(kProfileHeader);
  out += '\n';
  for (const ProfilePoint& p : points) out += fmt::format("{:.2f},{},{:.6f}\n", p.tau, p.algorithm, p.fraction);
  return out;
}

}  // namespace dahp
