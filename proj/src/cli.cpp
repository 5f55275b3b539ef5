// cli.cpp
#include "dahp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <map>
#include <optional>
#include <tuple>

#include <fmt/format.h>

#include "dahp/analysis.hpp"
#include "dahp/io.hpp"
#include "dahp/modes.hpp"
#include "dahp/profile.hpp"

namespace dahp {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInput = 2;

struct ManifestRow {
  std::string instance;
  Mode mode = Mode::Multilevel;
  BlockId k = 2;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  std::optional<std::size_t> maxGenerations;
};

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
T parseField(std::string_view field, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw MalformedInput(line, fmt::format("invalid {} '{}'", what, field));
  }
  return value;
}

// Header: instance,mode,k,seed[,epsilon][,max_generations]. Empty optional
// fields fall back to the command-line defaults.
std::vector<ManifestRow> parseManifest(std::string_view text) {
  std::vector<ManifestRow> rows;
  std::vector<std::string> columns;
  std::size_t lineNo = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view() : text.substr(eol + 1);
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = splitFields(line);
    if (columns.empty()) {
      for (const auto f : fields) columns.emplace_back(f);
      const std::vector<std::string> required = {"instance", "mode", "k", "seed"};
      if (columns.size() < 4 || !std::equal(required.begin(), required.end(), columns.begin())) {
        throw MalformedInput(lineNo, "manifest header must start with instance,mode,k,seed");
      }
      for (std::size_t i = 4; i < columns.size(); ++i) {
        if (columns[i] != "epsilon" && columns[i] != "max_generations") {
          throw MalformedInput(lineNo, "unknown manifest column '" + columns[i] + "'");
        }
      }
      continue;
    }
    if (fields.size() != columns.size()) {
      throw MalformedInput(lineNo, fmt::format("expected {} fields, found {}", columns.size(), fields.size()));
    }
    ManifestRow row;
    row.instance = std::string(fields[0]);
    const auto mode = parseMode(fields[1]);
    if (!mode) throw MalformedInput(lineNo, fmt::format("unknown mode '{}'", fields[1]));
    row.mode = *mode;
    row.k = parseField<BlockId>(fields[2], lineNo, "k");
    row.seed = parseField<std::uint64_t>(fields[3], lineNo, "seed");
    for (std::size_t i = 4; i < columns.size(); ++i) {
      if (fields[i].empty()) continue;
      if (columns[i] == "epsilon") {
        row.epsilon = parseField<double>(fields[i], lineNo, "epsilon");
      } else {
        row.maxGenerations = parseField<std::size_t>(fields[i], lineNo, "max_generations");
      }
    }
    rows.push_back(std::move(row));
  }
  if (columns.empty()) throw MalformedInput(1, "missing manifest header");
  return rows;
}

MemeticConfig memeticConfig(std::optional<double> timeLimit, std::optional<std::size_t> maxGenerations,
                            std::ostream* log) {
  MemeticConfig memetic;
  memetic.timeLimit = timeLimit;
  memetic.maxGenerations = maxGenerations;
  if (!timeLimit && !maxGenerations) memetic.maxGenerations = 100;
  if (log) memetic.log = [log](const std::string& line) { *log << line << '\n'; };
  return memetic;
}

std::string reportLine(const PartitionReport& report) {
  return fmt::format("km1={} cut={} acyclic={} balanced={} max_block_weight={} l_max={}", report.km1, report.cut,
                     report.acyclic ? "yes" : "no", report.balanced ? "yes" : "no", report.maxBlockWeight,
                     report.lMax);
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Acyclic partitioning of directed hypergraphs", "dahp"};
  app.require_subcommand(1);

  // partition
  auto* partitionCmd = app.add_subcommand("partition", "Partition a directed hypergraph into k blocks");
  std::string input;
  int k = 0;
  double epsilon = 0.03;
  std::string modeName = "multilevel";
  std::uint64_t seed = 0;
  std::optional<double> timeLimit;
  std::optional<std::size_t> maxGenerations;
  std::string outputPath;
  partitionCmd->add_option("input", input, "Hypergraph file (.dhg)")->required();
  partitionCmd->add_option("-k", k, "Number of blocks")->required();
  partitionCmd->add_option("-e,--epsilon", epsilon, "Imbalance factor");
  partitionCmd->add_option("--mode", modeName, "multilevel|memetic|toporb|topokway")
      ->check(CLI::IsMember({"multilevel", "memetic", "toporb", "topokway"}));
  partitionCmd->add_option("--seed", seed, "Random seed");
  partitionCmd->add_option("--time-limit", timeLimit, "Memetic time budget in seconds");
  partitionCmd->add_option("--max-generations", maxGenerations, "Memetic generation budget");
  partitionCmd->add_option("-o,--output", outputPath, "Partition output file");

  // convert
  auto* convertCmd = app.add_subcommand("convert", "Convert a DAG edge list with the row-net model");
  std::string edgesPath;
  std::string convertOut;
  convertCmd->add_option("--row-net", edgesPath, "Edge list ('n m' header, 1-based 'u v' lines)")->required();
  convertCmd->add_option("-o,--output", convertOut, "Output .dhg file")->required();

  // verify
  auto* verifyCmd = app.add_subcommand("verify", "Check a partition for acyclicity and balance");
  std::string verifyInput;
  std::string partPath;
  int verifyK = 0;
  double verifyEpsilon = 0.03;
  verifyCmd->add_option("input", verifyInput, "Hypergraph file (.dhg)")->required();
  verifyCmd->add_option("partition", partPath, "Partition file")->required();
  verifyCmd->add_option("-k", verifyK, "Number of blocks")->required();
  verifyCmd->add_option("-e,--epsilon", verifyEpsilon, "Imbalance factor");

  // bench
  auto* benchCmd = app.add_subcommand("bench", "Run a manifest of partitioning jobs");
  std::string manifestPath;
  std::string resultsPath;
  std::optional<std::size_t> benchGenerations;
  std::optional<double> benchTimeLimit;
  benchCmd->add_option("manifest", manifestPath, "CSV: instance,mode,k,seed[,epsilon][,max_generations]")
      ->required();
  benchCmd->add_option("-o,--output", resultsPath, "Results CSV")->required();
  benchCmd->add_option("--max-generations", benchGenerations, "Memetic generation budget");
  benchCmd->add_option("--time-limit", benchTimeLimit, "Memetic time budget in seconds");

  // profile
  auto* profileCmd = app.add_subcommand("profile", "Performance profile from bench results");
  std::string profileInput;
  std::string profileOut;
  profileCmd->add_option("results", profileInput, "Results CSV")->required();
  profileCmd->add_option("-o,--output", profileOut, "Profile CSV")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitInput;
  }

  try {
    if (*partitionCmd) {
      if (k < 1) {
        err << "error: -k must be at least 1\n" << partitionCmd->help();
        return kExitInput;
      }
      if (epsilon < 0) {
        err << "error: epsilon must be non-negative\n";
        return kExitInput;
      }
      const DirectedHypergraph hg = io::parseDirectedHypergraph(io::readFile(input));
      PartitionerConfig config;
      config.k = k;
      config.epsilon = epsilon;
      config.seed = seed;
      const Mode mode = *parseMode(modeName);
      const RunOutcome outcome = runMode(hg, mode, config, memeticConfig(timeLimit, maxGenerations, &err));
      if (!outputPath.empty()) io::writeFile(outputPath, io::writePartitionFile(outcome.assignment));
      out << reportLine(outcome.report) << fmt::format(" seconds={:.3f}", outcome.seconds) << '\n';
      return kExitOk;
    }

    if (*convertCmd) {
      const io::DagEdgeList dag = io::parseDagEdgeList(io::readFile(edgesPath));
      const io::CycleBreakResult broken = io::breakCycles(dag);
      if (broken.skipped > 0) {
        err << fmt::format("warning: {} edge{} skipped\n", broken.skipped, broken.skipped == 1 ? "" : "s");
      }
      io::writeFile(convertOut, io::writeDirectedHypergraph(io::dagToRowNetDah(broken.dag)));
      return kExitOk;
    }

    if (*verifyCmd) {
      if (verifyK < 1) {
        err << "error: -k must be at least 1\n";
        return kExitInput;
      }
      const DirectedHypergraph hg = io::parseDirectedHypergraph(io::readFile(verifyInput));
      const std::vector<BlockId> assignment =
          io::readPartitionFile(io::readFile(partPath), hg.numVertices(), verifyK);
      const PartitionReport report = verifyPartition(hg, assignment, verifyK, verifyEpsilon);
      out << reportLine(report) << '\n';
      return report.acyclic && report.balanced ? kExitOk : kExitVerification;
    }

    if (*benchCmd) {
      const std::vector<ManifestRow> rows = parseManifest(io::readFile(manifestPath));
      const std::filesystem::path base = std::filesystem::path(manifestPath).parent_path();
      std::map<std::string, DirectedHypergraph> cache;
      std::vector<ResultRecord> records;
      for (const ManifestRow& row : rows) {
        auto it = cache.find(row.instance);
        if (it == cache.end()) {
          const std::string path = (base / row.instance).string();
          it = cache.emplace(row.instance, io::parseDirectedHypergraph(io::readFile(path))).first;
        }
        PartitionerConfig config;
        config.k = row.k;
        config.epsilon = row.epsilon.value_or(0.03);
        config.seed = row.seed;
        const auto generations = row.maxGenerations ? row.maxGenerations : benchGenerations;
        const RunOutcome outcome = runMode(it->second, row.mode, config, memeticConfig(benchTimeLimit, generations, nullptr));
        records.push_back({row.instance, std::string(toString(row.mode)), row.k, row.seed, outcome.report.km1,
                           outcome.report.cut, outcome.seconds, outcome.report.acyclic, outcome.report.balanced});
        err << fmt::format("{} {} k={} seed={} km1={}\n", row.instance, toString(row.mode), row.k, row.seed,
                           outcome.report.km1);
      }
      std::sort(records.begin(), records.end(), [](const ResultRecord& a, const ResultRecord& b) {
        return std::tie(a.instance, a.algorithm, a.k, a.seed) < std::tie(b.instance, b.algorithm, b.k, b.seed);
      });
      io::writeFile(resultsPath, writeResultsCsv(records));
      return kExitOk;
    }

    if (*profileCmd) {
      const auto records = parseResultsCsv(io::readFile(profileInput));
      io::writeFile(profileOut, writeProfileCsv(performanceProfile(records)));
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::VerificationFailed ? kExitVerification : kExitInput;
  }
  return kExitInput;
}

}  // namespace dahp
