// modes.cpp
#include "dahp/modes.hpp"

#include <chrono>

namespace dahp {

std::optional<Mode> parseMode(std::string_view name) {
  if (name == "multilevel") return Mode::Multilevel;
  if (name == "memetic") return Mode::Memetic;
  if (name == "toporb") return Mode::TopoRB;
  if (name == "topokway") return Mode::TopoKWay;
  return std::nullopt;
}

std::string_view toString(Mode mode) {
  switch (mode) {
    case Mode::Multilevel:
      return "multilevel";
    case Mode::Memetic:
      return "memetic";
    case Mode::TopoRB:
      return "toporb";
    case Mode::TopoKWay:
      return "topokway";
  }
  return "unknown";
}

RunOutcome runMode(const DirectedHypergraph& hg, Mode mode, const PartitionerConfig& config,
                   const MemeticConfig& memetic) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome outcome;
  switch (mode) {
    case Mode::Multilevel:
      outcome.assignment = partitionKway(hg, config);
      break;
    case Mode::Memetic:
      outcome.assignment = evolve(hg, config, memetic).best.assignment;
      break;
    case Mode::TopoRB:
      outcome.assignment = topoRB(hg, config);
      break;
    case Mode::TopoKWay:
      outcome.assignment = topoKWay(hg, config);
      break;
  }
  outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  outcome.report = verifyOrThrow(hg, outcome.assignment, config.k, config.epsilon);
  return outcome;
}

}  // namespace dahp
