// modes.hpp - the four partitioning modes behind one entry point
#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "dahp/driver.hpp"
#include "dahp/memetic.hpp"

namespace dahp {

enum class Mode { Multilevel, Memetic, TopoRB, TopoKWay };

std::optional<Mode> parseMode(std::string_view name);
std::string_view toString(Mode mode);

struct RunOutcome {
  std::vector<BlockId> assignment;
  PartitionReport report;
  double seconds = 0;
};

// Runs a mode and verifies the result. Throws VerificationFailed on a cyclic
// quotient graph or an empty block; balance is only reported.
RunOutcome runMode(const DirectedHypergraph& hg, Mode mode, const PartitionerConfig& config,
                   const MemeticConfig& memetic = {});

}  // namespace dahp
