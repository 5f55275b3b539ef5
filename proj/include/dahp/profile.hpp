// profile.hpp - benchmark result records and performance profiles
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dahp/types.hpp"

namespace dahp {

struct ResultRecord {
  std::string instance;
  std::string algorithm;
  BlockId k = 0;
  std::uint64_t seed = 0;
  Weight km1 = 0;
  Weight cut = 0;
  double seconds = 0;
  bool acyclic = false;
  bool balanced = false;
};

inline constexpr std::string_view kResultsHeader = "instance,algorithm,k,seed,km1,cut,seconds,acyclic,balanced";
inline constexpr std::string_view kProfileHeader = "tau,algorithm,fraction";

std::string writeResultsCsv(const std::vector<ResultRecord>& records);
std::vector<ResultRecord> parseResultsCsv(std::string_view text);  // throws MalformedInput

// 1.00, 1.01, ..., 2.00, 2.1, 2.2, ..., 10.0
std::vector<double> defaultTauGrid();

struct ProfilePoint {
  double tau = 0;
  std::string algorithm;
  double fraction = 0;
};

// An instance is an (instance, k) pair; each algorithm contributes its minimum
// km1 over seeds. fraction(tau) = share of instances with km1 <= tau * best.
// Points are grouped by algorithm (sorted by name), then by tau.
// Throws MissingCell when an algorithm has no record for some instance.
std::vector<ProfilePoint> performanceProfile(const std::vector<ResultRecord>& records,
                                             const std::vector<double>& taus = defaultTauGrid());

std::string writeProfileCsv(const std::vector<ProfilePoint>& points);

}  // namespace dahp
