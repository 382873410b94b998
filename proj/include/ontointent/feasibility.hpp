#pragma once

#include <string>
#include <vector>

namespace ontointent {

/// Largest share of device RAM a model may occupy.
inline constexpr double kMaxMemoryShare = 0.06;

struct DeviceBudget {
  double ram_gb = 8.0;
  double max_latency_ms = 300.0;
  double max_energy_j = 1.0;
};

struct ModelFootprint {
  double size_gb = 0.0;
  double latency_ms = 0.0;
  double energy_j = 0.0;
};

struct FeasibilitySpec {
  DeviceBudget device;
  ModelFootprint model;
};

struct FeasibilityResult {
  bool feasible = false;
  double memory_share = 0.0;  // size / RAM
  double min_ram_gb = 0.0;    // size / kMaxMemoryShare
  std::vector<std::string> reasons;
};

/// Feasible iff size/RAM < 0.06, latency < cap and energy < cap (all
/// strict). Throws NonPositiveInput.
FeasibilityResult feasibility(const FeasibilitySpec& spec);

}  // namespace ontointent
