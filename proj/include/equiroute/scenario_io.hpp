#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "equiroute/network_io.hpp"
#include "equiroute/sim.hpp"

namespace equiroute {

// Everything a scenario-config file describes. The digest fingerprints the
// canonicalized file so outputs can be traced back to their exact inputs.
struct LoadedConfig {
  RoadNetwork net;
  ModeTable modes;
  SimConfig sim;
  std::optional<Strategy> strategy;
  std::string network_path;
  std::string digest;
};

// Config JSON: { network: "path" (relative to the config file), strategy?,
// fleet?: {private, autonomous, ride_hailing}, modes?: {private: {xi1, xi2,
// xi3, cost_per_min_usd, wait_min, depart_window_h, occupancy}, ...},
// sim?: {monitor_half_width_s, route_candidates, seed, depart_start_min,
// depart_end_min, workers} }. Unknown keys are rejected.
LoadedConfig load_scenario_config(const std::string& path);

// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

// columns: id,mode,origin,dest,depart_min,complete_min,travel_min,cost_usd,
// dtx,strategy — the last four empty for vehicles that never completed
void write_vehicles_csv(const std::string& path, const RunResults& results);

void write_run_summary(const std::string& path, const RunResults& results, std::uint64_t seed,
                       const std::string& digest);

struct StrategySummary {
  Strategy strategy = Strategy::psr;
  std::optional<double> fleet_dte;
  std::array<double, 3> mean_travel_min{};  // by VehicleMode
  std::array<double, 3> mean_cost_usd{};
  std::array<int, 3> completed_by_mode{};
  int completed = 0;
  int failed = 0;
};

StrategySummary summarize(const RunResults& results);

struct ComparisonReport {
  std::uint64_t seed = 0;
  std::string config_digest;
  std::array<StrategySummary, 3> strategies;  // indexed by Strategy
};

ComparisonReport build_comparison(const std::array<RunResults, 3>& runs, std::uint64_t seed,
                                  const std::string& digest);

void write_comparison_json(const std::string& path, const ComparisonReport& report);
ComparisonReport read_comparison_json(const std::string& path);

// per-vehicle scores in long form: strategy,id,mode,dtx (completed trips)
void write_dtx_distribution_csv(const std::string& path,
                                const std::array<RunResults, 3>& runs);

// per-strategy, per-mode aggregates: strategy,mode,mean_travel_min,
// mean_cost_usd,completed
void write_mode_means_csv(const std::string& path, const ComparisonReport& report);

}  // namespace equiroute
