#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equiroute/equity.hpp"
#include "equiroute/flow.hpp"
#include "equiroute/network.hpp"
#include "equiroute/planner.hpp"

namespace equiroute {

enum class Strategy : std::uint8_t { psr = 0, dsr = 1, equity = 2 };

std::string_view strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

enum class VehicleStatus : std::uint8_t { waiting, en_route, completed, failed };

struct VehicleState {
  VehicleId id = 0;
  VehicleMode mode = VehicleMode::private_car;
  NodeId origin = 0;
  NodeId destination = 0;
  double depart_min = 0.0;
  VehicleStatus status = VehicleStatus::waiting;

  std::vector<NodeId> visited;          // nodes actually reached
  std::vector<double> arrival_min;      // parallel to visited
  std::vector<double> edge_times_min;   // actual traversal time per hop taken
  Route plan;                           // remaining route from the latest node
  double complete_min = 0.0;            // set when status == completed

  double travel_min() const { return complete_min - depart_min; }
};

// Realized-trip score; only meaningful once the vehicle finished.
DtxScore final_dtx(const VehicleState& vehicle, const TripMinima& minima,
                   const ModeParams& mode);

struct VehicleSpec {
  VehicleMode mode = VehicleMode::private_car;
  NodeId origin = 0;
  NodeId destination = 0;
  double depart_min = 0.0;
};

struct FleetConfig {
  int private_count = 500;
  int autonomous_count = 300;
  int ride_hailing_count = 200;
  int total() const { return private_count + autonomous_count + ride_hailing_count; }
};

struct SimConfig {
  FleetConfig fleet;
  double depart_start_min = 0.0;
  double depart_end_min = 120.0;
  double monitor_half_width_s = 60.0;  // the window half-width, in seconds
  int route_candidates = 7;            // alternatives evaluated per decision
  std::uint64_t seed = 1;
  int workers = 1;

  double half_width_min() const { return monitor_half_width_s / 60.0; }
  void check() const;  // throws std::invalid_argument
};

struct Scenario {
  RoadNetwork net;
  ModeTable modes;
  SimConfig config;
  std::vector<VehicleSpec> vehicles;  // id == index
};

// Samples departures uniformly in the window and OD pairs uniformly over
// origins x destinations, reproducibly from config.seed. Vehicles are laid
// out private block first, then autonomous, then ride-hailing.
Scenario generate_scenario(RoadNetwork net, ModeTable modes, SimConfig config);

struct VehicleRecord {
  VehicleId id = 0;
  VehicleMode mode = VehicleMode::private_car;
  NodeId origin = 0;
  NodeId destination = 0;
  double depart_min = 0.0;
  double complete_min = 0.0;
  double travel_min = 0.0;
  double cost_usd = 0.0;
  double dtx = 0.0;
  bool completed = false;
};

// One actual edge entry with the flow and travel time frozen at entry; the
// full list replays the run exactly.
struct TraversalRecord {
  VehicleId vehicle = 0;
  EdgeId edge = kNoEdge;
  double entry_min = 0.0;
  double flow_veh_per_min = 0.0;
  double time_min = 0.0;
};

struct RunResults {
  Strategy strategy = Strategy::psr;
  std::vector<VehicleRecord> vehicles;
  std::vector<TraversalRecord> traversals;
  std::optional<EquityReport> fleet;  // absent when nothing completed
  std::array<double, 3> mean_travel_min{};  // by VehicleMode, completed only
  std::array<double, 3> mean_cost_usd{};
  std::array<int, 3> completed_by_mode{};
  int failed_count = 0;
};

// Deterministic discrete-event run of the whole fleet under one strategy.
RunResults run(const Scenario& scenario, Strategy strategy);

}  // namespace equiroute
