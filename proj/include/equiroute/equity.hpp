#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "equiroute/flow.hpp"
#include "equiroute/network.hpp"
#include "equiroute/paths.hpp"

namespace equiroute {

enum class VehicleMode : std::uint8_t { private_car = 0, autonomous = 1, ride_hailing = 2 };

inline constexpr std::array<VehicleMode, 3> kAllModes = {
    VehicleMode::private_car, VehicleMode::autonomous, VehicleMode::ride_hailing};

std::string_view mode_name(VehicleMode mode);
std::optional<VehicleMode> mode_from_name(std::string_view name);

struct ModeParams {
  // objective weights: travel time, cost, convenience; must sum to 1
  double xi1 = 0.4;
  double xi2 = 0.4;
  double xi3 = 0.2;
  double cost_per_min_usd = 0.27;
  double wait_min = 2.0;          // average wait to access the vehicle
  double depart_window_h = 24.0;  // width of the acceptable departure window
  int occupancy = 1;              // travelers served per vehicle

  // wait relative to the departure window, in common time units
  double inconvenience() const { return wait_min / (depart_window_h * 60.0); }
  void check() const;  // throws std::invalid_argument on bad values
};

struct ModeTable {
  ModeParams private_car{0.4, 0.4, 0.2, 0.27, 2.0, 24.0, 1};
  ModeParams autonomous{0.4, 0.4, 0.2, 0.1485, 15.0, 18.0, 1};
  ModeParams ride_hailing{0.4, 0.4, 0.2, 0.1536, 6.0, 12.0, 2};

  const ModeParams& params(VehicleMode mode) const;
  ModeParams& params(VehicleMode mode);

  // derived floors/ceilings, recomputed on demand
  double min_cost_per_min() const;
  double min_wait_min() const;
  double max_depart_window_h() const;
  double min_inconvenience() const { return min_wait_min() / (max_depart_window_h() * 60.0); }
  void check() const;
};

// Best achievable travel time, cost, and inconvenience for one OD pair,
// across all modes.
struct TripMinima {
  double tau_min = 0.0;  // free-flow shortest-path minutes
  double phi_min = 0.0;  // cheapest cost rate times tau_min, $
  double q_min = 0.0;    // smallest wait over widest window
};

TripMinima trip_minima(const RoadNetwork& net, NodeId origin, NodeId dest,
                       const ModeTable& modes);

// Travel experience score in (0, 1]: 1 means the trip matched the best any
// mode could achieve on time, cost, and convenience simultaneously.
struct DtxScore {
  double value = 1.0;
  double efficiency = 1.0;   // best time over this trip's time
  double cost = 1.0;         // best cost over this trip's cost
  double convenience = 1.0;  // best inconvenience over this mode's
};

DtxScore dtx_from_time(double travel_min, const TripMinima& minima, const ModeParams& mode);

// Score of a trip that runs the mode-optimal route at free flow; depends on
// the mode table only.
DtxScore free_flow_dtx(const ModeParams& mode, const ModeTable& modes);

struct EquityReport {
  std::vector<double> dtx_multiset;  // occupancy-expanded traveler scores
  double mean = 0.0;
  double dte = 1.0;  // 1 - Gini over the multiset
};

// Each entry is one vehicle's score plus how many travelers it carries.
EquityReport dte(const std::vector<std::pair<double, int>>& dtx_and_occupancy);

// Vehicles whose registered plan shares at least one edge with any candidate
// route; the subject always belongs. Ascending id order.
std::vector<VehicleId> competitors(const RoadNetwork& net, VehicleId subject,
                                   const CandidateSet& candidates, const PlanRegistry& registry);

struct PerfectEquityReport {
  std::array<double, 3> free_flow;  // indexed by VehicleMode
  double max_gap = 0.0;
  bool holds = false;
};

// Do all modes reach the same free-flow score (within tol)? If so, a fleet on
// mode-optimal routes in an uncongested network is perfectly equitable.
PerfectEquityReport check_perfect_equity(const ModeTable& modes, double tol);

}  // namespace equiroute
