#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "equiroute/network.hpp"
#include "equiroute/paths.hpp"

namespace equiroute {

using VehicleId = std::int32_t;

// Closed interval [center - half_width, center + half_width], minutes.
struct MonitorWindow {
  double center_min = 0.0;
  double half_width_min = 1.0;
};

bool in_window(double t_min, const MonitorWindow& window);

// Append-only record of actual edge entries, bucketed per edge and kept in
// entry-time order so window counts reduce to a binary search.
class EntryLog {
 public:
  void append(VehicleId vehicle, EdgeId edge, double time_min);
  // entries by vehicles other than `self` with time inside `window`
  int count_others_in_window(EdgeId edge, const MonitorWindow& window, VehicleId self) const;
  // drop records strictly older than cutoff (no reachable window can span them)
  void prune_before(double cutoff_min);
  std::size_t size() const { return total_; }

 private:
  struct Record {
    double time_min;
    VehicleId vehicle;
  };
  std::unordered_map<EdgeId, std::vector<Record>> by_edge_;
  std::size_t total_ = 0;
};

// Current remaining plan per vehicle, anchored at its last actual node
// arrival. Projected entry times along the plan accumulate free-flow times
// from that anchor; a per-edge index serves both flow estimation and
// competitor discovery.
class PlanRegistry {
 public:
  void register_plan(const RoadNetwork& net, VehicleId vehicle, Route remaining,
                     double head_arrival_min);
  void erase(VehicleId vehicle);
  bool has(VehicleId vehicle) const;
  std::size_t size() const { return entries_.size(); }

  const Route& plan(VehicleId vehicle) const;
  double head_arrival_min(VehicleId vehicle) const;
  // free-flow time to finish the registered remaining plan
  double remaining_free_flow_min(VehicleId vehicle) const;

  // vehicles other than `self` whose projected entry to `edge` falls in `window`
  int count_projected_in_window(EdgeId edge, const MonitorWindow& window, VehicleId self) const;
  // vehicles whose remaining plan crosses `edge`, ascending id order
  void append_vehicles_on_edge(EdgeId edge, std::vector<VehicleId>& out) const;

 private:
  struct Entry {
    Route remaining;
    double head_arrival_min = 0.0;
    double free_flow_total_min = 0.0;
    std::vector<EdgeId> edges;
    std::vector<double> projected_entry_min;  // parallel to edges
  };
  std::map<VehicleId, Entry> entries_;
  std::unordered_map<EdgeId, std::map<VehicleId, double>> by_edge_;

  const Entry& entry(VehicleId vehicle) const;
};

// Observed flow on an edge the vehicle is entering now: other vehicles'
// actual entries inside the window, plus the vehicle itself, per unit window.
double monitor_adjacent_flow(const EntryLog& log, EdgeId edge, double arrival_min,
                             double half_width_min, VehicleId self);

// Anticipated flow on a downstream edge at an estimated arrival: competitors'
// projected entries inside the window, plus the vehicle itself.
double estimate_future_flow(const PlanRegistry& registry, EdgeId edge, double est_arrival_min,
                            double half_width_min, VehicleId self);

struct RouteRollout {
  std::vector<double> entry_times_min;     // one per route node; [0] = start
  std::vector<double> flows_veh_per_min;   // one per edge
  std::vector<double> times_min;           // one per edge
  double total_min = 0.0;
};

// Walk the route accumulating estimated arrivals: the first edge uses the
// monitored flow at `start`, each later edge the estimated flow at its own
// projected entry time.
RouteRollout rollout_route(const RoadNetwork& net, const EntryLog& log,
                           const PlanRegistry& registry, const Route& route, double start_min,
                           double half_width_min, VehicleId self);

}  // namespace equiroute
