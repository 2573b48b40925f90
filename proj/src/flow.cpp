#include "equiroute/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace equiroute {

bool in_window(double t_min, const MonitorWindow& window) {
  return window.center_min - window.half_width_min <= t_min &&
         t_min <= window.center_min + window.half_width_min;
}

void EntryLog::append(VehicleId vehicle, EdgeId edge, double time_min) {
  if (time_min < 0.0 || !std::isfinite(time_min)) {
    throw std::invalid_argument("entry time must be finite and non-negative");
  }
  auto& bucket = by_edge_[edge];
  Record rec{time_min, vehicle};
  if (!bucket.empty() && bucket.back().time_min > time_min) {
    // callers append in event order, so this is a rare guard, not the fast path
    auto pos = std::upper_bound(bucket.begin(), bucket.end(), time_min,
                                [](double t, const Record& r) { return t < r.time_min; });
    bucket.insert(pos, rec);
  } else {
    bucket.push_back(rec);
  }
  ++total_;
}

int EntryLog::count_others_in_window(EdgeId edge, const MonitorWindow& window,
                                     VehicleId self) const {
  auto it = by_edge_.find(edge);
  if (it == by_edge_.end()) {
    return 0;
  }
  const auto& bucket = it->second;
  const double lo = window.center_min - window.half_width_min;
  const double hi = window.center_min + window.half_width_min;
  auto first = std::lower_bound(bucket.begin(), bucket.end(), lo,
                                [](const Record& r, double t) { return r.time_min < t; });
  auto last = std::upper_bound(first, bucket.end(), hi,
                               [](double t, const Record& r) { return t < r.time_min; });
  int count = 0;
  for (; first != last; ++first) {
    if (first->vehicle != self) {
      ++count;
    }
  }
  return count;
}

void EntryLog::prune_before(double cutoff_min) {
  for (auto& [edge, bucket] : by_edge_) {
    auto keep = std::lower_bound(bucket.begin(), bucket.end(), cutoff_min,
                                 [](const Record& r, double t) { return r.time_min < t; });
    total_ -= static_cast<std::size_t>(keep - bucket.begin());
    bucket.erase(bucket.begin(), keep);
  }
}

void PlanRegistry::register_plan(const RoadNetwork& net, VehicleId vehicle, Route remaining,
                                 double head_arrival_min) {
  Entry e;
  e.edges = route_edge_ids(net, remaining);  // validates the route
  e.remaining = std::move(remaining);
  e.head_arrival_min = head_arrival_min;
  e.projected_entry_min.reserve(e.edges.size());
  double t = head_arrival_min;
  for (EdgeId id : e.edges) {
    e.projected_entry_min.push_back(t);
    t += net.edge(id).free_flow_time_min;
  }
  e.free_flow_total_min = t - head_arrival_min;

  erase(vehicle);
  for (std::size_t s = 0; s < e.edges.size(); ++s) {
    by_edge_[e.edges[s]].emplace(vehicle, e.projected_entry_min[s]);
  }
  entries_.emplace(vehicle, std::move(e));
}

void PlanRegistry::erase(VehicleId vehicle) {
  auto it = entries_.find(vehicle);
  if (it == entries_.end()) {
    return;
  }
  for (EdgeId id : it->second.edges) {
    auto bucket = by_edge_.find(id);
    if (bucket != by_edge_.end()) {
      bucket->second.erase(vehicle);
      if (bucket->second.empty()) {
        by_edge_.erase(bucket);
      }
    }
  }
  entries_.erase(it);
}

bool PlanRegistry::has(VehicleId vehicle) const { return entries_.count(vehicle) != 0; }

const PlanRegistry::Entry& PlanRegistry::entry(VehicleId vehicle) const {
  auto it = entries_.find(vehicle);
  if (it == entries_.end()) {
    throw std::out_of_range("no registered plan for vehicle " + std::to_string(vehicle));
  }
  return it->second;
}

const Route& PlanRegistry::plan(VehicleId vehicle) const { return entry(vehicle).remaining; }

double PlanRegistry::head_arrival_min(VehicleId vehicle) const {
  return entry(vehicle).head_arrival_min;
}

double PlanRegistry::remaining_free_flow_min(VehicleId vehicle) const {
  return entry(vehicle).free_flow_total_min;
}

int PlanRegistry::count_projected_in_window(EdgeId edge, const MonitorWindow& window,
                                            VehicleId self) const {
  auto it = by_edge_.find(edge);
  if (it == by_edge_.end()) {
    return 0;
  }
  int count = 0;
  for (const auto& [vehicle, t] : it->second) {
    if (vehicle != self && in_window(t, window)) {
      ++count;
    }
  }
  return count;
}

void PlanRegistry::append_vehicles_on_edge(EdgeId edge, std::vector<VehicleId>& out) const {
  auto it = by_edge_.find(edge);
  if (it == by_edge_.end()) {
    return;
  }
  for (const auto& [vehicle, t] : it->second) {
    out.push_back(vehicle);
  }
}

namespace {

void check_half_width(double half_width_min) {
  if (!(half_width_min > 0.0) || !std::isfinite(half_width_min)) {
    throw std::invalid_argument("monitor half-width must be positive and finite");
  }
}

}  // namespace

double monitor_adjacent_flow(const EntryLog& log, EdgeId edge, double arrival_min,
                             double half_width_min, VehicleId self) {
  check_half_width(half_width_min);
  const int others = log.count_others_in_window(edge, {arrival_min, half_width_min}, self);
  return (others + 1) / (2.0 * half_width_min);
}

double estimate_future_flow(const PlanRegistry& registry, EdgeId edge, double est_arrival_min,
                            double half_width_min, VehicleId self) {
  check_half_width(half_width_min);
  const int others =
      registry.count_projected_in_window(edge, {est_arrival_min, half_width_min}, self);
  return (others + 1) / (2.0 * half_width_min);
}

RouteRollout rollout_route(const RoadNetwork& net, const EntryLog& log,
                           const PlanRegistry& registry, const Route& route, double start_min,
                           double half_width_min, VehicleId self) {
  if (route.empty()) {
    throw std::invalid_argument("rollout_route: route must have at least one edge");
  }
  const std::vector<EdgeId> edges = route_edge_ids(net, route);
  RouteRollout out;
  out.entry_times_min.reserve(route.nodes.size());
  out.flows_veh_per_min.reserve(edges.size());
  out.times_min.reserve(edges.size());
  double t = start_min;
  out.entry_times_min.push_back(t);
  for (std::size_t s = 0; s < edges.size(); ++s) {
    const double flow =
        s == 0 ? monitor_adjacent_flow(log, edges[s], t, half_width_min, self)
               : estimate_future_flow(registry, edges[s], t, half_width_min, self);
    const double tau = net.travel_time(edges[s], flow);
    out.flows_veh_per_min.push_back(flow);
    out.times_min.push_back(tau);
    t += tau;
    out.entry_times_min.push_back(t);
  }
  out.total_min = t - start_min;
  return out;
}

}  // namespace equiroute
