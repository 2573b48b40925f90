#include "equiroute/sim.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

#include "equiroute/log.hpp"
#include "equiroute/rng.hpp"

namespace equiroute {

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::psr:
      return "psr";
    case Strategy::dsr:
      return "dsr";
    case Strategy::equity:
      return "equity";
  }
  return "unknown";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
  for (Strategy s : {Strategy::psr, Strategy::dsr, Strategy::equity}) {
    if (name == strategy_name(s)) {
      return s;
    }
  }
  return std::nullopt;
}

DtxScore final_dtx(const VehicleState& vehicle, const TripMinima& minima,
                   const ModeParams& mode) {
  if (vehicle.status != VehicleStatus::completed) {
    throw std::logic_error("final_dtx requires a completed trip");
  }
  return dtx_from_time(vehicle.travel_min(), minima, mode);
}

void SimConfig::check() const {
  if (fleet.private_count < 0 || fleet.autonomous_count < 0 || fleet.ride_hailing_count < 0) {
    throw std::invalid_argument("fleet counts must be non-negative");
  }
  if (!(depart_start_min < depart_end_min)) {
    throw std::invalid_argument("departure window must have start < end");
  }
  if (!(monitor_half_width_s > 0.0)) {
    throw std::invalid_argument("monitor window half-width must be positive");
  }
  if (route_candidates < 1) {
    throw std::invalid_argument("route candidate count must be at least 1");
  }
  if (workers < 1) {
    throw std::invalid_argument("worker count must be at least 1");
  }
}

Scenario generate_scenario(RoadNetwork net, ModeTable modes, SimConfig config) {
  config.check();
  modes.check();
  if (config.fleet.total() > 0 && (net.origins().empty() || net.destinations().empty())) {
    throw std::invalid_argument("network must declare origins and destinations");
  }
  Scenario sc{std::move(net), modes, config, {}};
  sc.vehicles.reserve(static_cast<std::size_t>(config.fleet.total()));
  Rng rng(config.seed);
  const auto& origins = sc.net.origins();
  const auto& dests = sc.net.destinations();
  // per vehicle the draw order is fixed: departure, origin, destination
  const auto sample_block = [&](VehicleMode mode, int count) {
    for (int i = 0; i < count; ++i) {
      VehicleSpec v;
      v.mode = mode;
      v.depart_min = rng.uniform(config.depart_start_min, config.depart_end_min);
      v.origin = origins[rng.below(origins.size())];
      v.destination = dests[rng.below(dests.size())];
      sc.vehicles.push_back(v);
    }
  };
  sample_block(VehicleMode::private_car, config.fleet.private_count);
  sample_block(VehicleMode::autonomous, config.fleet.autonomous_count);
  sample_block(VehicleMode::ride_hailing, config.fleet.ride_hailing_count);
  return sc;
}

namespace {

struct Event {
  double time;
  std::uint64_t seq;
  VehicleId vehicle;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) {
      return a.time > b.time;
    }
    return a.seq > b.seq;
  }
};

}  // namespace

RunResults run(const Scenario& scenario, Strategy strategy) {
  const RoadNetwork& net = scenario.net;
  const SimConfig& cfg = scenario.config;
  const double half_width = cfg.half_width_min();
  cfg.check();
  scenario.modes.check();

  const std::size_t n = scenario.vehicles.size();
  RunResults results;
  results.strategy = strategy;

  // trip minima per distinct OD; unreachable pairs fail their vehicles up front
  std::map<std::pair<NodeId, NodeId>, std::optional<TripMinima>> minima_by_od;
  std::vector<TravelerInfo> fleet(n);
  std::vector<VehicleState> vehicles(n);
  for (std::size_t i = 0; i < n; ++i) {
    const VehicleSpec& spec = scenario.vehicles[i];
    VehicleState& v = vehicles[i];
    v.id = static_cast<VehicleId>(i);
    v.mode = spec.mode;
    v.origin = spec.origin;
    v.destination = spec.destination;
    v.depart_min = spec.depart_min;

    auto key = std::make_pair(spec.origin, spec.destination);
    auto it = minima_by_od.find(key);
    if (it == minima_by_od.end()) {
      std::optional<TripMinima> m;
      try {
        m = trip_minima(net, spec.origin, spec.destination, scenario.modes);
      } catch (const NoRouteError&) {
        m = std::nullopt;
      }
      it = minima_by_od.emplace(key, m).first;
    }
    fleet[i].mode = spec.mode;
    fleet[i].depart_min = spec.depart_min;
    if (it->second) {
      fleet[i].minima = *it->second;
    } else {
      v.status = VehicleStatus::failed;
      log_message(LogLevel::warn, "vehicle " + std::to_string(i) + " has unreachable trip " +
                                      std::to_string(spec.origin) + " -> " +
                                      std::to_string(spec.destination));
    }
  }

  CandidateCache candidates(net, cfg.route_candidates);
  EntryLog entry_log;
  PlanRegistry registry;
  std::priority_queue<Event, std::vector<Event>, EventAfter> queue;
  std::uint64_t next_seq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (vehicles[i].status == VehicleStatus::waiting) {
      queue.push(Event{vehicles[i].depart_min, next_seq++, static_cast<VehicleId>(i)});
    }
  }

  double max_free_flow_edge = 0.0;
  for (const Edge& e : net.edges()) {
    max_free_flow_edge = std::max(max_free_flow_edge, e.free_flow_time_min);
  }

  WorldSnapshot world;
  world.net = &net;
  world.log = &entry_log;
  world.registry = &registry;
  world.modes = &scenario.modes;
  world.fleet = &fleet;
  world.half_width_min = half_width;
  world.workers = cfg.workers;

  const auto fail_vehicle = [&](VehicleState& v, const std::string& why) {
    v.status = VehicleStatus::failed;
    registry.erase(v.id);
    log_message(LogLevel::warn, "vehicle " + std::to_string(v.id) + " failed: " + why);
  };

  // Events with exactly equal times form one batch. All edge entries of the
  // batch are committed to the log first, then their travel times are
  // computed, so simultaneous entries see each other's flow contribution.
  struct PendingEntry {
    VehicleId vehicle;
    EdgeId edge;
  };
  std::vector<Event> batch;
  std::vector<PendingEntry> entered;
  double last_prune = 0.0;

  while (!queue.empty()) {
    const double now = queue.top().time;
    batch.clear();
    while (!queue.empty() && queue.top().time == now) {
      batch.push_back(queue.top());
      queue.pop();
    }
    world.now_min = now;

    entered.clear();
    for (const Event& ev : batch) {
      VehicleState& v = vehicles[static_cast<std::size_t>(ev.vehicle)];
      if (v.status == VehicleStatus::failed) {
        continue;
      }
      const bool departing = v.status == VehicleStatus::waiting;
      const NodeId node = departing ? v.origin : v.plan.nodes[1];
      v.visited.push_back(node);
      v.arrival_min.push_back(now);

      if (node == v.destination) {
        v.status = VehicleStatus::completed;
        v.complete_min = now;
        registry.erase(v.id);
        continue;
      }

      Route next_plan;
      try {
        if (strategy == Strategy::psr) {
          if (departing) {
            next_plan = plan_psr(net, v.origin, v.destination).route;
          } else {
            next_plan.nodes.assign(v.plan.nodes.begin() + 1, v.plan.nodes.end());
          }
        } else {
          PlanningSubject subject;
          subject.id = v.id;
          subject.mode = v.mode;
          subject.at = node;
          subject.dest = v.destination;
          subject.now_min = now;
          subject.experienced_min = now - v.depart_min;
          subject.minima = fleet[static_cast<std::size_t>(v.id)].minima;
          next_plan = strategy == Strategy::dsr ? plan_dsr(subject, world, candidates).route
                                                : plan_equity(subject, world, candidates).route;
        }
      } catch (const NoRouteError& err) {
        fail_vehicle(v, err.what());
        continue;
      }

      v.plan = std::move(next_plan);
      v.status = VehicleStatus::en_route;
      registry.register_plan(net, v.id, v.plan, now);
      const EdgeId first = net.find_edge(v.plan.nodes[0], v.plan.nodes[1]);
      entry_log.append(v.id, first, now);
      entered.push_back(PendingEntry{v.id, first});
    }

    for (const PendingEntry& pe : entered) {
      VehicleState& v = vehicles[static_cast<std::size_t>(pe.vehicle)];
      const double flow = monitor_adjacent_flow(entry_log, pe.edge, now, half_width, pe.vehicle);
      const double tau = net.travel_time(pe.edge, flow);
      v.edge_times_min.push_back(tau);
      results.traversals.push_back(TraversalRecord{pe.vehicle, pe.edge, now, flow, tau});
      queue.push(Event{now + tau, next_seq++, pe.vehicle});
    }

    if (now - last_prune > 10.0 * half_width + 1.0) {
      entry_log.prune_before(now - 2.0 * half_width - max_free_flow_edge);
      last_prune = now;
    }
  }

  // roll up per-vehicle records and the fleet equity report
  std::vector<std::pair<double, int>> travelers;
  std::array<double, 3> travel_sum{};
  std::array<double, 3> cost_sum{};
  results.vehicles.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const VehicleState& v = vehicles[i];
    VehicleRecord rec;
    rec.id = v.id;
    rec.mode = v.mode;
    rec.origin = v.origin;
    rec.destination = v.destination;
    rec.depart_min = v.depart_min;
    rec.completed = v.status == VehicleStatus::completed;
    if (rec.completed) {
      const ModeParams& mode = scenario.modes.params(v.mode);
      rec.complete_min = v.complete_min;
      rec.travel_min = v.travel_min();
      rec.cost_usd = mode.cost_per_min_usd * rec.travel_min;
      rec.dtx = final_dtx(v, fleet[i].minima, mode).value;
      const std::size_t mi = static_cast<std::size_t>(v.mode);
      travel_sum[mi] += rec.travel_min;
      cost_sum[mi] += rec.cost_usd;
      results.completed_by_mode[mi] += 1;
      if (v.origin == v.destination) {
        log_message(LogLevel::info, "vehicle " + std::to_string(v.id) +
                                        " had a degenerate trip; kept out of the equity report");
      } else {
        travelers.emplace_back(rec.dtx, mode.occupancy);
      }
    } else {
      results.failed_count += 1;
    }
    results.vehicles.push_back(rec);
  }
  for (std::size_t mi = 0; mi < 3; ++mi) {
    if (results.completed_by_mode[mi] > 0) {
      results.mean_travel_min[mi] = travel_sum[mi] / results.completed_by_mode[mi];
      results.mean_cost_usd[mi] = cost_sum[mi] / results.completed_by_mode[mi];
    }
  }
  if (!travelers.empty()) {
    results.fleet = dte(travelers);
  }
  return results;
}

}  // namespace equiroute
