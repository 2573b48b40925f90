#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "equiroute/flow.hpp"
#include "equiroute/network.hpp"

using namespace equiroute;

namespace {

// 0 -> 1 -> 2 -> 3 line, 1-minute edges, capacity 5 veh/min
RoadNetwork line4() {
  RoadNetwork net;
  for (NodeId n : {0, 1, 2, 3}) {
    net.add_node(n);
  }
  net.add_edge(Edge{0, 1, 1.0, 5.0, 1});
  net.add_edge(Edge{1, 2, 1.0, 5.0, 1});
  net.add_edge(Edge{2, 3, 1.0, 5.0, 1});
  return net;
}

}  // namespace

TEST_CASE("window membership is closed on both ends") {
  const MonitorWindow w{100.0, 60.0};
  CHECK(in_window(40.0, w));
  CHECK(in_window(160.0, w));
  CHECK(in_window(100.0, w));
  CHECK(in_window(40.0 + 1e-9, w));
  CHECK_FALSE(in_window(39.999, w));
  CHECK_FALSE(in_window(161.0, w));
}

TEST_CASE("monitored flow counts others in the window plus the subject") {
  EntryLog log;
  const EdgeId e = 0;

  // alone: only the subject itself contributes
  CHECK(monitor_adjacent_flow(log, e, 10.0, 1.0, 7) == 0.5);

  log.append(1, e, 9.5);
  log.append(2, e, 10.5);
  CHECK(monitor_adjacent_flow(log, e, 10.0, 1.0, 7) == 1.5);

  // subject's own earlier entry is not double counted
  CHECK(monitor_adjacent_flow(log, e, 10.0, 1.0, 1) == 1.0);

  // entries on other edges or outside the window do not count
  log.append(3, 1, 10.0);
  log.append(4, e, 12.5);
  CHECK(monitor_adjacent_flow(log, e, 10.0, 1.0, 7) == 1.5);

  // window endpoints are inclusive
  CHECK(monitor_adjacent_flow(log, e, 11.5, 1.0, 7) == 1.5);

  CHECK_THROWS_AS(monitor_adjacent_flow(log, e, 10.0, 0.0, 7), std::invalid_argument);
  CHECK_THROWS_AS(monitor_adjacent_flow(log, e, 10.0, -1.0, 7), std::invalid_argument);
}

TEST_CASE("entry log pruning drops only strictly older records") {
  EntryLog log;
  log.append(1, 0, 5.0);
  log.append(2, 0, 9.0);
  log.append(3, 0, 9.5);
  CHECK(log.size() == 3);
  log.prune_before(9.0);
  CHECK(log.size() == 2);
  CHECK(monitor_adjacent_flow(log, 0, 9.5, 1.0, 9) == 1.5);
  log.prune_before(100.0);
  CHECK(log.size() == 0);
  CHECK(monitor_adjacent_flow(log, 0, 9.5, 1.0, 9) == 0.5);
}

TEST_CASE("registry projects entry times by free-flow accumulation") {
  const RoadNetwork net = line4();
  PlanRegistry reg;
  reg.register_plan(net, 11, Route{{0, 1, 2, 3}}, 100.0);

  CHECK(reg.has(11));
  CHECK(reg.head_arrival_min(11) == 100.0);
  CHECK(reg.remaining_free_flow_min(11) == 3.0);
  CHECK(reg.plan(11) == Route{{0, 1, 2, 3}});

  const EdgeId e12 = net.find_edge(1, 2);
  const EdgeId e23 = net.find_edge(2, 3);
  // projected entries: edge(0,1) at 100, edge(1,2) at 101, edge(2,3) at 102
  CHECK(reg.count_projected_in_window(e12, MonitorWindow{101.0, 0.25}, 99) == 1);
  CHECK(reg.count_projected_in_window(e23, MonitorWindow{102.0, 0.25}, 99) == 1);
  CHECK(reg.count_projected_in_window(e12, MonitorWindow{103.0, 0.25}, 99) == 0);
  // the vehicle never counts against itself
  CHECK(reg.count_projected_in_window(e12, MonitorWindow{101.0, 0.25}, 11) == 0);

  std::vector<VehicleId> on_edge;
  reg.append_vehicles_on_edge(e12, on_edge);
  CHECK(on_edge == std::vector<VehicleId>{11});

  reg.erase(11);
  CHECK_FALSE(reg.has(11));
  CHECK(reg.count_projected_in_window(e12, MonitorWindow{101.0, 0.25}, 99) == 0);
  on_edge.clear();
  reg.append_vehicles_on_edge(e12, on_edge);
  CHECK(on_edge.empty());
}

TEST_CASE("re-registering a vehicle replaces its old projection") {
  const RoadNetwork net = line4();
  PlanRegistry reg;
  reg.register_plan(net, 5, Route{{0, 1, 2, 3}}, 50.0);
  reg.register_plan(net, 5, Route{{2, 3}}, 60.0);
  CHECK(reg.size() == 1);
  CHECK(reg.remaining_free_flow_min(5) == 1.0);
  const EdgeId e01 = net.find_edge(0, 1);
  const EdgeId e23 = net.find_edge(2, 3);
  CHECK(reg.count_projected_in_window(e01, MonitorWindow{50.0, 5.0}, 99) == 0);
  CHECK(reg.count_projected_in_window(e23, MonitorWindow{60.0, 0.5}, 99) == 1);
}

TEST_CASE("registry rejects plans that do not follow the network") {
  const RoadNetwork net = line4();
  PlanRegistry reg;
  CHECK_THROWS(reg.register_plan(net, 1, Route{{0, 2}}, 0.0));
  CHECK_FALSE(reg.has(1));
  CHECK_THROWS_AS(reg.plan(1), std::out_of_range);
}

TEST_CASE("estimated flow mirrors the monitor on projected entries") {
  const RoadNetwork net = line4();
  PlanRegistry reg;
  const EdgeId e12 = net.find_edge(1, 2);

  // nobody else registered: just the subject
  CHECK(estimate_future_flow(reg, e12, 200.0, 1.0, 7) == 0.5);

  reg.register_plan(net, 3, Route{{0, 1, 2}}, 199.2);  // projected on (1,2) at 200.2
  CHECK(estimate_future_flow(reg, e12, 200.0, 1.0, 7) == 1.0);
  CHECK(estimate_future_flow(reg, e12, 205.0, 1.0, 7) == 0.5);   // outside window
  CHECK(estimate_future_flow(reg, e12, 200.0, 1.0, 3) == 0.5);   // self excluded

  CHECK_THROWS_AS(estimate_future_flow(reg, e12, 200.0, 0.0, 7), std::invalid_argument);
}

TEST_CASE("flow normalization uses the full window width") {
  EntryLog log;
  PlanRegistry reg;
  for (double hw : {0.25, 0.5, 2.0}) {
    CHECK(monitor_adjacent_flow(log, 0, 10.0, hw, 1) == 1.0 / (2.0 * hw));
    CHECK(estimate_future_flow(reg, 0, 10.0, hw, 1) == 1.0 / (2.0 * hw));
  }
}

TEST_CASE("rollout composes monitored and estimated flows along the route") {
  const RoadNetwork net = line4();
  EntryLog log;
  PlanRegistry reg;

  SUBCASE("single edge equals the plain monitored travel time") {
    const RouteRollout r = rollout_route(net, log, reg, Route{{0, 1}}, 30.0, 1.0, 9);
    REQUIRE(r.times_min.size() == 1);
    CHECK(r.flows_veh_per_min[0] == 0.5);
    CHECK(r.times_min[0] == net.travel_time(net.find_edge(0, 1), 0.5));
    CHECK(r.total_min == (30.0 + r.times_min[0]) - 30.0);
    CHECK(r.entry_times_min == std::vector<double>{30.0, 30.0 + r.times_min[0]});
  }

  SUBCASE("later edges are estimated at accumulated arrival times") {
    reg.register_plan(net, 3, Route{{1, 2}}, 31.0);  // projected on (1,2) near our arrival
    const RouteRollout r = rollout_route(net, log, reg, Route{{0, 1, 2}}, 30.0, 1.0, 9);
    REQUIRE(r.times_min.size() == 2);
    CHECK(r.flows_veh_per_min[0] == 0.5);  // empty log: subject only
    CHECK(r.flows_veh_per_min[1] == 1.0);  // competitor 3 lands in the window
    const double t0 = net.travel_time(net.find_edge(0, 1), 0.5);
    const double t1 = net.travel_time(net.find_edge(1, 2), 1.0);
    CHECK(r.times_min[0] == t0);
    CHECK(r.times_min[1] == t1);
    CHECK(r.entry_times_min[1] == 30.0 + t0);
    CHECK(r.entry_times_min[2] == 30.0 + t0 + t1);
    CHECK(r.total_min == (30.0 + t0 + t1) - 30.0);  // the accumulator's exact order
  }

  SUBCASE("traffic on the first edge slows the rollout") {
    const RouteRollout empty = rollout_route(net, log, reg, Route{{0, 1, 2}}, 30.0, 1.0, 9);
    for (VehicleId v = 100; v < 110; ++v) {
      log.append(v, net.find_edge(0, 1), 29.8);
    }
    const RouteRollout loaded = rollout_route(net, log, reg, Route{{0, 1, 2}}, 30.0, 1.0, 9);
    CHECK(loaded.total_min > empty.total_min);
    CHECK(loaded.flows_veh_per_min[0] == 5.5);
  }

  SUBCASE("entry times increase strictly and rollouts are repeatable") {
    log.append(1, net.find_edge(0, 1), 29.9);
    reg.register_plan(net, 2, Route{{1, 2, 3}}, 30.5);
    const RouteRollout a = rollout_route(net, log, reg, Route{{0, 1, 2, 3}}, 30.0, 1.0, 9);
    const RouteRollout b = rollout_route(net, log, reg, Route{{0, 1, 2, 3}}, 30.0, 1.0, 9);
    CHECK(a.entry_times_min == b.entry_times_min);
    CHECK(a.total_min == b.total_min);
    for (std::size_t i = 1; i < a.entry_times_min.size(); ++i) {
      CHECK(a.entry_times_min[i] > a.entry_times_min[i - 1]);
    }
  }

  SUBCASE("degenerate routes are rejected") {
    CHECK_THROWS_AS(rollout_route(net, log, reg, Route{{0}}, 30.0, 1.0, 9),
                    std::invalid_argument);
    CHECK_THROWS_AS(rollout_route(net, log, reg, Route{}, 30.0, 1.0, 9), std::invalid_argument);
  }
}
