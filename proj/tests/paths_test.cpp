#include <doctest.h>

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "equiroute/netgen.hpp"
#include "equiroute/network.hpp"
#include "equiroute/paths.hpp"
#include "equiroute/rng.hpp"
#include "oracles.hpp"

using namespace equiroute;

namespace {

RoadNetwork triangle() {
  RoadNetwork net;
  for (NodeId n : {0, 1, 2}) {
    net.add_node(n);
  }
  net.add_edge(Edge{0, 2, 5.0, 5.0, 1});
  net.add_edge(Edge{0, 1, 2.0, 5.0, 1});
  net.add_edge(Edge{1, 2, 2.0, 5.0, 1});
  return net;
}

// random digraph on 2..8 nodes; roughly half get small-integer weights so
// equal-weight ties actually occur
RoadNetwork random_graph(Rng& rng) {
  RoadNetwork net;
  const int n = 2 + static_cast<int>(rng.below(7));
  for (int i = 0; i < n; ++i) {
    net.add_node(i);
  }
  const bool integer_weights = rng.below(2) == 0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || rng.unit() > 0.45) {
        continue;
      }
      const double w =
          integer_weights ? static_cast<double>(1 + rng.below(4)) : rng.uniform(0.1, 10.0);
      net.add_edge(Edge{a, b, w, 5.0, 1});
    }
  }
  return net;
}

}  // namespace

TEST_CASE("shortest route on a line and a triangle") {
  RoadNetwork line;
  for (NodeId n : {0, 1, 2}) {
    line.add_node(n);
  }
  line.add_edge(Edge{0, 1, 1.0, 5.0, 1});
  line.add_edge(Edge{1, 2, 1.0, 5.0, 1});
  const WeightFunction lw = free_flow_weights(line);
  CHECK(shortest_route(line, lw, 0, 2) == Route{{0, 1, 2}});

  RoadNetwork tri = triangle();
  const WeightFunction tw = free_flow_weights(tri);
  CHECK(shortest_route(tri, tw, 0, 2) == Route{{0, 1, 2}});
  CHECK(route_weight(tri, tw, shortest_route(tri, tw, 0, 2)) == 4.0);
}

TEST_CASE("identical endpoints give the empty route") {
  RoadNetwork tri = triangle();
  const WeightFunction w = free_flow_weights(tri);
  const Route r = shortest_route(tri, w, 1, 1);
  CHECK(r.nodes == std::vector<NodeId>{1});
  CHECK(r.empty());
  CHECK(route_weight(tri, w, r) == 0.0);
  CHECK(k_shortest_routes(tri, w, 1, 1, 3).routes.size() == 1);
}

TEST_CASE("unreachable targets raise the no-route error") {
  RoadNetwork net;
  net.add_node(0);
  net.add_node(1);
  net.add_node(2);
  net.add_edge(Edge{0, 1, 1.0, 5.0, 1});
  const WeightFunction w = free_flow_weights(net);
  CHECK_THROWS_AS(shortest_route(net, w, 0, 2), NoRouteError);
  CHECK_THROWS_AS(shortest_route(net, w, 0, 9), NoRouteError);
  CHECK_THROWS_AS(k_shortest_routes(net, w, 0, 2, 3), NoRouteError);
}

TEST_CASE("negative and non-finite weights are rejected") {
  RoadNetwork net;
  net.add_node(0);
  net.add_node(1);
  net.add_edge(Edge{0, 1, 1.0, 5.0, 1});
  CHECK_THROWS_AS(shortest_route(net, table_weights({-1.0}), 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(
      shortest_route(net, table_weights({std::numeric_limits<double>::quiet_NaN()}), 0, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(k_shortest_routes(net, free_flow_weights(net), 0, 1, 0),
                  std::invalid_argument);
}

TEST_CASE("ranked alternatives on the triangle") {
  RoadNetwork tri = triangle();
  const WeightFunction w = free_flow_weights(tri);
  const CandidateSet two = k_shortest_routes(tri, w, 0, 2, 2);
  REQUIRE(two.routes.size() == 2);
  CHECK(two.routes[0] == Route{{0, 1, 2}});
  CHECK(two.weights[0] == 4.0);
  CHECK(two.routes[1] == Route{{0, 2}});
  CHECK(two.weights[1] == 5.0);

  const CandidateSet more = k_shortest_routes(tri, w, 0, 2, 10);
  CHECK(more.routes.size() == 2);  // only two simple paths exist
}

TEST_CASE("equal-weight alternatives come out in node order") {
  RoadNetwork net;
  for (NodeId n : {0, 1, 2, 3}) {
    net.add_node(n);
  }
  for (NodeId mid : {1, 2}) {
    net.add_edge(Edge{0, mid, 1.0, 5.0, 1});
    net.add_edge(Edge{mid, 3, 1.0, 5.0, 1});
  }
  const WeightFunction w = free_flow_weights(net);
  CHECK(shortest_route(net, w, 0, 3) == Route{{0, 1, 3}});
  const CandidateSet cands = k_shortest_routes(net, w, 0, 3, 2);
  REQUIRE(cands.routes.size() == 2);
  CHECK(cands.routes[0] == Route{{0, 1, 3}});
  CHECK(cands.routes[1] == Route{{0, 2, 3}});
}

TEST_CASE("ranked lists match exhaustive enumeration on random graphs") {
  Rng rng(20260815);
  int nontrivial = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const RoadNetwork net = random_graph(rng);
    const WeightFunction w = free_flow_weights(net);
    const NodeId from = 0;
    const NodeId to = static_cast<NodeId>(net.node_count() - 1);
    const auto oracle = oracle::paths_by_weight(net, w, from, to);
    if (oracle.size() > 1) {
      ++nontrivial;
    }
    for (int L : {1, 3, 7}) {
      if (oracle.empty()) {
        CHECK_THROWS_AS(k_shortest_routes(net, w, from, to, L), NoRouteError);
        continue;
      }
      const CandidateSet got = k_shortest_routes(net, w, from, to, L);
      const std::size_t expect = std::min<std::size_t>(oracle.size(), static_cast<std::size_t>(L));
      REQUIRE(got.routes.size() == expect);
      for (std::size_t i = 0; i < expect; ++i) {
        CHECK(got.routes[i] == oracle[i].second);
        CHECK(got.weights[i] == oracle[i].first);  // exact: same summation order
      }
    }
  }
  CHECK(nontrivial > 20);  // the sample actually exercised multi-path graphs
}

TEST_CASE("shorter request lists are prefixes of longer ones") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const RoadNetwork net = random_graph(rng);
    const WeightFunction w = free_flow_weights(net);
    const NodeId to = static_cast<NodeId>(net.node_count() - 1);
    const auto oracle = oracle::paths_by_weight(net, w, 0, to);
    if (oracle.empty()) {
      continue;
    }
    const CandidateSet a = k_shortest_routes(net, w, 0, to, 4);
    const CandidateSet b = k_shortest_routes(net, w, 0, to, 5);
    REQUIRE(a.routes.size() <= b.routes.size());
    for (std::size_t i = 0; i < a.routes.size(); ++i) {
      CHECK(a.routes[i] == b.routes[i]);
    }
    CHECK(shortest_route(net, w, 0, to) == b.routes[0]);
  }
}

TEST_CASE("candidate cache returns the same object and respects its limit") {
  RoadNetwork net = make_grid_network(3, 3);
  CandidateCache cache(net, 3);
  const CandidateSet& first = cache.get(0, 8);
  const CandidateSet& again = cache.get(0, 8);
  CHECK(&first == &again);
  CHECK(first.routes.size() == 3);
  CHECK(first.requested == 3);
  CHECK(cache.L() == 3);
}
