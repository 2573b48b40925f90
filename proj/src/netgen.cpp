#include "equiroute/netgen.hpp"

#include <stdexcept>

namespace equiroute {

RoadNetwork make_line_network(int node_count, double edge_time_min, double capacity_per_lane,
                              int lanes) {
  if (node_count < 2) {
    throw std::invalid_argument("line network needs at least 2 nodes");
  }
  RoadNetwork net;
  for (int i = 0; i < node_count; ++i) {
    net.add_node(i, i * 450.0, 0.0);
  }
  for (int i = 0; i + 1 < node_count; ++i) {
    net.add_edge(Edge{i, i + 1, edge_time_min, capacity_per_lane, lanes});
  }
  net.set_origins({0});
  net.set_destinations({node_count - 1});
  return net;
}

RoadNetwork make_grid_network(int rows, int cols, double edge_time_min,
                              double capacity_per_lane, int lanes) {
  if (rows < 1 || cols < 2) {
    throw std::invalid_argument("grid network needs rows >= 1 and cols >= 2");
  }
  RoadNetwork net;
  const auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      net.add_node(id(r, c), c * 450.0, r * 450.0);
    }
  }
  const auto link = [&](NodeId a, NodeId b) {
    net.add_edge(Edge{a, b, edge_time_min, capacity_per_lane, lanes});
    net.add_edge(Edge{b, a, edge_time_min, capacity_per_lane, lanes});
  };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) {
        link(id(r, c), id(r, c + 1));
      }
      if (r + 1 < rows) {
        link(id(r, c), id(r + 1, c));
      }
    }
  }
  std::vector<NodeId> origins;
  std::vector<NodeId> dests;
  for (int r = 0; r < rows; ++r) {
    origins.push_back(id(r, 0));
    dests.push_back(id(r, cols - 1));
  }
  net.set_origins(std::move(origins));
  net.set_destinations(std::move(dests));
  return net;
}

namespace {

constexpr double kSpeedMPerMin = 450.0;  // 27 km/h
constexpr double kCapacity = 5.0;        // veh/min per lane

double minutes(double length_m) { return length_m / kSpeedMPerMin; }

}  // namespace

RoadNetwork make_boston_like() {
  constexpr int kRows = 3;
  constexpr int kCols = 15;
  constexpr int kWestBank = 7;  // river lies between columns 7 and 8
  RoadNetwork net;
  const auto id = [](int r, int c) { return r * kCols + c; };
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      net.add_node(id(r, c), c * 1350.0, r * 450.0);
    }
  }

  const auto link = [&](NodeId a, NodeId b, double length_m, int lanes) {
    net.add_edge(Edge{a, b, minutes(length_m), kCapacity, lanes});
    net.add_edge(Edge{b, a, minutes(length_m), kCapacity, lanes});
  };

  // The middle row is the crosstown arterial; on nominal times every trip
  // wants it end to end, so static plans pile onto it.  The outer rows cost
  // roughly 15% more and the cross streets add a toll of their own, which
  // keeps diversion a real decision instead of a free lunch: adaptive plans
  // spread out only while the arterial is genuinely congested.
  const auto east_west_length = [](int r) { return r == 1 ? 1350.0 : 1550.0; };
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c + 1 < kCols; ++c) {
      if (c == kWestBank) {
        continue;  // river gap; bridges added below
      }
      link(id(r, c), id(r, c + 1), east_west_length(r), 1);
    }
  }
  for (int r = 0; r + 1 < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      link(id(r, c), id(r + 1, c), 675.0, 1);
    }
  }
  // bridges carry their row's pace across the river
  for (int r = 0; r < kRows; ++r) {
    link(id(r, kWestBank), id(r, kWestBank + 1), east_west_length(r), 1);
  }

  // origin stubs feed the west side, destination stubs drain the east side;
  // most demand enters and leaves on the arterial row
  NodeId next = kRows * kCols;
  std::vector<NodeId> origins;
  const int origin_row[8] = {0, 1, 1, 1, 1, 1, 1, 2};
  for (int i = 0; i < 8; ++i) {
    const int r = origin_row[i];
    net.add_node(next, -225.0, r * 450.0 + 20.0 * i);
    net.add_edge(Edge{next, id(r, 0), minutes(225.0), kCapacity, 1});
    origins.push_back(next);
    ++next;
  }
  std::vector<NodeId> dests;
  const int dest_row[5] = {0, 1, 1, 1, 2};
  for (int i = 0; i < 5; ++i) {
    const int r = dest_row[i];
    net.add_node(next, (kCols - 1) * 1350.0 + 225.0, r * 450.0 + 20.0 * i);
    net.add_edge(Edge{id(r, kCols - 1), next, minutes(225.0), kCapacity, 1});
    dests.push_back(next);
    ++next;
  }
  net.set_origins(std::move(origins));
  net.set_destinations(std::move(dests));
  return net;
}

}  // namespace equiroute
