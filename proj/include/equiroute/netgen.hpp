#pragma once

#include "equiroute/network.hpp"

namespace equiroute {

// One-way chain 0 -> 1 -> ... -> n-1; origin 0, destination n-1.
RoadNetwork make_line_network(int node_count, double edge_time_min = 1.0,
                              double capacity_per_lane = 5.0, int lanes = 1);

// rows x cols lattice with bidirectional edges between neighbors; the west
// column is the origin set, the east column the destination set.
RoadNetwork make_grid_network(int rows, int cols, double edge_time_min = 1.0,
                              double capacity_per_lane = 5.0, int lanes = 1);

// Synthetic stand-in for a riverfront urban core: a 5x9 lattice of 45
// intersections split by a river crossed at three bridges, fed by 8 origin
// stubs on the west side and drained by 5 destination stubs on the east.
// 27 km/h free-flow speed, capacity 5 veh/min/lane. Westbound demand funnels
// into the bridges, so a fleet that ignores congestion piles up there.
RoadNetwork make_boston_like();

}  // namespace equiroute
