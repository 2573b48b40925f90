#pragma once

#include <stdexcept>
#include <string>

#include "equiroute/network.hpp"

namespace equiroute {

// Anything wrong with an input file: unreadable, unparsable, missing or
// ill-typed fields. Messages carry the file and field involved.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Network JSON: { nodes: [{id, x?, y?}], edges: [{from, to,
// free_flow_time_min | (length_m, speed_kmh), capacity_veh_per_min_per_lane,
// lanes?}], origins: [...], destinations: [...], bpr?: {alpha, beta} }
RoadNetwork load_network(const std::string& path);
RoadNetwork parse_network(const std::string& text, const std::string& origin_label);
void save_network(const RoadNetwork& net, const std::string& path);

}  // namespace equiroute
