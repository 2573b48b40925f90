#include "equiroute/network_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace equiroute {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& label, const std::string& what) {
  throw ConfigError(label + ": " + what);
}

double require_number(const json& obj, const char* key, const std::string& label) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    fail(label, std::string("missing or non-numeric field '") + key + "'");
  }
  return obj[key].get<double>();
}

// free-flow minutes from either an explicit time or a length/speed pair
double edge_free_flow_min(const json& e, const std::string& label) {
  const bool has_time = e.contains("free_flow_time_min");
  const bool has_length = e.contains("length_m") || e.contains("speed_kmh");
  if (has_time && has_length) {
    fail(label, "give either free_flow_time_min or length_m+speed_kmh, not both");
  }
  if (has_time) {
    return require_number(e, "free_flow_time_min", label);
  }
  const double length_m = require_number(e, "length_m", label);
  const double speed_kmh = require_number(e, "speed_kmh", label);
  if (!(speed_kmh > 0.0)) {
    fail(label, "speed_kmh must be positive");
  }
  return length_m / 1000.0 / speed_kmh * 60.0;
}

}  // namespace

RoadNetwork parse_network(const std::string& text, const std::string& origin_label) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    fail(origin_label, err.what());
  }
  if (!doc.is_object()) {
    fail(origin_label, "top level must be a JSON object");
  }

  RoadNetwork net;
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    fail(origin_label, "missing 'nodes' array");
  }
  for (const json& n : doc["nodes"]) {
    const std::string label = origin_label + " nodes[]";
    const NodeId id = static_cast<NodeId>(require_number(n, "id", label));
    std::optional<double> x;
    std::optional<double> y;
    if (n.contains("x")) {
      x = require_number(n, "x", label);
    }
    if (n.contains("y")) {
      y = require_number(n, "y", label);
    }
    try {
      net.add_node(id, x, y);
    } catch (const std::invalid_argument& err) {
      fail(label, err.what());
    }
  }

  if (!doc.contains("edges") || !doc["edges"].is_array()) {
    fail(origin_label, "missing 'edges' array");
  }
  for (const json& e : doc["edges"]) {
    const std::string label = origin_label + " edges[]";
    Edge edge;
    edge.from = static_cast<NodeId>(require_number(e, "from", label));
    edge.to = static_cast<NodeId>(require_number(e, "to", label));
    edge.free_flow_time_min = edge_free_flow_min(e, label);
    edge.capacity_veh_per_min = require_number(e, "capacity_veh_per_min_per_lane", label);
    edge.lanes = e.contains("lanes")
                     ? static_cast<int>(require_number(e, "lanes", label))
                     : 1;
    try {
      net.add_edge(edge);
    } catch (const std::invalid_argument& err) {
      fail(label, err.what());
    }
  }

  const auto id_list = [&](const char* key) {
    std::vector<NodeId> out;
    if (!doc.contains(key)) {
      return out;
    }
    if (!doc[key].is_array()) {
      fail(origin_label, std::string("'") + key + "' must be an array of node ids");
    }
    for (const json& v : doc[key]) {
      if (!v.is_number()) {
        fail(origin_label, std::string("'") + key + "' must contain only numbers");
      }
      out.push_back(static_cast<NodeId>(v.get<double>()));
    }
    return out;
  };
  net.set_origins(id_list("origins"));
  net.set_destinations(id_list("destinations"));

  if (doc.contains("bpr")) {
    const json& b = doc["bpr"];
    net.set_bpr(require_number(b, "alpha", origin_label + " bpr"),
                require_number(b, "beta", origin_label + " bpr"));
  }
  return net;
}

RoadNetwork load_network(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open network file: " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_network(text.str(), path);
}

void save_network(const RoadNetwork& net, const std::string& path) {
  json doc;
  doc["nodes"] = json::array();
  for (const NodeInfo& n : net.nodes()) {
    json jn{{"id", n.id}};
    if (n.x) {
      jn["x"] = *n.x;
    }
    if (n.y) {
      jn["y"] = *n.y;
    }
    doc["nodes"].push_back(std::move(jn));
  }
  doc["edges"] = json::array();
  for (const Edge& e : net.edges()) {
    doc["edges"].push_back(json{{"from", e.from},
                                {"to", e.to},
                                {"free_flow_time_min", e.free_flow_time_min},
                                {"capacity_veh_per_min_per_lane", e.capacity_veh_per_min},
                                {"lanes", e.lanes}});
  }
  doc["origins"] = net.origins();
  doc["destinations"] = net.destinations();
  doc["bpr"] = json{{"alpha", net.bpr_alpha()}, {"beta", net.bpr_beta()}};

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write network file: " + path);
  }
  out << doc.dump(2) << '\n';
}

}  // namespace equiroute
