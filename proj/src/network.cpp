#include "equiroute/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace equiroute {

bool route_less(const Route& a, const Route& b) {
  return std::lexicographical_compare(a.nodes.begin(), a.nodes.end(), b.nodes.begin(),
                                      b.nodes.end());
}

void RoadNetwork::add_node(NodeId id, std::optional<double> x, std::optional<double> y) {
  if (node_index_.count(id) != 0) {
    throw std::invalid_argument("duplicate node id " + std::to_string(id));
  }
  node_index_.emplace(id, nodes_.size());
  nodes_.push_back(NodeInfo{id, x, y});
  out_.emplace_back();
}

EdgeId RoadNetwork::add_edge(Edge e) {
  auto key = std::make_pair(e.from, e.to);
  if (edge_by_endpoints_.count(key) != 0) {
    throw std::invalid_argument("duplicate edge (" + std::to_string(e.from) + ", " +
                                std::to_string(e.to) + ")");
  }
  const EdgeId id = static_cast<EdgeId>(edges_.size());
  edges_.push_back(e);
  edge_by_endpoints_.emplace(key, id);
  auto it = node_index_.find(e.from);
  if (it != node_index_.end()) {
    out_[it->second].push_back(id);
  }
  return id;
}

EdgeId RoadNetwork::find_edge(NodeId from, NodeId to) const {
  auto it = edge_by_endpoints_.find({from, to});
  return it == edge_by_endpoints_.end() ? kNoEdge : it->second;
}

std::span<const EdgeId> RoadNetwork::out_edges(NodeId node) const {
  auto it = node_index_.find(node);
  if (it == node_index_.end()) {
    return {};
  }
  return out_[it->second];
}

void RoadNetwork::set_bpr(double alpha, double beta) {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) {
    throw std::invalid_argument("bpr parameters must be non-negative");
  }
  bpr_alpha_ = alpha;
  bpr_beta_ = beta;
}

double RoadNetwork::travel_time(EdgeId id, double flow_veh_per_min) const {
  return bpr_travel_time(edge(id), flow_veh_per_min, bpr_alpha_, bpr_beta_);
}

double bpr_travel_time(const Edge& e, double flow_veh_per_min, double alpha, double beta) {
  if (!std::isfinite(flow_veh_per_min) || flow_veh_per_min < 0.0) {
    throw std::invalid_argument("flow must be finite and non-negative");
  }
  if (flow_veh_per_min == 0.0) {
    return e.free_flow_time_min;  // exact, no pow() rounding
  }
  const double ratio = flow_veh_per_min / e.effective_capacity();
  return e.free_flow_time_min * (1.0 + alpha * std::pow(ratio, beta));
}

double free_flow_route_time(const RoadNetwork& net, const Route& route) {
  double total = 0.0;
  for (EdgeId id : route_edge_ids(net, route)) {
    total += net.edge(id).free_flow_time_min;
  }
  return total;
}

std::vector<EdgeId> route_edge_ids(const RoadNetwork& net, const Route& route) {
  std::vector<EdgeId> ids;
  if (route.empty()) {
    return ids;
  }
  ids.reserve(route.nodes.size() - 1);
  for (std::size_t i = 0; i + 1 < route.nodes.size(); ++i) {
    const EdgeId id = net.find_edge(route.nodes[i], route.nodes[i + 1]);
    if (id == kNoEdge) {
      throw std::invalid_argument("route uses edge (" + std::to_string(route.nodes[i]) + ", " +
                                  std::to_string(route.nodes[i + 1]) +
                                  ") that is not in the network");
    }
    ids.push_back(id);
  }
  return ids;
}

namespace {

// Nodes reachable from `start` over well-formed edges.
std::vector<bool> reachable_from(const RoadNetwork& net, NodeId start) {
  std::vector<bool> seen(net.node_count(), false);
  std::unordered_map<NodeId, std::size_t> index;
  index.reserve(net.node_count());
  for (std::size_t i = 0; i < net.nodes().size(); ++i) {
    index.emplace(net.nodes()[i].id, i);
  }
  auto it = index.find(start);
  if (it == index.end()) {
    return seen;
  }
  std::deque<NodeId> frontier{start};
  seen[it->second] = true;
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop_front();
    for (EdgeId eid : net.out_edges(u)) {
      const Edge& e = net.edge(eid);
      auto jt = index.find(e.to);
      if (jt == index.end() || seen[jt->second]) {
        continue;
      }
      seen[jt->second] = true;
      frontier.push_back(e.to);
    }
  }
  return seen;
}

}  // namespace

ValidationReport validate_network(const RoadNetwork& net) {
  ValidationReport report;
  auto add = [&report](ValidationFinding::Kind kind, std::string msg) {
    report.findings.push_back({kind, std::move(msg)});
  };

  for (std::size_t i = 0; i < net.edges().size(); ++i) {
    const Edge& e = net.edges()[i];
    std::ostringstream tag;
    tag << "edge (" << e.from << ", " << e.to << ")";
    if (!net.has_node(e.from)) {
      add(ValidationFinding::Kind::dangling_endpoint, tag.str() + ": unknown from-node");
    }
    if (!net.has_node(e.to)) {
      add(ValidationFinding::Kind::dangling_endpoint, tag.str() + ": unknown to-node");
    }
    if (e.from == e.to) {
      add(ValidationFinding::Kind::self_loop, tag.str() + ": self loop");
    }
    if (!(e.free_flow_time_min > 0.0) || !std::isfinite(e.free_flow_time_min)) {
      add(ValidationFinding::Kind::nonpositive_attribute,
          tag.str() + ": free-flow time must be positive");
    }
    if (!(e.capacity_veh_per_min > 0.0) || !std::isfinite(e.capacity_veh_per_min)) {
      add(ValidationFinding::Kind::nonpositive_attribute,
          tag.str() + ": capacity must be positive");
    }
    if (e.lanes < 1) {
      add(ValidationFinding::Kind::nonpositive_attribute, tag.str() + ": lanes must be >= 1");
    }
  }

  std::unordered_map<NodeId, std::size_t> index;
  index.reserve(net.node_count());
  for (std::size_t i = 0; i < net.nodes().size(); ++i) {
    index.emplace(net.nodes()[i].id, i);
  }
  for (NodeId dest : net.destinations()) {
    if (index.count(dest) == 0) {
      add(ValidationFinding::Kind::dangling_endpoint,
          "destination " + std::to_string(dest) + " is not a node");
    }
  }
  for (NodeId origin : net.origins()) {
    if (!net.has_node(origin)) {
      add(ValidationFinding::Kind::dangling_endpoint,
          "origin " + std::to_string(origin) + " is not a node");
      continue;
    }
    const auto seen = reachable_from(net, origin);
    for (NodeId dest : net.destinations()) {
      auto it = index.find(dest);
      if (it != index.end() && !seen[it->second]) {
        add(ValidationFinding::Kind::unreachable, "destination " + std::to_string(dest) +
                                                      " unreachable from origin " +
                                                      std::to_string(origin));
      }
    }
  }
  return report;
}

}  // namespace equiroute
