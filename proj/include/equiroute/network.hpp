#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace equiroute {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr EdgeId kNoEdge = -1;

/// One directed road segment. Capacity is per lane; the congestion model
/// uses capacity * lanes as the effective capacity.
struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  double free_flow_time_min = 0.0;
  double capacity_veh_per_min = 0.0;  // per lane
  int lanes = 1;

  double effective_capacity() const { return capacity_veh_per_min * lanes; }
};

struct NodeInfo {
  NodeId id = 0;
  std::optional<double> x;  // display coordinates only
  std::optional<double> y;
};

/// A simple path stored as its node sequence. Fewer than two nodes means an
/// empty route (zero edges), used for degenerate origin == destination trips.
struct Route {
  std::vector<NodeId> nodes;

  bool empty() const { return nodes.size() < 2; }
  std::size_t edge_count() const { return nodes.empty() ? 0 : nodes.size() - 1; }

  friend bool operator==(const Route& a, const Route& b) { return a.nodes == b.nodes; }
};

/// Strict weak order used everywhere a deterministic route order is needed.
bool route_less(const Route& a, const Route& b);

/// Directed road graph. Immutable after loading; all member queries are
/// const and safe to call concurrently.
///
/// Edges may reference nodes that were never added (a malformed input file);
/// such edges are kept so validate_network can report them, but they are not
/// part of any adjacency list. Add nodes before the edges that use them.
class RoadNetwork {
 public:
  void add_node(NodeId id, std::optional<double> x = {}, std::optional<double> y = {});

  /// Stores the edge and returns its id. Throws std::invalid_argument only on
  /// a duplicate (from, to) pair; attribute problems are left for validation.
  EdgeId add_edge(Edge e);

  bool has_node(NodeId id) const { return node_index_.count(id) != 0; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<NodeInfo>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[static_cast<std::size_t>(id)]; }

  /// Edge id for an ordered (from, to) pair, or kNoEdge.
  EdgeId find_edge(NodeId from, NodeId to) const;

  /// Outgoing edge ids of a node (empty span for unknown nodes).
  std::span<const EdgeId> out_edges(NodeId node) const;

  void set_origins(std::vector<NodeId> origins) { origins_ = std::move(origins); }
  void set_destinations(std::vector<NodeId> dests) { destinations_ = std::move(dests); }
  const std::vector<NodeId>& origins() const { return origins_; }
  const std::vector<NodeId>& destinations() const { return destinations_; }

  void set_bpr(double alpha, double beta);
  double bpr_alpha() const { return bpr_alpha_; }
  double bpr_beta() const { return bpr_beta_; }

  /// Congested travel time of an edge at the given flow (BPR curve with this
  /// network's alpha/beta).
  double travel_time(EdgeId id, double flow_veh_per_min) const;

 private:
  std::vector<NodeInfo> nodes_;
  std::unordered_map<NodeId, std::size_t> node_index_;
  std::vector<Edge> edges_;
  std::map<std::pair<NodeId, NodeId>, EdgeId> edge_by_endpoints_;
  std::vector<std::vector<EdgeId>> out_;  // parallel to nodes_
  std::vector<NodeId> origins_;
  std::vector<NodeId> destinations_;
  double bpr_alpha_ = 0.15;
  double bpr_beta_ = 4.0;
};

/// Bureau of Public Roads volume-delay curve:
///   t = t0 * (1 + alpha * (flow / effective_capacity)^beta)
/// Monotone non-decreasing in flow, equal to t0 at zero flow.
/// Throws std::invalid_argument for negative or non-finite flow.
double bpr_travel_time(const Edge& e, double flow_veh_per_min, double alpha, double beta);

/// Sum of free-flow times over the route's edges (0 for an empty route).
/// Throws std::invalid_argument if an edge of the route is not in the network.
double free_flow_route_time(const RoadNetwork& net, const Route& route);

/// Edge ids along a route, in order. Throws std::invalid_argument if any hop
/// is missing from the network.
std::vector<EdgeId> route_edge_ids(const RoadNetwork& net, const Route& route);

struct ValidationFinding {
  enum class Kind {
    dangling_endpoint,
    self_loop,
    nonpositive_attribute,
    unreachable,
  };
  Kind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationFinding> findings;
  bool ok() const { return findings.empty(); }
};

/// Diagnostics over all RoadNetwork invariants: dangling edge endpoints,
/// self-loops, non-positive attributes, and origin -> destination pairs with
/// no path. Never throws; an empty report means the network is well formed.
ValidationReport validate_network(const RoadNetwork& net);

}  // namespace equiroute
