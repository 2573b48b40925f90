#include "equiroute/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace equiroute {

WeightFunction free_flow_weights(const RoadNetwork& net) {
  return [&net](EdgeId id) { return net.edge(id).free_flow_time_min; };
}

WeightFunction table_weights(std::vector<double> weight_by_edge) {
  return [table = std::move(weight_by_edge)](EdgeId id) {
    return table.at(static_cast<std::size_t>(id));
  };
}

namespace {

double checked_weight(const WeightFunction& w, EdgeId id) {
  const double value = w(id);
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument("edge weight must be finite and non-negative");
  }
  return value;
}

struct Label {
  double dist;
  std::vector<NodeId> path;
};

// Min order on (dist, lexicographic node sequence).
struct LabelGreater {
  bool operator()(const Label& a, const Label& b) const {
    if (a.dist != b.dist) {
      return a.dist > b.dist;
    }
    return std::lexicographical_compare(b.path.begin(), b.path.end(), a.path.begin(),
                                        a.path.end());
  }
};

// Dijkstra that settles each node with its (dist, lex)-minimal simple path.
// Labels carry full node sequences so equal-distance ties resolve exactly the
// way an exhaustive enumeration sorted by (weight, sequence) would.
std::optional<Label> lex_dijkstra(const RoadNetwork& net, const WeightFunction& w, NodeId from,
                                  NodeId to, const std::unordered_set<NodeId>* blocked_nodes,
                                  const std::unordered_set<EdgeId>* blocked_edges) {
  std::priority_queue<Label, std::vector<Label>, LabelGreater> queue;
  std::unordered_set<NodeId> settled;
  queue.push(Label{0.0, {from}});
  while (!queue.empty()) {
    Label label = queue.top();
    queue.pop();
    const NodeId node = label.path.back();
    if (!settled.insert(node).second) {
      continue;
    }
    if (node == to) {
      return label;
    }
    for (EdgeId eid : net.out_edges(node)) {
      if (blocked_edges != nullptr && blocked_edges->count(eid) != 0) {
        continue;
      }
      const Edge& e = net.edge(eid);
      if (!net.has_node(e.to) || settled.count(e.to) != 0) {
        continue;
      }
      if (blocked_nodes != nullptr && blocked_nodes->count(e.to) != 0) {
        continue;
      }
      Label next{label.dist + checked_weight(w, eid), label.path};
      next.path.push_back(e.to);
      queue.push(std::move(next));
    }
  }
  return std::nullopt;
}

}  // namespace

double route_weight(const RoadNetwork& net, const WeightFunction& w, const Route& route) {
  double total = 0.0;
  for (EdgeId id : route_edge_ids(net, route)) {
    total += checked_weight(w, id);
  }
  return total;
}

Route shortest_route(const RoadNetwork& net, const WeightFunction& w, NodeId from, NodeId to) {
  if (!net.has_node(from) || !net.has_node(to)) {
    throw NoRouteError("shortest_route: unknown endpoint node");
  }
  if (from == to) {
    return Route{{from}};
  }
  auto label = lex_dijkstra(net, w, from, to, nullptr, nullptr);
  if (!label) {
    throw NoRouteError("no route from " + std::to_string(from) + " to " + std::to_string(to));
  }
  return Route{std::move(label->path)};
}

CandidateSet k_shortest_routes(const RoadNetwork& net, const WeightFunction& w, NodeId from,
                               NodeId to, int L) {
  if (L < 1) {
    throw std::invalid_argument("k_shortest_routes: L must be >= 1");
  }
  CandidateSet out;
  out.requested = L;
  if (from == to) {
    out.routes.push_back(Route{{from}});
    out.weights.push_back(0.0);
    return out;
  }

  // first path, plus the (weight, sequence)-ordered candidate pool
  Route first = shortest_route(net, w, from, to);
  const auto cand_less = [](const std::pair<double, Route>& a,
                            const std::pair<double, Route>& b) {
    if (a.first != b.first) {
      return a.first < b.first;
    }
    return route_less(a.second, b.second);
  };
  std::set<std::pair<double, Route>, decltype(cand_less)> pool(cand_less);
  std::set<std::vector<NodeId>> accepted_nodes;

  out.weights.push_back(route_weight(net, w, first));
  out.routes.push_back(std::move(first));
  accepted_nodes.insert(out.routes.back().nodes);

  while (static_cast<int>(out.routes.size()) < L) {
    // spur candidates branching off the most recently accepted route
    const Route prev = out.routes.back();
    for (std::size_t i = 0; i + 1 < prev.nodes.size(); ++i) {
      const NodeId spur = prev.nodes[i];
      std::vector<NodeId> root(prev.nodes.begin(), prev.nodes.begin() + i + 1);

      std::unordered_set<EdgeId> blocked_edges;
      for (const Route& r : out.routes) {
        if (r.nodes.size() > i + 1 &&
            std::equal(root.begin(), root.end(), r.nodes.begin())) {
          const EdgeId eid = net.find_edge(r.nodes[i], r.nodes[i + 1]);
          if (eid != kNoEdge) {
            blocked_edges.insert(eid);
          }
        }
      }
      std::unordered_set<NodeId> blocked_nodes(root.begin(), root.end() - 1);

      auto spur_label = lex_dijkstra(net, w, spur, to, &blocked_nodes, &blocked_edges);
      if (!spur_label) {
        continue;
      }
      Route candidate;
      candidate.nodes = std::move(root);
      candidate.nodes.pop_back();  // spur node is the first node of the spur path
      candidate.nodes.insert(candidate.nodes.end(), spur_label->path.begin(),
                             spur_label->path.end());
      if (accepted_nodes.count(candidate.nodes) != 0) {
        continue;
      }
      const double weight = route_weight(net, w, candidate);
      pool.emplace(weight, std::move(candidate));
    }
    if (pool.empty()) {
      break;  // the graph has no further simple paths
    }
    auto best = pool.begin();
    accepted_nodes.insert(best->second.nodes);
    out.weights.push_back(best->first);
    out.routes.push_back(best->second);
    pool.erase(best);
  }
  return out;
}

CandidateCache::CandidateCache(const RoadNetwork& net, int L)
    : net_(&net), weights_(free_flow_weights(net)), L_(L) {}

const CandidateSet& CandidateCache::get(NodeId from, NodeId to) {
  auto key = std::make_pair(from, to);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    it = cache_.emplace(key, k_shortest_routes(*net_, weights_, from, to, L_)).first;
  }
  return it->second;
}

}  // namespace equiroute
