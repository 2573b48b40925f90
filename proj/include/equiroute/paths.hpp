#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "equiroute/network.hpp"

namespace equiroute {

/// Edge weight lookup used by the searches. Weights must be finite and
/// non-negative; free-flow and table-backed variants are provided below.
using WeightFunction = std::function<double(EdgeId)>;

WeightFunction free_flow_weights(const RoadNetwork& net);
WeightFunction table_weights(std::vector<double> weight_by_edge);

struct NoRouteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Up to `requested` loopless routes between one node pair, ascending by
/// (total weight, lexicographic node sequence). Fewer routes are present only
/// when the graph has fewer simple paths.
struct CandidateSet {
  std::vector<Route> routes;
  std::vector<double> weights;  // parallel to routes
  int requested = 0;
};

/// Total weight of a route, summed left to right (the canonical order used
/// for all tie comparisons).
double route_weight(const RoadNetwork& net, const WeightFunction& w, const Route& route);

/// Minimum-weight simple path, ties broken by lexicographic node sequence.
/// from == to yields the empty single-node route. Throws NoRouteError when
/// the destination is unreachable.
Route shortest_route(const RoadNetwork& net, const WeightFunction& w, NodeId from, NodeId to);

/// Yen's algorithm: the L cheapest distinct simple paths in the same
/// (weight, lexicographic) order the exhaustive enumeration would produce.
CandidateSet k_shortest_routes(const RoadNetwork& net, const WeightFunction& w, NodeId from,
                               NodeId to, int L);

/// Memoizes free-flow candidate sets per (from, to) pair. The network must
/// outlive the cache and stay unchanged. Not thread safe.
class CandidateCache {
 public:
  CandidateCache(const RoadNetwork& net, int L);
  const CandidateSet& get(NodeId from, NodeId to);
  int L() const { return L_; }

 private:
  const RoadNetwork* net_;
  WeightFunction weights_;
  int L_;
  std::map<std::pair<NodeId, NodeId>, CandidateSet> cache_;
};

}  // namespace equiroute
