#pragma once

#include <vector>

#include "equiroute/equity.hpp"
#include "equiroute/flow.hpp"
#include "equiroute/network.hpp"
#include "equiroute/paths.hpp"

namespace equiroute {

// What the planner needs to know about any vehicle that may appear as a
// competitor: how it scores and when it left.
struct TravelerInfo {
  VehicleMode mode = VehicleMode::private_car;
  double depart_min = 0.0;
  TripMinima minima;  // for the vehicle's own full origin->destination trip
};

// Immutable view of one simulation instant; safe to share across scoring
// threads.
struct WorldSnapshot {
  const RoadNetwork* net = nullptr;
  const EntryLog* log = nullptr;
  const PlanRegistry* registry = nullptr;
  const ModeTable* modes = nullptr;
  const std::vector<TravelerInfo>* fleet = nullptr;  // indexed by VehicleId
  double now_min = 0.0;
  double half_width_min = 1.0;
  int workers = 1;  // candidate-scoring threads per decision
};

struct PlanningSubject {
  VehicleId id = 0;
  VehicleMode mode = VehicleMode::private_car;
  NodeId at = 0;    // decision node
  NodeId dest = 0;
  double now_min = 0.0;
  double experienced_min = 0.0;  // travel time already spent
  TripMinima minima;             // full-trip minima, not remaining-leg
};

struct PlanningDecision {
  Route route;
  double objective = 0.0;  // equity score, or minutes for the time-based strategies
  int chosen_index = 0;    // position in the evaluated candidate list
  std::vector<double> scores;             // per-candidate objective
  std::vector<double> est_remaining_min;  // per-candidate rollout total
};

// Plan once at departure on nominal times; never revisited.
PlanningDecision plan_psr(const RoadNetwork& net, NodeId from, NodeId to);

// At each decision node, pick the candidate with the smallest monitored +
// estimated remaining time.
PlanningDecision plan_dsr(const PlanningSubject& subject, const WorldSnapshot& world,
                          CandidateCache& candidates);

// At each decision node, pick the candidate that maximizes the equity score
// over the subject plus everyone competing for the same road segments.
// Competitors' scores are held fixed at their registered plans; only the
// subject's own projected experience varies across candidates.
PlanningDecision plan_equity(const PlanningSubject& subject, const WorldSnapshot& world,
                             CandidateCache& candidates);

}  // namespace equiroute
