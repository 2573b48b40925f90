#include "equiroute/planner.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

namespace equiroute {

namespace {

// lower objective wins, then shorter estimated time, then node sequence
bool better_min(double score_a, double est_a, const Route& a, double score_b, double est_b,
                const Route& b) {
  if (score_a != score_b) {
    return score_a < score_b;
  }
  if (est_a != est_b) {
    return est_a < est_b;
  }
  return route_less(a, b);
}

// evaluate score_one(i) for every candidate, fanning out when asked to;
// results land in slots indexed by candidate so thread count cannot change them
template <typename ScoreFn>
std::vector<double> score_all(std::size_t count, int workers, const ScoreFn& score_one) {
  std::vector<double> scores(count);
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      scores[i] = score_one(i);
    }
    return scores;
  }
  const std::size_t stride =
      (count + static_cast<std::size_t>(workers) - 1) / static_cast<std::size_t>(workers);
  std::vector<std::future<void>> parts;
  for (std::size_t begin = 0; begin < count; begin += stride) {
    const std::size_t end = std::min(count, begin + stride);
    parts.push_back(std::async(std::launch::async, [&, begin, end] {
      for (std::size_t i = begin; i < end; ++i) {
        scores[i] = score_one(i);
      }
    }));
  }
  for (auto& p : parts) {
    p.get();
  }
  return scores;
}

std::vector<double> rollout_totals(const PlanningSubject& subject, const WorldSnapshot& world,
                                   const CandidateSet& cands) {
  return score_all(cands.routes.size(), world.workers, [&](std::size_t i) {
    return rollout_route(*world.net, *world.log, *world.registry, cands.routes[i],
                         subject.now_min, world.half_width_min, subject.id)
        .total_min;
  });
}

}  // namespace

PlanningDecision plan_psr(const RoadNetwork& net, NodeId from, NodeId to) {
  const WeightFunction w = free_flow_weights(net);
  PlanningDecision d;
  d.route = shortest_route(net, w, from, to);
  d.objective = route_weight(net, w, d.route);
  d.chosen_index = 0;
  d.scores = {d.objective};
  d.est_remaining_min = {d.objective};
  return d;
}

PlanningDecision plan_dsr(const PlanningSubject& subject, const WorldSnapshot& world,
                          CandidateCache& candidates) {
  const CandidateSet& cands = candidates.get(subject.at, subject.dest);
  PlanningDecision d;
  d.est_remaining_min = rollout_totals(subject, world, cands);
  d.scores = d.est_remaining_min;
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.routes.size(); ++i) {
    if (better_min(d.scores[i], d.est_remaining_min[i], cands.routes[i], d.scores[best],
                   d.est_remaining_min[best], cands.routes[best])) {
      best = i;
    }
  }
  d.chosen_index = static_cast<int>(best);
  d.route = cands.routes[best];
  d.objective = d.scores[best];
  return d;
}

PlanningDecision plan_equity(const PlanningSubject& subject, const WorldSnapshot& world,
                             CandidateCache& candidates) {
  const CandidateSet& cands = candidates.get(subject.at, subject.dest);
  const std::vector<VehicleId> rivals =
      competitors(*world.net, subject.id, cands, *world.registry);

  if (rivals.size() == 1) {
    // nobody contests these roads: equity is trivially perfect, take the
    // shortest candidate
    PlanningDecision d;
    d.route = cands.routes.front();
    d.objective = 1.0;
    d.chosen_index = 0;
    d.scores.assign(cands.routes.size(), 1.0);
    d.est_remaining_min = rollout_totals(subject, world, cands);
    return d;
  }

  // competitors keep their registered plans; score them once
  std::vector<std::pair<double, int>> fixed_scores;
  fixed_scores.reserve(rivals.size());
  for (VehicleId rival : rivals) {
    if (rival == subject.id) {
      continue;
    }
    const TravelerInfo& info = (*world.fleet)[static_cast<std::size_t>(rival)];
    const double elapsed = world.registry->head_arrival_min(rival) - info.depart_min;
    const double projected = elapsed + world.registry->remaining_free_flow_min(rival);
    const ModeParams& mode = world.modes->params(info.mode);
    fixed_scores.emplace_back(dtx_from_time(projected, info.minima, mode).value,
                              mode.occupancy);
  }

  const ModeParams& own_mode = world.modes->params(subject.mode);
  PlanningDecision d;
  d.est_remaining_min = rollout_totals(subject, world, cands);
  d.scores = score_all(cands.routes.size(), world.workers, [&](std::size_t i) {
    std::vector<std::pair<double, int>> travelers = fixed_scores;
    const double own_time = subject.experienced_min + d.est_remaining_min[i];
    travelers.emplace_back(dtx_from_time(own_time, subject.minima, own_mode).value,
                           own_mode.occupancy);
    return dte(travelers).dte;
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.routes.size(); ++i) {
    // higher equity wins, then shorter estimated time, then node sequence
    const bool wins =
        d.scores[i] != d.scores[best]
            ? d.scores[i] > d.scores[best]
            : better_min(d.est_remaining_min[i], 0.0, cands.routes[i],
                         d.est_remaining_min[best], 0.0, cands.routes[best]);
    if (wins) {
      best = i;
    }
  }
  d.chosen_index = static_cast<int>(best);
  d.route = cands.routes[best];
  d.objective = d.scores[best];
  return d;
}

}  // namespace equiroute
