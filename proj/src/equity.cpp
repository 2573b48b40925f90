#include "equiroute/equity.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace equiroute {

std::string_view mode_name(VehicleMode mode) {
  switch (mode) {
    case VehicleMode::private_car:
      return "private";
    case VehicleMode::autonomous:
      return "autonomous";
    case VehicleMode::ride_hailing:
      return "ride_hailing";
  }
  return "unknown";
}

std::optional<VehicleMode> mode_from_name(std::string_view name) {
  for (VehicleMode m : kAllModes) {
    if (name == mode_name(m)) {
      return m;
    }
  }
  return std::nullopt;
}

void ModeParams::check() const {
  if (std::abs(xi1 + xi2 + xi3 - 1.0) > 1e-12) {
    throw std::invalid_argument("mode weights must sum to 1");
  }
  if (xi1 < 0.0 || xi2 < 0.0 || xi3 < 0.0) {
    throw std::invalid_argument("mode weights must be non-negative");
  }
  if (!(cost_per_min_usd > 0.0) || !(wait_min > 0.0) || !(depart_window_h > 0.0)) {
    throw std::invalid_argument("mode cost, wait, and departure window must be positive");
  }
  if (occupancy < 1) {
    throw std::invalid_argument("mode occupancy must be at least 1");
  }
}

const ModeParams& ModeTable::params(VehicleMode mode) const {
  switch (mode) {
    case VehicleMode::private_car:
      return private_car;
    case VehicleMode::autonomous:
      return autonomous;
    case VehicleMode::ride_hailing:
      return ride_hailing;
  }
  throw std::invalid_argument("unknown vehicle mode");
}

ModeParams& ModeTable::params(VehicleMode mode) {
  return const_cast<ModeParams&>(static_cast<const ModeTable&>(*this).params(mode));
}

double ModeTable::min_cost_per_min() const {
  return std::min({private_car.cost_per_min_usd, autonomous.cost_per_min_usd,
                   ride_hailing.cost_per_min_usd});
}

double ModeTable::min_wait_min() const {
  return std::min({private_car.wait_min, autonomous.wait_min, ride_hailing.wait_min});
}

double ModeTable::max_depart_window_h() const {
  return std::max(
      {private_car.depart_window_h, autonomous.depart_window_h, ride_hailing.depart_window_h});
}

void ModeTable::check() const {
  for (VehicleMode m : kAllModes) {
    params(m).check();
  }
}

TripMinima trip_minima(const RoadNetwork& net, NodeId origin, NodeId dest,
                       const ModeTable& modes) {
  const WeightFunction w = free_flow_weights(net);
  const Route best = shortest_route(net, w, origin, dest);
  TripMinima out;
  out.tau_min = route_weight(net, w, best);
  out.phi_min = modes.min_cost_per_min() * out.tau_min;
  out.q_min = modes.min_inconvenience();
  return out;
}

DtxScore dtx_from_time(double travel_min, const TripMinima& minima, const ModeParams& mode) {
  if (travel_min < 0.0 || !std::isfinite(travel_min)) {
    throw std::invalid_argument("travel time must be finite and non-negative");
  }
  DtxScore s;
  if (travel_min <= 0.0) {
    // degenerate trip: nothing to improve on
    s.efficiency = 1.0;
    s.cost = 1.0;
  } else {
    s.efficiency = std::min(1.0, minima.tau_min / travel_min);
    s.cost = std::min(1.0, minima.phi_min / (mode.cost_per_min_usd * travel_min));
  }
  s.convenience = std::min(1.0, minima.q_min / mode.inconvenience());
  s.value = mode.xi1 * s.efficiency + mode.xi2 * s.cost + mode.xi3 * s.convenience;
  return s;
}

DtxScore free_flow_dtx(const ModeParams& mode, const ModeTable& modes) {
  DtxScore s;
  s.efficiency = 1.0;
  s.cost = modes.min_cost_per_min() / mode.cost_per_min_usd;
  s.convenience = modes.min_inconvenience() / mode.inconvenience();
  s.value = mode.xi1 * s.efficiency + mode.xi2 * s.cost + mode.xi3 * s.convenience;
  return s;
}

EquityReport dte(const std::vector<std::pair<double, int>>& dtx_and_occupancy) {
  EquityReport report;
  for (const auto& [value, occupancy] : dtx_and_occupancy) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw std::invalid_argument("every score must be positive and finite");
    }
    if (occupancy < 1) {
      throw std::invalid_argument("occupancy must be at least 1");
    }
    report.dtx_multiset.insert(report.dtx_multiset.end(), static_cast<std::size_t>(occupancy),
                               value);
  }
  if (report.dtx_multiset.empty()) {
    throw std::invalid_argument("equity over an empty traveler set is undefined");
  }

  std::vector<double> sorted = report.dtx_multiset;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  long double total = 0.0L;
  for (double v : sorted) {
    total += v;
  }
  report.mean = static_cast<double>(total / static_cast<long double>(n));

  if (sorted.front() == sorted.back()) {
    report.dte = 1.0;  // identical scores: exactly equitable
    return report;
  }
  // Gini via the sorted form: sum over pairs of |x_j - x_j'| equals
  // 2 * sum_i (2i - n + 1) x_(i), so Gini = sum_i (2i - n + 1) x_(i) / (n * total).
  long double weighted = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    weighted += static_cast<long double>(2.0 * static_cast<double>(i) -
                                         static_cast<double>(n) + 1.0) *
                static_cast<long double>(sorted[i]);
  }
  const long double gini = weighted / (static_cast<long double>(n) * total);
  report.dte = static_cast<double>(std::clamp(1.0L - gini, 0.0L, 1.0L));
  return report;
}

std::vector<VehicleId> competitors(const RoadNetwork& net, VehicleId subject,
                                   const CandidateSet& candidates,
                                   const PlanRegistry& registry) {
  std::vector<VehicleId> found;
  for (const Route& route : candidates.routes) {
    for (EdgeId id : route_edge_ids(net, route)) {
      registry.append_vehicles_on_edge(id, found);
    }
  }
  found.push_back(subject);
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

PerfectEquityReport check_perfect_equity(const ModeTable& modes, double tol) {
  if (tol < 0.0) {
    throw std::invalid_argument("tolerance must be non-negative");
  }
  PerfectEquityReport report;
  for (VehicleMode m : kAllModes) {
    report.free_flow[static_cast<std::size_t>(m)] = free_flow_dtx(modes.params(m), modes).value;
  }
  for (std::size_t a = 0; a < report.free_flow.size(); ++a) {
    for (std::size_t b = a + 1; b < report.free_flow.size(); ++b) {
      report.max_gap =
          std::max(report.max_gap, std::abs(report.free_flow[a] - report.free_flow[b]));
    }
  }
  report.holds = report.max_gap <= tol;
  return report;
}

}  // namespace equiroute
