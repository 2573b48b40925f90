#include <doctest.h>

#include <stdexcept>
#include <utility>
#include <vector>

#include "equiroute/equity.hpp"
#include "equiroute/flow.hpp"
#include "equiroute/network.hpp"
#include "equiroute/rng.hpp"
#include "oracles.hpp"

using namespace equiroute;

namespace {

RoadNetwork single_edge(double tau0) {
  RoadNetwork net;
  net.add_node(0);
  net.add_node(1);
  net.add_edge(Edge{0, 1, tau0, 5.0, 1});
  return net;
}

}  // namespace

TEST_CASE("mode names round-trip") {
  for (VehicleMode m : kAllModes) {
    CHECK(mode_from_name(mode_name(m)) == m);
  }
  CHECK_FALSE(mode_from_name("bicycle").has_value());
}

TEST_CASE("default mode table passes its own validation") {
  const ModeTable modes;
  CHECK_NOTHROW(modes.check());
  CHECK(modes.min_cost_per_min() == 0.1485);
  CHECK(modes.min_wait_min() == 2.0);
  CHECK(modes.max_depart_window_h() == 24.0);
  CHECK(modes.min_inconvenience() == doctest::Approx(2.0 / 1440.0).epsilon(1e-15));
  CHECK(modes.params(VehicleMode::ride_hailing).occupancy == 2);

  ModeParams bad = modes.private_car;
  bad.xi1 = 0.5;
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
  bad = modes.private_car;
  bad.occupancy = 0;
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
  bad = modes.private_car;
  bad.wait_min = 0.0;
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
}

TEST_CASE("trip minima take the best value any mode offers") {
  const ModeTable modes;
  const RoadNetwork net = single_edge(10.0);
  const TripMinima m = trip_minima(net, 0, 1, modes);
  CHECK(m.tau_min == 10.0);
  CHECK(m.phi_min == doctest::Approx(1.485).epsilon(1e-15));
  CHECK(m.q_min == doctest::Approx(2.0 / 1440.0).epsilon(1e-15));

  const TripMinima same = trip_minima(net, 1, 1, modes);
  CHECK(same.tau_min == 0.0);
  CHECK(same.phi_min == 0.0);
}

TEST_CASE("free-flow scores per mode land on the known values") {
  const ModeTable modes;
  CHECK(free_flow_dtx(modes.private_car, modes).value == doctest::Approx(0.82).epsilon(1e-14));
  CHECK(free_flow_dtx(modes.autonomous, modes).value == doctest::Approx(0.82).epsilon(1e-14));
  CHECK(free_flow_dtx(modes.ride_hailing, modes).value ==
        doctest::Approx(0.8200520833333333).epsilon(1e-14));
}

TEST_CASE("experience score degrades as travel time grows") {
  const ModeTable modes;
  const RoadNetwork net = single_edge(10.0);
  const TripMinima m = trip_minima(net, 0, 1, modes);
  const ModeParams& priv = modes.private_car;

  const DtxScore at_min = dtx_from_time(m.tau_min, m, priv);
  CHECK(at_min.efficiency == 1.0);
  CHECK(at_min.value == doctest::Approx(0.82).epsilon(1e-14));

  // doubling the travel time halves both the time and cost components
  const DtxScore doubled = dtx_from_time(2.0 * m.tau_min, m, priv);
  CHECK(doubled.efficiency == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(doubled.cost == doctest::Approx(0.275).epsilon(1e-15));
  CHECK(doubled.convenience == 1.0);
  CHECK(doubled.value == doctest::Approx(0.51).epsilon(1e-14));

  double prev = 2.0;
  for (double factor : {1.0, 1.5, 2.0, 4.0, 16.0}) {
    const double v = dtx_from_time(factor * m.tau_min, m, priv).value;
    CHECK(v < prev);
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }

  // beating the free-flow optimum is clamped, never rewarded past 1
  const DtxScore fast = dtx_from_time(0.5 * m.tau_min, m, priv);
  CHECK(fast.efficiency == 1.0);
  CHECK(fast.cost == 1.0);

  // a zero-length trip leaves nothing to improve on for a best-convenience mode
  const TripMinima degenerate_minima{0.0, 0.0, modes.min_inconvenience()};
  const DtxScore degenerate = dtx_from_time(0.0, degenerate_minima, priv);
  CHECK(degenerate.value == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(dtx_from_time(-1.0, m, priv), std::invalid_argument);
}

TEST_CASE("equity index over known score sets") {
  const EquityReport two = dte({{0.9, 1}, {0.3, 1}});
  CHECK(two.dtx_multiset.size() == 2);
  CHECK(two.dte == 0.75);
  CHECK(two.mean == doctest::Approx(0.6).epsilon(1e-15));

  CHECK(dte({{0.7, 1}, {0.7, 1}, {0.7, 1}}).dte == 1.0);
  CHECK(dte({{0.42, 1}}).dte == 1.0);

  // one vehicle carrying three travelers contributes three equal entries
  const EquityReport pooled = dte({{0.7, 3}});
  CHECK(pooled.dtx_multiset.size() == 3);
  CHECK(pooled.dte == 1.0);
  CHECK(pooled.mean == doctest::Approx(0.7).epsilon(1e-15));

  // occupancy weighting matters: the pooled low score drags harder
  const double spread = dte({{0.9, 1}, {0.3, 2}}).dte;
  const double tight = dte({{0.9, 2}, {0.3, 1}}).dte;
  CHECK(spread != tight);

  CHECK_THROWS_AS(dte({}), std::invalid_argument);
  CHECK_THROWS_AS(dte({{0.0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(dte({{-0.5, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(dte({{0.5, 0}}), std::invalid_argument);
}

TEST_CASE("equity index is permutation and scale invariant") {
  Rng rng(4242);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(30));
    std::vector<std::pair<double, int>> entries;
    for (int i = 0; i < n; ++i) {
      entries.emplace_back(rng.uniform(0.05, 1.0), 1 + static_cast<int>(rng.below(3)));
    }
    const double base = dte(entries).dte;

    std::vector<std::pair<double, int>> shuffled = entries;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    }
    CHECK(dte(shuffled).dte == base);  // same sorted multiset, same arithmetic

    std::vector<std::pair<double, int>> scaled = entries;
    for (auto& [v, occ] : scaled) {
      v *= 0.37;
    }
    CHECK(dte(scaled).dte == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("equity index agrees with the pairwise-difference definition") {
  Rng rng(777);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(200));
    std::vector<std::pair<double, int>> entries;
    entries.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      entries.emplace_back(rng.uniform(1e-3, 1.0), 1);
    }
    const EquityReport report = dte(entries);
    const double brute = 1.0 - oracle::gini_bruteforce(report.dtx_multiset);
    CHECK(report.dte == doctest::Approx(brute).epsilon(1e-12));
    CHECK(report.dte >= 0.0);
    CHECK(report.dte <= 1.0);
  }
}

TEST_CASE("competitors are vehicles whose plans touch any candidate route") {
  RoadNetwork net;
  for (NodeId n : {0, 1, 2, 3}) {
    net.add_node(n);
  }
  net.add_edge(Edge{0, 1, 1.0, 5.0, 1});
  net.add_edge(Edge{1, 2, 1.0, 5.0, 1});
  net.add_edge(Edge{2, 3, 1.0, 5.0, 1});

  CandidateSet cands;
  cands.routes = {Route{{0, 1, 2}}};
  cands.weights = {2.0};
  cands.requested = 1;

  PlanRegistry reg;
  reg.register_plan(net, 2, Route{{1, 2}}, 4.0);   // shares edge (1,2)
  reg.register_plan(net, 9, Route{{2, 3}}, 1.0);   // disjoint from the candidates
  reg.register_plan(net, 4, Route{{0, 1, 2, 3}}, 0.0);

  CHECK(competitors(net, 5, cands, reg) == std::vector<VehicleId>{2, 4, 5});
  // subject is listed once even when it is also registered
  CHECK(competitors(net, 2, cands, reg) == std::vector<VehicleId>{2, 4});

  const PlanRegistry empty;
  CHECK(competitors(net, 5, cands, empty) == std::vector<VehicleId>{5});
}

TEST_CASE("uncongested mode-optimal trips are near-equitable by design") {
  const ModeTable modes;
  const PerfectEquityReport report = check_perfect_equity(modes, 1e-3);
  CHECK(report.holds);
  CHECK(report.max_gap == doctest::Approx(0.8200520833333333 - 0.82).epsilon(1e-9));

  // identical parameters across modes close the gap to exactly zero
  ModeTable uniform;
  uniform.autonomous = uniform.private_car;
  uniform.ride_hailing = uniform.private_car;
  const PerfectEquityReport flat = check_perfect_equity(uniform, 0.0);
  CHECK(flat.holds);
  CHECK(flat.max_gap == 0.0);

  // breaking the calibration breaks the property
  ModeTable skewed;
  skewed.private_car.cost_per_min_usd *= 2.0;
  const PerfectEquityReport broken = check_perfect_equity(skewed, 1e-3);
  CHECK_FALSE(broken.holds);
  CHECK(broken.max_gap == doctest::Approx(0.1100520833333333).epsilon(1e-12));

  CHECK_THROWS_AS(check_perfect_equity(modes, -0.1), std::invalid_argument);
}

TEST_CASE("convenience ratios survive joint rescaling of waits") {
  ModeTable scaled;
  for (VehicleMode m : kAllModes) {
    scaled.params(m).wait_min *= 3.0;
  }
  const ModeTable base;
  for (VehicleMode m : kAllModes) {
    const double a = free_flow_dtx(base.params(m), base).value;
    const double b = free_flow_dtx(scaled.params(m), scaled).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}
