#include <array>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "equiroute/csv.hpp"
#include "equiroute/equity.hpp"
#include "equiroute/netgen.hpp"
#include "equiroute/network_io.hpp"
#include "equiroute/scenario_io.hpp"
#include "equiroute/sim.hpp"

namespace {

using namespace equiroute;

constexpr int kExitBadConfig = 2;
constexpr int kExitBadNetwork = 3;

// shared by run/compare: bad networks must not start a simulation
void require_valid_network(const RoadNetwork& net) {
  const ValidationReport report = validate_network(net);
  if (!report.ok()) {
    for (const ValidationFinding& f : report.findings) {
      std::cerr << "network: " << f.message << '\n';
    }
    throw ValidationReport(report);
  }
}

void apply_overrides(LoadedConfig& cfg, const std::optional<std::uint64_t>& seed,
                     const std::optional<int>& workers) {
  if (seed) {
    cfg.sim.seed = *seed;
  }
  if (workers) {
    cfg.sim.workers = *workers;
    cfg.sim.check();
  }
}

void print_summary_line(const RunResults& results) {
  std::cout << strategy_name(results.strategy) << ": completed "
            << results.vehicles.size() - static_cast<std::size_t>(results.failed_count) << "/"
            << results.vehicles.size() << ", failed " << results.failed_count << ", fleet DTE "
            << (results.fleet ? format_double(results.fleet->dte) : std::string("n/a")) << '\n';
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& strategy_flag,
            const std::optional<std::uint64_t>& seed, const std::optional<int>& workers,
            const std::string& out_dir) {
  LoadedConfig cfg = load_scenario_config(config_path);
  apply_overrides(cfg, seed, workers);
  Strategy strategy = Strategy::equity;
  if (strategy_flag) {
    strategy = *strategy_from_name(*strategy_flag);
  } else if (cfg.strategy) {
    strategy = *cfg.strategy;
  }
  require_valid_network(cfg.net);

  const std::uint64_t used_seed = cfg.sim.seed;
  const std::string digest = cfg.digest;
  Scenario scenario = generate_scenario(std::move(cfg.net), cfg.modes, cfg.sim);
  const RunResults results = run(scenario, strategy);

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path out(out_dir);
  write_run_summary((out / "summary.json").string(), results, used_seed, digest);
  write_vehicles_csv((out / "vehicles.csv").string(), results);
  print_summary_line(results);
  return 0;
}

int cmd_compare(const std::string& config_path, const std::optional<std::uint64_t>& seed,
                const std::optional<int>& workers, const std::string& out_dir) {
  LoadedConfig cfg = load_scenario_config(config_path);
  apply_overrides(cfg, seed, workers);
  require_valid_network(cfg.net);

  const std::uint64_t used_seed = cfg.sim.seed;
  const std::string digest = cfg.digest;
  // one frozen scenario scores all three strategies
  Scenario scenario = generate_scenario(std::move(cfg.net), cfg.modes, cfg.sim);
  std::array<RunResults, 3> runs = {run(scenario, Strategy::psr), run(scenario, Strategy::dsr),
                                    run(scenario, Strategy::equity)};

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path out(out_dir);
  const ComparisonReport report = build_comparison(runs, used_seed, digest);
  write_comparison_json((out / "comparison.json").string(), report);
  for (const RunResults& r : runs) {
    const std::string name = "vehicles_" + std::string(strategy_name(r.strategy)) + ".csv";
    write_vehicles_csv((out / name).string(), r);
  }
  write_dtx_distribution_csv((out / "dtx_distribution.csv").string(), runs);
  write_mode_means_csv((out / "mode_means.csv").string(), report);

  for (const RunResults& r : runs) {
    print_summary_line(r);
  }
  const auto& st = report.strategies;
  if (st[2].fleet_dte && st[0].fleet_dte) {
    std::cout << "equity - psr DTE gap: " << format_double(*st[2].fleet_dte - *st[0].fleet_dte)
              << '\n';
  }
  return 0;
}

int cmd_check_equity(const std::string& config_path, double tolerance) {
  LoadedConfig cfg = load_scenario_config(config_path);
  const PerfectEquityReport report = check_perfect_equity(cfg.modes, tolerance);
  for (VehicleMode m : kAllModes) {
    std::cout << mode_name(m) << " free-flow DTX: "
              << format_double(report.free_flow[static_cast<std::size_t>(m)]) << '\n';
  }
  std::cout << "max pairwise gap: " << format_double(report.max_gap) << '\n';
  std::cout << (report.holds ? "holds" : "fails") << " at tolerance "
            << format_double(tolerance) << '\n';
  return 0;
}

int cmd_gen_network(const std::string& kind, int rows, int cols, int nodes, double edge_min,
                    double capacity, int lanes, const std::string& out_path) {
  RoadNetwork net;
  if (kind == "boston") {
    net = make_boston_like();
  } else if (kind == "grid") {
    net = make_grid_network(rows, cols, edge_min, capacity, lanes);
  } else {
    net = make_line_network(nodes, edge_min, capacity, lanes);
  }
  require_valid_network(net);
  save_network(net, out_path);
  std::cout << "wrote " << out_path << " (" << net.node_count() << " nodes, "
            << net.edge_count() << " edges)\n";
  return 0;
}

int cmd_validate(const std::optional<std::string>& network_path,
                 const std::optional<std::string>& config_path) {
  RoadNetwork net;
  if (network_path) {
    net = load_network(*network_path);
  } else if (config_path) {
    net = load_scenario_config(*config_path).net;
  } else {
    throw ConfigError("validate needs --network or --config");
  }
  const ValidationReport report = validate_network(net);
  if (report.ok()) {
    std::cout << "network ok: " << net.node_count() << " nodes, " << net.edge_count()
              << " edges\n";
    return 0;
  }
  for (const ValidationFinding& f : report.findings) {
    std::cout << f.message << '\n';
  }
  return kExitBadNetwork;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "equiroute: equity-aware dynamic route guidance simulator\n"
      "Set EQUIROUTE_LOG=off|error|warn|info|debug to control diagnostics."};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> strategy_flag;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string out_dir = ".";
  double tolerance = 1e-3;

  auto* run_cmd = app.add_subcommand("run", "simulate one strategy and write results");
  run_cmd->add_option("--config", config_path, "scenario config JSON")->required();
  run_cmd->add_option("--strategy", strategy_flag, "psr, dsr, or equity")
      ->check(CLI::IsMember({"psr", "dsr", "equity"}));
  run_cmd->add_option("--seed", seed, "override the config seed");
  run_cmd->add_option("--workers", workers, "candidate-scoring threads");
  run_cmd->add_option("--out", out_dir, "output directory");

  auto* compare_cmd =
      app.add_subcommand("compare", "run psr, dsr, and equity on one frozen scenario");
  compare_cmd->add_option("--config", config_path, "scenario config JSON")->required();
  compare_cmd->add_option("--seed", seed, "override the config seed");
  compare_cmd->add_option("--workers", workers, "candidate-scoring threads");
  compare_cmd->add_option("--out", out_dir, "output directory");

  auto* check_cmd =
      app.add_subcommand("check-equity", "evaluate the perfect-equity condition on a mode table");
  check_cmd->add_option("--config", config_path, "scenario config JSON")->required();
  check_cmd->add_option("--tolerance", tolerance, "allowed free-flow DTX gap");

  std::string kind = "boston";
  int rows = 3;
  int cols = 3;
  int nodes = 2;
  double edge_min = 1.0;
  double capacity = 5.0;
  int lanes = 1;
  std::string net_out = "network.json";
  auto* gen_cmd = app.add_subcommand("gen-network", "write a synthetic network file");
  gen_cmd->add_option("--kind", kind, "boston, grid, or line")
      ->check(CLI::IsMember({"boston", "grid", "line"}));
  gen_cmd->add_option("--rows", rows, "grid rows");
  gen_cmd->add_option("--cols", cols, "grid columns");
  gen_cmd->add_option("--nodes", nodes, "line node count");
  gen_cmd->add_option("--edge-min", edge_min, "free-flow minutes per edge (grid/line)");
  gen_cmd->add_option("--capacity", capacity, "per-lane capacity, veh/min (grid/line)");
  gen_cmd->add_option("--lanes", lanes, "lanes per edge (grid/line)");
  gen_cmd->add_option("--out", net_out, "output network file");

  std::optional<std::string> validate_network_path;
  std::optional<std::string> validate_config_path;
  auto* validate_cmd = app.add_subcommand("validate", "check a network file's invariants");
  validate_cmd->add_option("--network", validate_network_path, "network JSON");
  validate_cmd->add_option("--config", validate_config_path, "scenario config JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      return cmd_run(config_path, strategy_flag, seed, workers, out_dir);
    }
    if (compare_cmd->parsed()) {
      return cmd_compare(config_path, seed, workers, out_dir);
    }
    if (check_cmd->parsed()) {
      return cmd_check_equity(config_path, tolerance);
    }
    if (gen_cmd->parsed()) {
      return cmd_gen_network(kind, rows, cols, nodes, edge_min, capacity, lanes, net_out);
    }
    if (validate_cmd->parsed()) {
      return cmd_validate(validate_network_path, validate_config_path);
    }
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return kExitBadConfig;
  } catch (const ValidationReport&) {
    return kExitBadNetwork;
  } catch (const NoRouteError& err) {
    std::cerr << "routing error: " << err.what() << '\n';
    return kExitBadNetwork;
  } catch (const std::invalid_argument& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return kExitBadConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
