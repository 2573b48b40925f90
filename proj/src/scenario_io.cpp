#include "equiroute/scenario_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "equiroute/csv.hpp"

namespace equiroute {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& label) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ConfigError(label + ": unknown field '" + key + "'");
    }
  }
}

double number_or(const json& obj, const char* key, double fallback, const std::string& label) {
  if (!obj.contains(key)) {
    return fallback;
  }
  if (!obj[key].is_number()) {
    throw ConfigError(label + ": field '" + key + "' must be a number");
  }
  return obj[key].get<double>();
}

int int_or(const json& obj, const char* key, int fallback, const std::string& label) {
  if (!obj.contains(key)) {
    return fallback;
  }
  if (!obj[key].is_number_integer()) {
    throw ConfigError(label + ": field '" + key + "' must be an integer");
  }
  return obj[key].get<int>();
}

void apply_mode_section(const json& section, const char* name, ModeParams& params,
                        const std::string& label_root) {
  if (!section.contains(name)) {
    return;
  }
  const json& m = section[name];
  const std::string label = label_root + " modes." + name;
  if (!m.is_object()) {
    throw ConfigError(label + ": must be an object");
  }
  reject_unknown_keys(
      m, {"xi1", "xi2", "xi3", "cost_per_min_usd", "wait_min", "depart_window_h", "occupancy"},
      label);
  params.xi1 = number_or(m, "xi1", params.xi1, label);
  params.xi2 = number_or(m, "xi2", params.xi2, label);
  params.xi3 = number_or(m, "xi3", params.xi3, label);
  params.cost_per_min_usd = number_or(m, "cost_per_min_usd", params.cost_per_min_usd, label);
  params.wait_min = number_or(m, "wait_min", params.wait_min, label);
  params.depart_window_h = number_or(m, "depart_window_h", params.depart_window_h, label);
  params.occupancy = int_or(m, "occupancy", params.occupancy, label);
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buf, 16);
}

LoadedConfig load_scenario_config(const std::string& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ConfigError(path + ": " + err.what());
  }
  if (!doc.is_object()) {
    throw ConfigError(path + ": top level must be a JSON object");
  }
  reject_unknown_keys(doc, {"network", "strategy", "fleet", "modes", "sim"}, path);

  LoadedConfig cfg;
  cfg.digest = fnv1a_hex(doc.dump());

  if (!doc.contains("network") || !doc["network"].is_string()) {
    throw ConfigError(path + ": missing 'network' path");
  }
  const std::filesystem::path net_path =
      std::filesystem::path(path).parent_path() / doc["network"].get<std::string>();
  cfg.network_path = net_path.string();
  cfg.net = load_network(cfg.network_path);

  if (doc.contains("strategy")) {
    if (!doc["strategy"].is_string()) {
      throw ConfigError(path + ": 'strategy' must be a string");
    }
    const std::string s = doc["strategy"].get<std::string>();
    cfg.strategy = strategy_from_name(s);
    if (!cfg.strategy) {
      throw ConfigError(path + ": unknown strategy '" + s + "' (use psr, dsr, or equity)");
    }
  }

  if (doc.contains("fleet")) {
    const json& f = doc["fleet"];
    const std::string label = path + " fleet";
    if (!f.is_object()) {
      throw ConfigError(label + ": must be an object");
    }
    reject_unknown_keys(f, {"private", "autonomous", "ride_hailing"}, label);
    cfg.sim.fleet.private_count = int_or(f, "private", cfg.sim.fleet.private_count, label);
    cfg.sim.fleet.autonomous_count =
        int_or(f, "autonomous", cfg.sim.fleet.autonomous_count, label);
    cfg.sim.fleet.ride_hailing_count =
        int_or(f, "ride_hailing", cfg.sim.fleet.ride_hailing_count, label);
  }

  if (doc.contains("modes")) {
    const json& m = doc["modes"];
    if (!m.is_object()) {
      throw ConfigError(path + " modes: must be an object");
    }
    reject_unknown_keys(m, {"private", "autonomous", "ride_hailing"}, path + " modes");
    apply_mode_section(m, "private", cfg.modes.private_car, path);
    apply_mode_section(m, "autonomous", cfg.modes.autonomous, path);
    apply_mode_section(m, "ride_hailing", cfg.modes.ride_hailing, path);
  }

  if (doc.contains("sim")) {
    const json& s = doc["sim"];
    const std::string label = path + " sim";
    if (!s.is_object()) {
      throw ConfigError(label + ": must be an object");
    }
    reject_unknown_keys(s,
                        {"monitor_half_width_s", "route_candidates", "seed", "depart_start_min",
                         "depart_end_min", "workers"},
                        label);
    cfg.sim.monitor_half_width_s =
        number_or(s, "monitor_half_width_s", cfg.sim.monitor_half_width_s, label);
    cfg.sim.route_candidates = int_or(s, "route_candidates", cfg.sim.route_candidates, label);
    cfg.sim.depart_start_min = number_or(s, "depart_start_min", cfg.sim.depart_start_min, label);
    cfg.sim.depart_end_min = number_or(s, "depart_end_min", cfg.sim.depart_end_min, label);
    cfg.sim.workers = int_or(s, "workers", cfg.sim.workers, label);
    if (s.contains("seed")) {
      if (!s["seed"].is_number_integer() && !s["seed"].is_number_unsigned()) {
        throw ConfigError(label + ": field 'seed' must be an integer");
      }
      cfg.sim.seed = s["seed"].get<std::uint64_t>();
    }
  }

  try {
    cfg.modes.check();
    cfg.sim.check();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(path + ": " + err.what());
  }
  return cfg;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write output file: " + path);
  }
  return out;
}

json mode_map_json(const std::array<double, 3>& values) {
  json out;
  for (VehicleMode m : kAllModes) {
    out[std::string(mode_name(m))] = values[static_cast<std::size_t>(m)];
  }
  return out;
}

json mode_map_json(const std::array<int, 3>& values) {
  json out;
  for (VehicleMode m : kAllModes) {
    out[std::string(mode_name(m))] = values[static_cast<std::size_t>(m)];
  }
  return out;
}

json summary_json(const StrategySummary& s) {
  json out;
  out["fleet_dte"] = s.fleet_dte ? json(*s.fleet_dte) : json(nullptr);
  out["completed"] = s.completed;
  out["failed"] = s.failed;
  out["mean_travel_min"] = mode_map_json(s.mean_travel_min);
  out["mean_cost_usd"] = mode_map_json(s.mean_cost_usd);
  out["completed_by_mode"] = mode_map_json(s.completed_by_mode);
  return out;
}

// absolute and relative gaps between two strategies' equity scores
json delta_json(const StrategySummary& a, const StrategySummary& b) {
  json out;
  if (a.fleet_dte && b.fleet_dte) {
    const double abs = *a.fleet_dte - *b.fleet_dte;
    out["dte_abs"] = abs;
    out["dte_pct"] = *b.fleet_dte != 0.0 ? json(100.0 * abs / *b.fleet_dte) : json(nullptr);
  } else {
    out["dte_abs"] = nullptr;
    out["dte_pct"] = nullptr;
  }
  return out;
}

}  // namespace

void write_vehicles_csv(const std::string& path, const RunResults& results) {
  auto out = open_out(path);
  CsvWriter csv(out);
  csv.row({"id", "mode", "origin", "dest", "depart_min", "complete_min", "travel_min",
           "cost_usd", "dtx", "strategy"});
  for (const VehicleRecord& v : results.vehicles) {
    csv.field(static_cast<int>(v.id));
    csv.field(mode_name(v.mode));
    csv.field(static_cast<int>(v.origin));
    csv.field(static_cast<int>(v.destination));
    csv.field(v.depart_min);
    if (v.completed) {
      csv.field(v.complete_min);
      csv.field(v.travel_min);
      csv.field(v.cost_usd);
      csv.field(v.dtx);
    } else {
      csv.field("");
      csv.field("");
      csv.field("");
      csv.field("");
    }
    csv.field(strategy_name(results.strategy));
    csv.end_row();
  }
}

StrategySummary summarize(const RunResults& results) {
  StrategySummary s;
  s.strategy = results.strategy;
  if (results.fleet) {
    s.fleet_dte = results.fleet->dte;
  }
  s.mean_travel_min = results.mean_travel_min;
  s.mean_cost_usd = results.mean_cost_usd;
  s.completed_by_mode = results.completed_by_mode;
  s.completed =
      results.completed_by_mode[0] + results.completed_by_mode[1] + results.completed_by_mode[2];
  s.failed = results.failed_count;
  return s;
}

void write_run_summary(const std::string& path, const RunResults& results, std::uint64_t seed,
                       const std::string& digest) {
  const StrategySummary s = summarize(results);
  json doc = summary_json(s);
  doc["strategy"] = std::string(strategy_name(results.strategy));
  doc["seed"] = seed;
  doc["config_digest"] = digest;
  doc["vehicles"] = results.vehicles.size();
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

ComparisonReport build_comparison(const std::array<RunResults, 3>& runs, std::uint64_t seed,
                                  const std::string& digest) {
  ComparisonReport report;
  report.seed = seed;
  report.config_digest = digest;
  for (const RunResults& r : runs) {
    report.strategies[static_cast<std::size_t>(r.strategy)] = summarize(r);
  }
  return report;
}

void write_comparison_json(const std::string& path, const ComparisonReport& report) {
  json doc;
  doc["seed"] = report.seed;
  doc["config_digest"] = report.config_digest;
  for (const StrategySummary& s : report.strategies) {
    doc["strategies"][std::string(strategy_name(s.strategy))] = summary_json(s);
  }
  const auto& st = report.strategies;
  doc["deltas"]["dsr_minus_psr"] = delta_json(st[1], st[0]);
  doc["deltas"]["equity_minus_dsr"] = delta_json(st[2], st[1]);
  doc["deltas"]["equity_minus_psr"] = delta_json(st[2], st[0]);
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

ComparisonReport read_comparison_json(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& err) {
    throw ConfigError(path + ": " + err.what());
  }
  ComparisonReport report;
  report.seed = doc.at("seed").get<std::uint64_t>();
  report.config_digest = doc.at("config_digest").get<std::string>();
  for (Strategy strat : {Strategy::psr, Strategy::dsr, Strategy::equity}) {
    const json& s = doc.at("strategies").at(std::string(strategy_name(strat)));
    StrategySummary& out = report.strategies[static_cast<std::size_t>(strat)];
    out.strategy = strat;
    if (!s.at("fleet_dte").is_null()) {
      out.fleet_dte = s.at("fleet_dte").get<double>();
    }
    out.completed = s.at("completed").get<int>();
    out.failed = s.at("failed").get<int>();
    for (VehicleMode m : kAllModes) {
      const auto mi = static_cast<std::size_t>(m);
      const std::string name(mode_name(m));
      out.mean_travel_min[mi] = s.at("mean_travel_min").at(name).get<double>();
      out.mean_cost_usd[mi] = s.at("mean_cost_usd").at(name).get<double>();
      out.completed_by_mode[mi] = s.at("completed_by_mode").at(name).get<int>();
    }
  }
  return report;
}

void write_dtx_distribution_csv(const std::string& path,
                                const std::array<RunResults, 3>& runs) {
  auto out = open_out(path);
  CsvWriter csv(out);
  csv.row({"strategy", "id", "mode", "dtx"});
  for (const RunResults& r : runs) {
    for (const VehicleRecord& v : r.vehicles) {
      if (!v.completed) {
        continue;
      }
      csv.field(strategy_name(r.strategy));
      csv.field(static_cast<int>(v.id));
      csv.field(mode_name(v.mode));
      csv.field(v.dtx);
      csv.end_row();
    }
  }
}

void write_mode_means_csv(const std::string& path, const ComparisonReport& report) {
  auto out = open_out(path);
  CsvWriter csv(out);
  csv.row({"strategy", "mode", "mean_travel_min", "mean_cost_usd", "completed"});
  for (const StrategySummary& s : report.strategies) {
    for (VehicleMode m : kAllModes) {
      const auto mi = static_cast<std::size_t>(m);
      csv.field(strategy_name(s.strategy));
      csv.field(mode_name(m));
      csv.field(s.mean_travel_min[mi]);
      csv.field(s.mean_cost_usd[mi]);
      csv.field(s.completed_by_mode[mi]);
      csv.end_row();
    }
  }
}

}  // namespace equiroute
