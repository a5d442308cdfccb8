#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>

#include "sarplan/energy.hpp"
#include "sarplan/error.hpp"
#include "sarplan/io.hpp"
#include "sarplan/planner.hpp"
#include "sarplan/simulator.hpp"
#include "sarplan/terrain.hpp"

namespace sarplan {

// Run configuration (JSON, schema_version 1):
//
//   terrain    exactly one of
//                synthetic  {kind flat|ramp|ridge, A, B, cell_size_m, grade, height_m}
//                dem        {path, format ascii_grid|csv_heightmap, cell_size_m, csv_resolution_m}
//                grid_file  path to a cell grid written by `ingest`
//   profile    {file} or {builtin wheeled|quadruped|quadruped-measured}
//   mission    {err, trt_s, tfs, epoch_s, battery_scale, battery_init_J}
//   solver     {mode, exact_threshold, time_limit_s, node_cap, heuristic_restarts, reserve_J, seed}
//   comm       {base_station [a, b], beta, d_ref_m}
//   simulator  {gamma, overshoot_cap_factor, stretch_long_moves, battery_init_J}
//
// Relative paths resolve against the config file's directory. Unknown keys
// are rejected.
struct RunConfig {
  std::filesystem::path source;
  std::optional<CellGrid> grid;
  std::optional<EnergyProfile> profile;
  bool has_mission = false;
  MissionSpec mission;
  CommModel comm;
  SimConfig sim;
  std::uint64_t seed = 0;

  const CellGrid& require_grid() const {
    if (!grid) throw ConfigError("config has no 'terrain' section");
    return *grid;
  }
  const EnergyProfile& require_profile() const {
    if (!profile) throw ConfigError("config has no 'profile' section");
    return *profile;
  }
  // Grid and profile are copied into the returned spec.
  MissionSpec require_mission() const {
    if (!has_mission) throw ConfigError("config has no 'mission' section");
    MissionSpec m = mission;
    m.grid = require_grid();
    m.profile = require_profile();
    m.comm = comm;
    return m;
  }
};

namespace detail {

inline void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError("'" + where + "' must be an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in '" + where + "'");
}

inline double get_number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError("missing required key '" + key + "' in '" + where + "'");
  if (!obj[key].is_number()) throw ConfigError("'" + where + "." + key + "' must be a number");
  return obj[key].get<double>();
}

inline double get_number(const json& obj, const std::string& key, const std::string& where, double fallback) {
  return obj.contains(key) ? get_number(obj, key, where) : fallback;
}

inline int get_int(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError("missing required key '" + key + "' in '" + where + "'");
  if (!obj[key].is_number_integer()) throw ConfigError("'" + where + "." + key + "' must be an integer");
  return obj[key].get<int>();
}

inline std::string get_string(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError("missing required key '" + key + "' in '" + where + "'");
  if (!obj[key].is_string()) throw ConfigError("'" + where + "." + key + "' must be a string");
  return obj[key].get<std::string>();
}

inline CellGrid load_terrain(const json& t, const std::filesystem::path& dir) {
  check_keys(t, {"synthetic", "dem", "grid_file"}, "terrain");
  if (t.size() != 1) throw ConfigError("'terrain' needs exactly one of synthetic, dem, grid_file");
  if (t.contains("synthetic")) {
    const auto& s = t["synthetic"];
    check_keys(s, {"kind", "A", "B", "cell_size_m", "grade", "height_m"}, "terrain.synthetic");
    const std::string kind = get_string(s, "kind", "terrain.synthetic");
    SynthTerrain st;
    if (kind == "flat") st = SynthTerrain::flat();
    else if (kind == "ramp") st = SynthTerrain::ramp(get_number(s, "grade", "terrain.synthetic"));
    else if (kind == "ridge") st = SynthTerrain::ridge(get_number(s, "height_m", "terrain.synthetic"));
    else throw ConfigError("unknown synthetic terrain kind '" + kind + "'");
    return synth_terrain(st, get_int(s, "A", "terrain.synthetic"), get_int(s, "B", "terrain.synthetic"),
                         get_number(s, "cell_size_m", "terrain.synthetic"));
  }
  if (t.contains("dem")) {
    const auto& d = t["dem"];
    check_keys(d, {"path", "format", "cell_size_m", "csv_resolution_m"}, "terrain.dem");
    const std::string fmt = get_string(d, "format", "terrain.dem");
    DemFormat format;
    if (fmt == "ascii_grid") format = DemFormat::AsciiGrid;
    else if (fmt == "csv_heightmap") format = DemFormat::CsvHeightmap;
    else throw ConfigError("unknown DEM format '" + fmt + "'");
    const auto path = dir / get_string(d, "path", "terrain.dem");
    const auto hg = load_dem(path.string(), format, get_number(d, "csv_resolution_m", "terrain.dem", 1.0));
    return discretize(hg, get_number(d, "cell_size_m", "terrain.dem"));
  }
  if (!t["grid_file"].is_string()) throw ConfigError("'terrain.grid_file' must be a string");
  return grid_from_json(read_json_file((dir / t["grid_file"].get<std::string>()).string()));
}

inline EnergyProfile load_profile_section(const json& p, const std::filesystem::path& dir) {
  check_keys(p, {"file", "builtin"}, "profile");
  if (p.size() != 1) throw ConfigError("'profile' needs exactly one of file, builtin");
  if (p.contains("file")) return load_profile((dir / get_string(p, "file", "profile")).string());
  const std::string b = get_string(p, "builtin", "profile");
  if (b == "wheeled") return default_wheeled_profile();
  if (b == "quadruped") return default_quadruped_profile(QuadrupedMode::Regression);
  if (b == "quadruped-measured") return default_quadruped_profile(QuadrupedMode::MeasuredTable);
  throw ConfigError("unknown builtin profile '" + b + "'");
}

}  // namespace detail

inline RunConfig parse_run_config(const json& j, const std::filesystem::path& dir) {
  using namespace detail;
  RunConfig cfg;
  check_keys(j, {"schema_version", "terrain", "profile", "mission", "solver", "comm", "simulator"}, "config");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
    throw ConfigError("config needs an integer 'schema_version'");
  if (j["schema_version"].get<int>() != kSchemaVersion)
    throw ConfigError("unsupported schema_version " + std::to_string(j["schema_version"].get<int>()));

  if (j.contains("terrain")) cfg.grid = load_terrain(j["terrain"], dir);
  if (j.contains("profile")) cfg.profile = load_profile_section(j["profile"], dir);

  if (j.contains("comm")) {
    const auto& c = j["comm"];
    check_keys(c, {"base_station", "beta", "d_ref_m"}, "comm");
    if (c.contains("base_station")) cfg.comm.base_station = cell_from_json(c["base_station"]);
    cfg.comm.beta = get_number(c, "beta", "comm", cfg.comm.beta);
    cfg.comm.d_ref_m = get_number(c, "d_ref_m", "comm", cfg.comm.d_ref_m);
    if (!(cfg.comm.d_ref_m > 0.0)) throw ConfigError("'comm.d_ref_m' must be positive");
  }

  if (j.contains("mission")) {
    const auto& m = j["mission"];
    check_keys(m, {"err", "trt_s", "tfs", "epoch_s", "battery_scale", "battery_init_J"}, "mission");
    cfg.has_mission = true;
    cfg.mission.err = get_number(m, "err", "mission");
    cfg.mission.trt_s = get_number(m, "trt_s", "mission");
    cfg.mission.tfs = get_int(m, "tfs", "mission");
    cfg.mission.epoch_s = get_number(m, "epoch_s", "mission");
    const double scale = get_number(m, "battery_scale", "mission", 1.0);
    if (!(scale > 0.0)) throw ConfigError("'mission.battery_scale' must be positive");
    if (cfg.profile) cfg.profile->battery_capacity_J *= scale;
    if (m.contains("battery_init_J")) cfg.mission.battery_init_J = get_number(m, "battery_init_J", "mission");
  }

  if (j.contains("solver")) {
    const auto& s = j["solver"];
    check_keys(s, {"mode", "exact_threshold", "time_limit_s", "node_cap", "heuristic_restarts", "reserve_J", "seed"}, "solver");
    if (s.contains("mode")) cfg.mission.solver_mode = parse_solver_mode(get_string(s, "mode", "solver"));
    if (s.contains("exact_threshold")) cfg.mission.exact_threshold = get_int(s, "exact_threshold", "solver");
    cfg.mission.exact_limits.time_limit_s = get_number(s, "time_limit_s", "solver", cfg.mission.exact_limits.time_limit_s);
    if (s.contains("node_cap")) {
      if (!s["node_cap"].is_number_unsigned()) throw ConfigError("'solver.node_cap' must be a non-negative integer");
      cfg.mission.exact_limits.node_cap = s["node_cap"].get<std::uint64_t>();
    }
    if (s.contains("heuristic_restarts")) cfg.mission.heuristic.restarts = get_int(s, "heuristic_restarts", "solver");
    cfg.mission.heuristic.reserve_J = get_number(s, "reserve_J", "solver", 0.0);
    if (s.contains("seed")) {
      if (!s["seed"].is_number_unsigned()) throw ConfigError("'solver.seed' must be a non-negative integer");
      cfg.seed = s["seed"].get<std::uint64_t>();
    }
  }
  cfg.mission.heuristic.seed = cfg.seed;

  if (cfg.has_mission) cfg.sim.epoch_s = cfg.mission.epoch_s;
  cfg.sim.err = cfg.mission.err;
  if (j.contains("simulator")) {
    const auto& s = j["simulator"];
    check_keys(s, {"gamma", "overshoot_cap_factor", "stretch_long_moves", "battery_init_J"}, "simulator");
    cfg.sim.speed.gamma = get_number(s, "gamma", "simulator", cfg.sim.speed.gamma);
    cfg.sim.speed.overshoot_cap_factor = get_number(s, "overshoot_cap_factor", "simulator", cfg.sim.speed.overshoot_cap_factor);
    if (s.contains("stretch_long_moves")) {
      if (!s["stretch_long_moves"].is_boolean()) throw ConfigError("'simulator.stretch_long_moves' must be a boolean");
      cfg.sim.stretch_long_moves = s["stretch_long_moves"].get<bool>();
    }
    // A single value applied to every robot; expanded once the fleet is known.
    if (s.contains("battery_init_J")) cfg.sim.battery_init_J = {get_number(s, "battery_init_J", "simulator")};
  }
  return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
  const std::filesystem::path p(path);
  RunConfig cfg = parse_run_config(read_json_file(path), p.parent_path());
  cfg.source = p;
  return cfg;
}

}  // namespace sarplan
