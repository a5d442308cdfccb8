#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sarplan/error.hpp"
#include "sarplan/planner.hpp"
#include "sarplan/rp_model.hpp"
#include "sarplan/simulator.hpp"
#include "sarplan/solution.hpp"
#include "sarplan/terrain.hpp"

namespace sarplan {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

inline json cell_json(Cell c) { return json::array({c.a, c.b}); }

inline Cell cell_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ConfigError("cell must be an [a, b] integer pair");
  return {j[0].get<int>(), j[1].get<int>()};
}

// ---------------------------------------------------------------------------
// Cell grids. Heights and flags are listed in index order (a-major).

inline json grid_to_json(const CellGrid& g) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["A"] = g.A();
  j["B"] = g.B();
  j["cell_size_m"] = g.cell_size_m();
  j["heights_m"] = g.heights();
  std::vector<int> mask(g.traversable_mask().begin(), g.traversable_mask().end());
  j["traversable"] = mask;
  return j;
}

inline CellGrid grid_from_json(const json& j) {
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) throw ConfigError("unsupported cell grid schema_version");
    const int A = j.at("A").get<int>(), B = j.at("B").get<int>();
    auto heights = j.at("heights_m").get<std::vector<double>>();
    std::vector<std::uint8_t> mask;
    for (int v : j.at("traversable").get<std::vector<int>>()) mask.push_back(v ? 1 : 0);
    if (A <= 0 || B <= 0 || heights.size() != static_cast<std::size_t>(A) * B || mask.size() != heights.size())
      throw ConfigError("cell grid dimensions do not match its data");
    return CellGrid(A, B, j.at("cell_size_m").get<double>(), std::move(heights), std::move(mask));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed cell grid: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Solutions and plans

inline json solution_to_json(const PlanSolution& s) {
  json j;
  j["status"] = status_name(s.status);
  j["solver"] = s.solver;
  j["objective"] = s.objective;
  if (s.lower_bound) j["lower_bound"] = *s.lower_bound;
  if (!s.reason.empty()) j["reason"] = s.reason;
  j["nodes"] = s.nodes;
  j["d"] = s.d;
  json paths = json::array();
  for (const auto& p : s.paths) {
    json arr = json::array();
    for (const auto& c : p) arr.push_back(cell_json(c));
    paths.push_back(arr);
  }
  j["paths"] = paths;
  json explored = json::array();
  for (int t = 0; t < static_cast<int>(s.explored.size()); ++t) explored.push_back(s.explored_count(t));
  j["explored_cells"] = explored;
  j["battery_J"] = s.battery_J;
  return j;
}

// Waypoints carry cell indices plus the cell-center coordinates in meters.
inline json plan_to_json(const MissionPlan& p, const CellGrid& g) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["profile"] = p.profile_name;
  j["fleet_size"] = p.fleet_size;
  j["met_requirements"] = p.met_requirements;
  j["err"] = p.err;
  j["epoch_s"] = p.epoch_s;
  j["horizon_epochs"] = p.horizon;
  j["coverage_target_cells"] = p.coverage_target;
  j["expected_explored_pct"] = p.expected_explored_pct;
  j["completion_epochs"] = p.completion_epochs;
  j["completion_time_s"] = p.completion_time_s;
  json attempts = json::array();
  for (const auto& a : p.attempts) {
    json x;
    x["fleet"] = a.fleet;
    x["solver"] = a.solver;
    x["status"] = status_name(a.status);
    x["meets"] = a.meets;
    x["objective"] = a.objective;
    if (!a.reason.empty()) x["reason"] = a.reason;
    attempts.push_back(x);
  }
  j["attempts"] = attempts;
  json waypoints = json::array();
  for (const auto& path : p.paths) {
    json arr = json::array();
    for (const auto& c : path) {
      const double x = (c.a + 0.5) * g.cell_size_m(), y = (c.b + 0.5) * g.cell_size_m();
      arr.push_back(json{{"a", c.a}, {"b", c.b}, {"x_m", x}, {"y_m", y}, {"z_m", g.height(c)}});
    }
    waypoints.push_back(arr);
  }
  j["waypoints"] = waypoints;
  j["solution"] = solution_to_json(p.solution);
  return j;
}

// Reads back what simulate needs: paths, ERR and epoch length.
inline MissionPlan plan_from_json(const json& j) {
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) throw ConfigError("unsupported plan schema_version");
    MissionPlan p;
    p.profile_name = j.value("profile", "");
    p.fleet_size = j.at("fleet_size").get<int>();
    p.met_requirements = j.at("met_requirements").get<bool>();
    p.err = j.at("err").get<double>();
    p.epoch_s = j.at("epoch_s").get<double>();
    p.horizon = j.at("horizon_epochs").get<int>();
    p.coverage_target = j.at("coverage_target_cells").get<int>();
    p.expected_explored_pct = j.at("expected_explored_pct").get<double>();
    p.completion_epochs = j.at("completion_epochs").get<int>();
    p.completion_time_s = j.at("completion_time_s").get<double>();
    for (const auto& path : j.at("waypoints")) {
      std::vector<Cell> cells;
      for (const auto& w : path) cells.push_back({w.at("a").get<int>(), w.at("b").get<int>()});
      p.paths.push_back(std::move(cells));
    }
    return p;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed plan file: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports and model summaries

inline json report_summary_json(const MissionReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["epochs"] = r.epochs();
  j["epoch_s"] = r.epoch_s;
  j["final_explored_pct"] = r.explored_pct.empty() ? 0.0 : r.explored_pct.back();
  j["coverage_target_cells"] = r.coverage_target;
  j["completion_epoch"] = r.completion_epoch ? json(*r.completion_epoch) : json(nullptr);
  j["depleted_robots"] = r.depleted_robots;
  j["depleted_at"] = r.depleted_at;
  j["energy_J"] = r.energy_J;
  j["motion_energy_J"] = r.motion_energy_J;
  j["component_energy_J"] = r.component_energy_J;
  return j;
}

inline json instance_summary_json(const RpInstance& in) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["A"] = in.grid.A();
  j["B"] = in.grid.B();
  j["fleet"] = in.fleet;
  j["horizon_epochs"] = in.horizon;
  j["epoch_s"] = in.epoch_s;
  j["kappa"] = in.kappa;
  j["coverage_target_cells"] = in.coverage_target;
  j["base_epoch_J"] = in.base_epoch_J;
  j["canonicalized"] = in.canonicalized;
  json vars;
  vars["d"] = in.vars.d_count();
  vars["e"] = in.vars.e_count();
  vars["l"] = in.vars.l_count();
  vars["y"] = in.vars.y_count();
  vars["z"] = in.vars.z_count();
  vars["b"] = in.vars.b_count();
  vars["binary"] = in.vars.binary_count();
  vars["continuous"] = in.vars.b_count();
  j["variables"] = vars;
  if (in.model) {
    json rows;
    for (auto f : {RowFamily::FinalCoverage, RowFamily::OnePlace, RowFamily::Adjacency, RowFamily::ExploreUpper,
                   RowFamily::ExploreMonotone, RowFamily::ExploreLower, RowFamily::Activation, RowFamily::Battery,
                   RowFamily::MoveProduct, RowFamily::SenseProduct, RowFamily::Canonical, RowFamily::StartFix})
      rows[row_family_name(f)] = in.model->count(f);
    rows["total"] = in.model->rows.size();
    j["rows"] = rows;
  }
  return j;
}

}  // namespace sarplan
