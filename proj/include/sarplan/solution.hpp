#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sarplan/error.hpp"
#include "sarplan/rp_model.hpp"

namespace sarplan {

enum class SolveStatus { Optimal, Feasible, Infeasible, Timeout };

inline const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Timeout: return "timeout";
  }
  return "?";
}

// A full assignment of the planning model. Indices: paths[r][t],
// explored[t][k], battery_J[r][t], d[t]. Empty paths mean "no plan".
struct PlanSolution {
  SolveStatus status = SolveStatus::Infeasible;
  int objective = 0;
  std::vector<std::uint8_t> d;
  std::vector<std::vector<Cell>> paths;
  std::vector<std::vector<std::uint8_t>> explored;
  std::vector<std::vector<double>> battery_J;
  std::string reason;
  std::optional<int> lower_bound;
  std::uint64_t nodes = 0;
  double elapsed_s = 0.0;
  std::string solver;

  bool has_plan() const { return !paths.empty(); }
  int explored_count(int t) const {
    int n = 0;
    for (auto v : explored[t]) n += v;
    return n;
  }
  int final_explored() const { return explored.empty() ? 0 : explored_count(static_cast<int>(explored.size()) - 1); }
};

// Fills exploration, batteries, d and the objective from robot paths
// (one cell per epoch per robot). Paths are assumed to use offered moves.
inline PlanSolution materialize(const RpInstance& in, std::vector<std::vector<Cell>> paths, SolveStatus status) {
  const int R = in.fleet, T = in.horizon, S = in.cell_count();
  if (static_cast<int>(paths.size()) != R) throw ConfigError("plan has the wrong number of robots");
  for (const auto& p : paths)
    if (static_cast<int>(p.size()) != T) throw ConfigError("plan path has the wrong number of epochs");
  PlanSolution s;
  s.status = status;
  s.paths = std::move(paths);
  s.explored.assign(T, std::vector<std::uint8_t>(S, 0));
  s.battery_J.assign(R, std::vector<double>(T, 0.0));
  s.d.assign(T, 0);
  for (int r = 0; r < R; ++r) {
    s.explored[0][in.grid.index(s.paths[r][0])] = 1;
    s.battery_J[r][0] = in.battery_init_J[r];
  }
  for (int t = 0; t + 1 < T; ++t) {
    s.explored[t + 1] = s.explored[t];
    for (int r = 0; r < R; ++r) {
      const Cell u = s.paths[r][t], v = s.paths[r][t + 1];
      const auto dir = direction_between(u, v);
      if (!dir) throw ConfigError("plan path jumps between non-adjacent cells");
      const int kv = in.grid.index(v);
      double cost = in.base_epoch_J + in.move_costs.at(u, *dir).energy_J;
      if (!s.explored[t][kv]) cost += in.first_visit_J[kv];
      s.battery_J[r][t + 1] = s.battery_J[r][t] - cost;
      s.explored[t + 1][kv] = 1;
    }
  }
  for (int t = 0; t < T; ++t) {
    s.d[t] = s.explored_count(t) < in.coverage_target ? 1 : 0;
    s.objective += s.d[t];
  }
  return s;
}

inline PlanSolution no_plan(SolveStatus status, std::string reason) {
  PlanSolution s;
  s.status = status;
  s.reason = std::move(reason);
  return s;
}

}  // namespace sarplan
