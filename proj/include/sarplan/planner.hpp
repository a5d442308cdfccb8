#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sarplan/energy.hpp"
#include "sarplan/error.hpp"
#include "sarplan/exact.hpp"
#include "sarplan/heuristic.hpp"
#include "sarplan/rp_model.hpp"
#include "sarplan/solution.hpp"
#include "sarplan/terrain.hpp"

namespace sarplan {

enum class SolverMode { Exact, Heuristic, ExactThenHeuristic };

inline const char* solver_mode_name(SolverMode m) {
  switch (m) {
    case SolverMode::Exact: return "exact";
    case SolverMode::Heuristic: return "heuristic";
    case SolverMode::ExactThenHeuristic: return "exact-then-heuristic";
  }
  return "?";
}

inline SolverMode parse_solver_mode(const std::string& s) {
  if (s == "exact") return SolverMode::Exact;
  if (s == "heuristic") return SolverMode::Heuristic;
  if (s == "exact-then-heuristic") return SolverMode::ExactThenHeuristic;
  throw ConfigError("unknown solver mode '" + s + "' (expected exact, heuristic or exact-then-heuristic)");
}

struct MissionSpec {
  CellGrid grid;
  double err = 1.0;      // fraction of cells to explore
  double trt_s = 0.0;    // time allowed for the mission
  int tfs = 1;           // largest fleet available
  EnergyProfile profile;
  double epoch_s = 10.0;
  CommModel comm;
  SolverMode solver_mode = SolverMode::ExactThenHeuristic;
  // exact-then-heuristic uses the exact search while R * T * cells stays at or below this.
  long long exact_threshold = 20000;
  ExactLimits exact_limits;
  HeuristicOptions heuristic;
  // Overrides the profile capacity as the starting charge of every robot.
  std::optional<double> battery_init_J;

  int horizon() const { return static_cast<int>(std::floor(trt_s / epoch_s + 1e-9)); }

  void validate() const {
    if (!(err >= 0.0 && err <= 1.0)) throw ConfigError("ERR must lie in [0, 1]");
    if (!(epoch_s > 0.0)) throw ConfigError("epoch length must be positive");
    if (!(trt_s > 0.0)) throw ConfigError("TRT must be positive");
    if (horizon() < 1) throw ConfigError("TRT is shorter than one epoch");
    if (tfs < 1) throw ConfigError("TFS must be at least 1");
    if (grid.cell_count() == 0) throw ConfigError("grid is empty");
    if (battery_init_J && !(*battery_init_J >= 0.0 && *battery_init_J <= profile.battery_capacity_J))
      throw ConfigError("initial battery must lie in [0, battery capacity]");
    profile.validate();
  }
};

struct FleetAttempt {
  int fleet = 0;
  std::string solver;
  SolveStatus status = SolveStatus::Infeasible;
  bool meets = false;
  int objective = 0;
  std::string reason;
  double elapsed_s = 0.0;
};

struct MissionPlan {
  std::string profile_name;
  int fleet_size = 0;
  int horizon = 0;
  int coverage_target = 0;
  double err = 0.0;
  double epoch_s = 0.0;
  double expected_explored_pct = 0.0;
  int completion_epochs = 0;  // epochs before the target is met (sum of d)
  double completion_time_s = 0.0;
  bool met_requirements = false;
  std::vector<std::vector<Cell>> paths;
  PlanSolution solution;
  std::vector<FleetAttempt> attempts;
};

// One planning attempt for a fixed fleet. Cheap-bound infeasibility is
// reported as a result, not thrown.
inline PlanSolution solve_fleet(const MissionSpec& spec, const MoveCostTable& costs, int fleet) {
  RpInputs inputs{spec.grid,
                  spec.profile,
                  fleet,
                  spec.err,
                  spec.horizon(),
                  spec.epoch_s,
                  costs,
                  spec.comm,
                  default_start_cells(spec.grid, fleet),
                  {}};
  if (spec.battery_init_J) inputs.battery_init_J.assign(fleet, *spec.battery_init_J);
  RpInstance inst;
  try {
    inst = build_rp(std::move(inputs), {.canonicalize = true, .materialize = false, .reject_infeasible = true});
  } catch (const InfeasibleError& e) {
    auto s = no_plan(SolveStatus::Infeasible, e.what());
    s.solver = "bound";
    return s;
  }
  const long long size = static_cast<long long>(fleet) * inst.horizon * inst.cell_count();
  const bool exact = spec.solver_mode == SolverMode::Exact ||
                     (spec.solver_mode == SolverMode::ExactThenHeuristic && size <= spec.exact_threshold);
  return exact ? solve_exact(inst, spec.exact_limits) : solve_heuristic(inst, spec.heuristic);
}

// Smallest fleet (1..TFS) whose plan explores ERR of the area within TRT.
// If none does, the TFS attempt is returned with met_requirements = false.
inline MissionPlan plan_mission(const MissionSpec& spec) {
  spec.validate();
  MissionPlan plan;
  plan.profile_name = spec.profile.name;
  plan.horizon = spec.horizon();
  plan.err = spec.err;
  plan.epoch_s = spec.epoch_s;
  plan.coverage_target = coverage_target(spec.err, spec.grid.cell_count());
  if (plan.coverage_target == 0) {
    plan.met_requirements = true;
    plan.solution.status = SolveStatus::Optimal;
    return plan;
  }
  int traversable = 0;
  for (auto t : spec.grid.traversable_mask()) traversable += t ? 1 : 0;
  if (traversable == 0) throw ConfigError("grid has no traversable cell to start from");

  const MoveCostTable costs = build_move_costs(spec.grid, spec.profile, spec.epoch_s);
  const int last_fleet = std::min(spec.tfs, traversable);
  for (int fleet = 1; fleet <= last_fleet; ++fleet) {
    PlanSolution s = solve_fleet(spec, costs, fleet);
    FleetAttempt att;
    att.fleet = fleet;
    att.solver = s.solver;
    att.status = s.status;
    att.objective = s.objective;
    att.reason = s.reason;
    att.elapsed_s = s.elapsed_s;
    att.meets = s.has_plan() && s.status != SolveStatus::Infeasible && s.final_explored() >= plan.coverage_target &&
                s.objective * spec.epoch_s <= spec.trt_s + 1e-9;
    plan.attempts.push_back(att);
    if (att.meets || fleet == last_fleet) {
      plan.fleet_size = fleet;
      plan.met_requirements = att.meets;
      plan.solution = std::move(s);
      break;
    }
  }
  if (plan.fleet_size < spec.tfs && !plan.met_requirements)
    plan.attempts.back().reason += " (no more traversable start cells)";
  const auto& s = plan.solution;
  if (s.has_plan()) {
    plan.paths = s.paths;
    plan.expected_explored_pct = 100.0 * s.final_explored() / spec.grid.cell_count();
    plan.completion_epochs = s.objective;
    plan.completion_time_s = s.objective * spec.epoch_s;
  }
  return plan;
}

// Same mission for each profile; returns one plan per profile.
inline std::vector<MissionPlan> compare_profiles(const MissionSpec& spec, const std::vector<EnergyProfile>& profiles) {
  if (profiles.empty()) throw ConfigError("compare_profiles needs at least one profile");
  std::vector<MissionPlan> out;
  for (const auto& p : profiles) {
    MissionSpec s = spec;
    s.profile = p;
    out.push_back(plan_mission(s));
  }
  return out;
}

}  // namespace sarplan
