#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sarplan/energy.hpp"
#include "sarplan/error.hpp"
#include "sarplan/planner.hpp"
#include "sarplan/rp_model.hpp"
#include "sarplan/terrain.hpp"
#include "sarplan/util.hpp"

namespace sarplan {

struct SimConfig {
  double epoch_s = 10.0;
  SpeedConfig speed;
  // Moves slower than one epoch occupy ceil(transit / epoch) epochs.
  bool stretch_long_moves = true;
  // Empty: every robot starts at the profile capacity.
  std::vector<double> battery_init_J;
  // Exploration ratio used for completion_epoch.
  double err = 1.0;
};

struct RobotStep {
  Cell cell;
  double speed_mps = 0.0;
  double elevation_m = 0.0;
  double battery_J = 0.0;
  double motion_energy_J_cum = 0.0;
  bool depleted = false;
};

struct MissionReport {
  double epoch_s = 0.0;
  int cell_count = 0;
  int coverage_target = 0;
  // Index i is simulator epoch i + 1; entry 0 is the initial state.
  std::vector<double> explored_pct;
  std::vector<int> explored_cells;
  std::vector<std::vector<RobotStep>> robots;  // [robot][epoch]
  std::vector<double> energy_J;                // initial minus final battery
  std::vector<double> motion_energy_J;
  std::vector<double> component_energy_J;     // receive, idle, sensing, transmit
  std::optional<int> completion_epoch;         // 1-based
  int depleted_robots = 0;
  std::vector<int> depleted_at;                // 1-based epoch, 0 if never

  int epochs() const { return static_cast<int>(explored_pct.size()); }
};

namespace detail {

struct SimRobot {
  const std::vector<Cell>* path = nullptr;
  std::size_t idx = 0;
  bool moving = false;
  Cell from, to;
  int move_epochs = 0;
  int move_done = 0;
  double move_energy = 0.0;
  double speed = 0.0;
  double battery = 0.0;
  double motion_cum = 0.0;
  double component = 0.0;
  bool depleted = false;
  int depleted_at = 0;
};

}  // namespace detail

// Replays per-robot paths (one waypoint per planning epoch) in discrete time.
// Each epoch charges receive and idle power; a move's motion energy is spread
// over the epochs it occupies; sensing and transmit are charged on arrival
// at a cell that was unexplored when the epoch began.
inline MissionReport simulate(const std::vector<std::vector<Cell>>& paths, const CellGrid& grid, const EnergyProfile& profile,
                              const CommModel& comm, const SimConfig& cfg) {
  profile.validate();
  if (!(cfg.epoch_s > 0.0)) throw ConfigError("epoch length must be positive");
  const int R = static_cast<int>(paths.size());
  const int S = grid.cell_count();
  if (!cfg.battery_init_J.empty() && static_cast<int>(cfg.battery_init_J.size()) != R)
    throw ConfigError("need one initial battery per robot");

  for (int r = 0; r < R; ++r) {
    const auto& p = paths[r];
    if (p.empty()) throw ConfigError("robot " + std::to_string(r) + " has an empty path");
    for (std::size_t t = 0; t < p.size(); ++t) {
      const std::string at = "robot " + std::to_string(r) + ", epoch " + std::to_string(t);
      if (!grid.contains(p[t]) || !grid.traversable(p[t])) throw ConfigError(at + ": cell is off the grid or not traversable");
      if (t > 0) {
        const auto d = direction_between(p[t - 1], p[t]);
        if (!d || !grid.step(p[t - 1], *d)) throw ConfigError(at + ": waypoint is not adjacent to the previous one");
      }
    }
  }

  MissionReport rep;
  rep.epoch_s = cfg.epoch_s;
  rep.cell_count = S;
  rep.coverage_target = coverage_target(cfg.err, S);
  const double base = (profile.p_rx_W + profile.p_idle_W) * cfg.epoch_s;

  std::vector<detail::SimRobot> bots(R);
  std::vector<std::uint8_t> explored(S, 0);
  int count = 0;
  for (int r = 0; r < R; ++r) {
    auto& b = bots[r];
    b.path = &paths[r];
    b.from = b.to = paths[r][0];
    b.battery = cfg.battery_init_J.empty() ? profile.battery_capacity_J : cfg.battery_init_J[r];
    if (b.battery < 0.0) throw ConfigError("initial battery must be non-negative");
    const int k = grid.index(paths[r][0]);
    if (!explored[k]) ++count;
    explored[k] = 1;
  }
  rep.robots.assign(R, {});
  auto record = [&](int r) {
    const auto& b = bots[r];
    RobotStep st;
    st.cell = b.from;
    st.speed_mps = b.moving && !b.depleted ? b.speed : 0.0;
    const double frac = b.moving ? static_cast<double>(b.move_done) / b.move_epochs : 0.0;
    st.elevation_m = grid.height(b.from) + (grid.height(b.to) - grid.height(b.from)) * frac;
    st.battery_J = b.battery;
    st.motion_energy_J_cum = b.motion_cum;
    st.depleted = b.depleted;
    rep.robots[r].push_back(st);
  };
  auto push_epoch = [&]() {
    rep.explored_cells.push_back(count);
    rep.explored_pct.push_back(S > 0 ? 100.0 * count / S : 0.0);
    if (!rep.completion_epoch && count >= rep.coverage_target) rep.completion_epoch = static_cast<int>(rep.explored_pct.size());
  };
  for (int r = 0; r < R; ++r) record(r);
  push_epoch();

  auto finished = [](const detail::SimRobot& b) { return b.depleted || (!b.moving && b.idx + 1 >= b.path->size()); };
  for (int epoch = 1; !std::all_of(bots.begin(), bots.end(), finished); ++epoch) {
    const std::vector<std::uint8_t> explored_start = explored;
    std::vector<int> arrivals;
    for (int r = 0; r < R; ++r) {
      auto& b = bots[r];
      if (b.depleted) {
        record(r);
        continue;
      }
      if (!b.moving && b.idx + 1 < b.path->size()) {
        b.to = (*b.path)[b.idx + 1];
        b.moving = true;
        b.move_done = 0;
        if (b.to == b.from) {
          b.move_epochs = 1;
          b.move_energy = 0.0;
          b.speed = 0.0;
        } else {
          const Edge& e = grid.edge(b.from, *direction_between(b.from, b.to));
          b.move_energy = move_energy(profile, e.slope_deg, e.distance_m);
          b.speed = limited_speed(profile, e.slope_deg, profile.v_plan, cfg.speed);
          const double transit = e.distance_m / b.speed;
          b.move_epochs = cfg.stretch_long_moves ? std::max(1, static_cast<int>(std::ceil(transit / cfg.epoch_s - 1e-9))) : 1;
        }
      }
      double motion = 0.0, sensing = 0.0;
      bool arrive = false;
      if (b.moving) {
        motion = b.move_energy / b.move_epochs;
        arrive = b.move_done + 1 == b.move_epochs;
        if (arrive && !explored_start[grid.index(b.to)])
          sensing = (profile.p_sen_W + comm.p_tx(grid, profile.p_tx0_W, b.to)) * cfg.epoch_s;
      }
      const double total = base + motion + sensing;
      if (b.battery - total < -1e-9) {
        // Out of energy: the robot halts where it is and stays there.
        b.component += b.battery;
        b.battery = 0.0;
        b.depleted = true;
        b.depleted_at = epoch;
        b.moving = false;
        b.to = b.from;
        record(r);
        continue;
      }
      b.battery = std::max(0.0, b.battery - total);
      b.motion_cum += motion;
      b.component += base + sensing;
      if (b.moving) {
        ++b.move_done;
        if (arrive) {
          b.moving = false;
          b.from = b.to;
          ++b.idx;
          arrivals.push_back(grid.index(b.to));
        }
      }
      record(r);
    }
    for (int k : arrivals) {
      if (!explored[k]) ++count;
      explored[k] = 1;
    }
    push_epoch();
  }

  for (int r = 0; r < R; ++r) {
    const auto& b = bots[r];
    const double init = cfg.battery_init_J.empty() ? profile.battery_capacity_J : cfg.battery_init_J[r];
    rep.energy_J.push_back(init - b.battery);
    rep.motion_energy_J.push_back(b.motion_cum);
    rep.component_energy_J.push_back(b.component);
    rep.depleted_at.push_back(b.depleted_at);
    rep.depleted_robots += b.depleted ? 1 : 0;
  }
  return rep;
}

inline MissionReport simulate(const MissionPlan& plan, const CellGrid& grid, const EnergyProfile& profile, const CommModel& comm,
                              SimConfig cfg) {
  cfg.err = plan.err;
  if (plan.epoch_s > 0.0) cfg.epoch_s = plan.epoch_s;
  return simulate(plan.paths, grid, profile, comm, cfg);
}

// Per-epoch CSV: epoch (1-based), explored_pct, then per robot a, b,
// battery_J, speed_mps, elevation_m, motion_energy_J.
inline void write_report_csv(const MissionReport& rep, std::ostream& out) {
  out << "epoch,explored_pct";
  for (std::size_t r = 0; r < rep.robots.size(); ++r) {
    const std::string p = "r" + std::to_string(r) + "_";
    out << ',' << p << "a," << p << "b," << p << "battery_J," << p << "speed_mps," << p << "elevation_m," << p
        << "motion_energy_J";
  }
  out << '\n';
  for (int e = 0; e < rep.epochs(); ++e) {
    out << e + 1 << ',' << format_double(rep.explored_pct[e]);
    for (const auto& steps : rep.robots) {
      const auto& s = steps[e];
      out << ',' << s.cell.a << ',' << s.cell.b << ',' << format_double(s.battery_J) << ',' << format_double(s.speed_mps) << ','
          << format_double(s.elevation_m) << ',' << format_double(s.motion_energy_J_cum);
    }
    out << '\n';
  }
}

}  // namespace sarplan
