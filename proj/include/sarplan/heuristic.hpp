#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <vector>

#include "sarplan/rp_model.hpp"
#include "sarplan/solution.hpp"

namespace sarplan {

struct HeuristicOptions {
  std::uint64_t seed = 0;
  // Extra randomized passes after the deterministic one; the best plan wins.
  int restarts = 0;
  // Battery kept untouched on top of what staying powered until the horizon needs.
  double reserve_J = 0.0;
  // Randomized passes scale candidate costs by a factor in [1, 1 + noise].
  double noise = 0.5;
};

namespace detail {

struct GreedyRun {
  std::vector<std::vector<Cell>> paths;
  bool battery_ok = true;
  int completion = -1;
};

// First step of a shortest (hop count) route from `from` to the nearest cell
// satisfying `is_target`, or -1 when none is reachable. Returns an edge index.
template <class Pred>
int first_step_towards(const RpInstance& in, int from, Pred is_target) {
  const int S = in.cell_count();
  std::vector<int> via(static_cast<std::size_t>(S), -2);  // first edge used to reach the cell
  std::queue<int> q;
  via[from] = -1;
  q.push(from);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int j : in.out_edges[u]) {
      const int v = in.edges[j].to;
      if (via[v] != -2) continue;
      via[v] = u == from ? j : via[u];
      if (is_target(v)) return via[v];
      q.push(v);
    }
  }
  return -1;
}

inline GreedyRun greedy_pass(const RpInstance& in, const HeuristicOptions& opt, std::mt19937_64* rng) {
  const int R = in.fleet, T = in.horizon, S = in.cell_count();
  const double base = in.base_epoch_J;
  std::uniform_real_distribution<double> jitter(1.0, 1.0 + opt.noise);

  GreedyRun run;
  run.paths.assign(R, std::vector<Cell>(T));
  std::vector<int> pos(R);
  std::vector<double> bat = in.battery_init_J;
  std::vector<std::uint8_t> covered(S, 0);
  int count = 0;
  for (int r = 0; r < R; ++r) {
    pos[r] = in.grid.index(in.starts[r]);
    run.paths[r][0] = in.starts[r];
    if (!covered[pos[r]]) ++count;
    covered[pos[r]] = 1;
  }
  if (count >= in.coverage_target) run.completion = 0;

  for (int t = 0; t + 1 < T; ++t) {
    std::vector<std::uint8_t> claimed(S, 0);
    int pending = count;
    const double need_after = opt.reserve_J + (T - 2 - t) * base;
    for (int r = 0; r < R; ++r) {
      int next = pos[r];
      double cost = 0.0;
      auto affordable = [&](double c) { return bat[r] - base - c >= need_after - 1e-9; };
      if (pending < in.coverage_target) {
        double best = std::numeric_limits<double>::infinity();
        for (int j : in.out_edges[pos[r]]) {
          const int v = in.edges[j].to;
          if (covered[v] || claimed[v]) continue;
          const double c = in.edges[j].energy_J + in.first_visit_J[v];
          const double score = rng ? c * jitter(*rng) : c;
          if (score < best && affordable(c)) {
            best = score;
            next = v;
            cost = c;
          }
        }
        if (next == pos[r]) {
          const int j = first_step_towards(in, pos[r], [&](int v) { return !covered[v] && !claimed[v]; });
          if (j >= 0) {
            const int v = in.edges[j].to;
            const double c = in.edges[j].energy_J + (covered[v] ? 0.0 : in.first_visit_J[v]);
            if (affordable(c)) {
              next = v;
              cost = c;
            }
          }
        }
      }
      if (next != pos[r] && !covered[next] && !claimed[next]) {
        claimed[next] = 1;
        ++pending;
      }
      bat[r] -= base + cost;
      if (bat[r] < -1e-9) run.battery_ok = false;
      pos[r] = next;
      run.paths[r][t + 1] = in.grid.cell(next);
    }
    for (int r = 0; r < R; ++r) {
      if (!covered[pos[r]]) ++count;
      covered[pos[r]] = 1;
    }
    if (run.completion < 0 && count >= in.coverage_target) run.completion = t + 1;
  }
  return run;
}

}  // namespace detail

// Greedy frontier exploration: each epoch every robot takes the cheapest
// adjacent unexplored cell not already claimed this epoch, otherwise steps
// toward the nearest unexplored cell. A move is taken only if the robot can
// still stay powered until the horizon afterwards (plus reserve_J).
inline PlanSolution solve_heuristic(const RpInstance& in, const HeuristicOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  auto better = [](const detail::GreedyRun& a, const detail::GreedyRun& b) {
    const bool fa = a.battery_ok && a.completion >= 0, fb = b.battery_ok && b.completion >= 0;
    if (fa != fb) return fa;
    return fa && a.completion < b.completion;
  };
  detail::GreedyRun best = detail::greedy_pass(in, opt, nullptr);
  std::mt19937_64 rng(opt.seed);
  for (int i = 0; i < opt.restarts; ++i) {
    auto run = detail::greedy_pass(in, opt, &rng);
    if (better(run, best)) best = std::move(run);
  }
  PlanSolution s = materialize(in, std::move(best.paths), SolveStatus::Feasible);
  bool battery_ok = true;
  for (const auto& b : s.battery_J)
    for (double v : b) battery_ok = battery_ok && v >= -1e-9;
  if (!battery_ok) {
    s.status = SolveStatus::Infeasible;
    s.reason = "heuristic plan exhausts a battery before the horizon";
  } else if (s.final_explored() < in.coverage_target) {
    s.status = SolveStatus::Infeasible;
    s.reason = "heuristic plan explores " + std::to_string(s.final_explored()) + " of the " +
               std::to_string(in.coverage_target) + " required cells";
  }
  s.solver = "heuristic";
  s.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

}  // namespace sarplan
