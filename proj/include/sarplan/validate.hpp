#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sarplan/rp_model.hpp"
#include "sarplan/solution.hpp"

namespace sarplan {

enum class ConstraintFamily {
  Shape,
  Start,
  OnePlace,
  Adjacency,
  Exploration,
  Activation,
  FinalCoverage,
  Battery,
  Bounds,
  Objective,
};

inline const char* family_name(ConstraintFamily f) {
  switch (f) {
    case ConstraintFamily::Shape: return "shape";
    case ConstraintFamily::Start: return "start";
    case ConstraintFamily::OnePlace: return "one-place";
    case ConstraintFamily::Adjacency: return "adjacency";
    case ConstraintFamily::Exploration: return "exploration";
    case ConstraintFamily::Activation: return "activation";
    case ConstraintFamily::FinalCoverage: return "final-coverage";
    case ConstraintFamily::Battery: return "battery";
    case ConstraintFamily::Bounds: return "bounds";
    case ConstraintFamily::Objective: return "objective";
  }
  return "?";
}

struct Violation {
  ConstraintFamily family;
  int robot = -1;
  int epoch = -1;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ConstraintFamily f) const {
    return std::any_of(violations.begin(), violations.end(), [f](const Violation& v) { return v.family == f; });
  }
  std::string summary() const {
    if (ok()) return "ok";
    std::string s;
    for (const auto& v : violations) {
      if (!s.empty()) s += "; ";
      s += std::string(family_name(v.family)) + ": " + v.message;
    }
    return s;
  }
};

// Checks a solution against the original (non-linearized) constraints by
// recomputing each family from the stored paths, exploration map, batteries
// and d. Energy comparisons use `tol_J`.
inline ValidationReport validate_solution(const RpInstance& in, const PlanSolution& s, double tol_J = 1e-6) {
  ValidationReport rep;
  auto fail = [&](ConstraintFamily f, int r, int t, std::string msg) { rep.violations.push_back({f, r, t, std::move(msg)}); };
  const int R = in.fleet, T = in.horizon, S = in.cell_count();
  const auto& g = in.grid;

  bool shape_ok = static_cast<int>(s.paths.size()) == R && static_cast<int>(s.explored.size()) == T &&
                  static_cast<int>(s.battery_J.size()) == R && static_cast<int>(s.d.size()) == T;
  for (const auto& p : s.paths) shape_ok = shape_ok && static_cast<int>(p.size()) == T;
  for (const auto& e : s.explored) shape_ok = shape_ok && static_cast<int>(e.size()) == S;
  for (const auto& b : s.battery_J) shape_ok = shape_ok && static_cast<int>(b.size()) == T;
  if (!shape_ok) {
    fail(ConstraintFamily::Shape, -1, -1, "solution dimensions do not match R=" + std::to_string(R) + ", T=" + std::to_string(T));
    return rep;
  }

  for (int r = 0; r < R; ++r) {
    for (int t = 0; t < T; ++t)
      if (!g.contains(s.paths[r][t]))
        fail(ConstraintFamily::OnePlace, r, t, "robot " + std::to_string(r) + " is off the grid at epoch " + std::to_string(t));
    if (s.paths[r][0] != in.starts[r]) fail(ConstraintFamily::Start, r, 0, "robot " + std::to_string(r) + " is not at its start cell");
  }
  if (!rep.ok()) return rep;

  // Moves: stay on a traversable cell, or an offered edge.
  for (int r = 0; r < R; ++r)
    for (int t = 0; t + 1 < T; ++t) {
      const Cell u = s.paths[r][t], v = s.paths[r][t + 1];
      bool ok = false;
      if (u == v) {
        ok = g.traversable(u);
      } else {
        for (int j : in.out_edges[g.index(u)]) ok = ok || in.edges[j].to == g.index(v);
      }
      if (!ok)
        fail(ConstraintFamily::Adjacency, r, t + 1,
             "robot " + std::to_string(r) + " moves (" + std::to_string(u.a) + "," + std::to_string(u.b) + ")->(" +
                 std::to_string(v.a) + "," + std::to_string(v.b) + ") at epoch " + std::to_string(t + 1));
    }

  // Exploration bookkeeping.
  for (int t = 0; t < T; ++t)
    for (int k = 0; k < S; ++k) {
      const int e = s.explored[t][k];
      const int prev = t > 0 ? s.explored[t - 1][k] : 0;
      int present = 0;
      for (int r = 0; r < R; ++r) present += g.index(s.paths[r][t]) == k ? 1 : 0;
      const Cell c = g.cell(k);
      const std::string where = "cell (" + std::to_string(c.a) + "," + std::to_string(c.b) + ") epoch " + std::to_string(t);
      if (e != 0 && e != 1) fail(ConstraintFamily::Bounds, -1, t, where + " has non-binary explored flag");
      if (e > prev + present) fail(ConstraintFamily::Exploration, -1, t, where + " marked explored without a visit");
      if (e < prev) fail(ConstraintFamily::Exploration, -1, t, where + " un-explored");
      if (R * e < present) fail(ConstraintFamily::Exploration, -1, t, where + " visited but not marked explored");
    }

  int sum_d = 0;
  for (int t = 0; t < T; ++t) {
    if (s.d[t] > 1) fail(ConstraintFamily::Bounds, -1, t, "d is not binary at epoch " + std::to_string(t));
    sum_d += s.d[t];
    const int count = s.explored_count(t);
    if (count < in.coverage_target * (1 - static_cast<int>(s.d[t])))
      fail(ConstraintFamily::Activation, -1, t,
           "d=0 at epoch " + std::to_string(t) + " with " + std::to_string(count) + " < " + std::to_string(in.coverage_target) +
               " cells explored");
  }
  if (s.explored_count(T - 1) < in.coverage_target)
    fail(ConstraintFamily::FinalCoverage, -1, T - 1,
         std::to_string(s.explored_count(T - 1)) + " cells explored at the last epoch, target " + std::to_string(in.coverage_target));
  if (sum_d != s.objective)
    fail(ConstraintFamily::Objective, -1, -1, "objective " + std::to_string(s.objective) + " differs from sum of d " + std::to_string(sum_d));

  for (int r = 0; r < R; ++r) {
    if (std::abs(s.battery_J[r][0] - in.battery_init_J[r]) > tol_J)
      fail(ConstraintFamily::Battery, r, 0, "robot " + std::to_string(r) + " initial battery differs from the configured value");
    for (int t = 0; t < T; ++t) {
      const double b = s.battery_J[r][t];
      if (b < -tol_J || b > in.battery_max_J + tol_J)
        fail(ConstraintFamily::Bounds, r, t,
             "robot " + std::to_string(r) + " battery " + format_double(b) + " J outside [0, B_max] at epoch " + std::to_string(t));
    }
    for (int t = 0; t + 1 < T; ++t) {
      const Cell u = s.paths[r][t], v = s.paths[r][t + 1];
      const auto dir = direction_between(u, v);
      if (!dir || !in.move_costs.at(u, *dir).valid) continue;  // already reported as adjacency
      const int kv = g.index(v);
      const double expected = s.battery_J[r][t] - in.base_epoch_J - in.move_costs.at(u, *dir).energy_J -
                              (1 - s.explored[t][kv]) * in.first_visit_J[kv];
      const double scale = std::max(1.0, std::abs(expected));
      if (std::abs(s.battery_J[r][t + 1] - expected) > tol_J * scale)
        fail(ConstraintFamily::Battery, r, t + 1,
             "robot " + std::to_string(r) + " battery at epoch " + std::to_string(t + 1) + " is " +
                 format_double(s.battery_J[r][t + 1]) + " J, recursion gives " + format_double(expected) + " J");
    }
  }
  return rep;
}

// Maps a solution onto the linear model's variable vector (products computed
// from the binary values), for row-level checks.
inline std::vector<double> to_assignment(const RpInstance& in, const PlanSolution& s) {
  const auto& vx = in.vars;
  const auto& g = in.grid;
  const int R = in.fleet, T = in.horizon, S = in.cell_count();
  std::vector<double> x(static_cast<std::size_t>(vx.total()), 0.0);
  for (int t = 0; t < T; ++t) {
    x[vx.d(t)] = s.d[t];
    for (int k = 0; k < S; ++k) x[vx.e(t, k)] = s.explored[t][k];
  }
  for (int r = 0; r < R; ++r)
    for (int t = 0; t < T; ++t) {
      x[vx.l(r, t, g.index(s.paths[r][t]))] = 1.0;
      x[vx.b(r, t)] = s.battery_J[r][t];
    }
  for (int r = 0; r < R; ++r)
    for (int t = 0; t + 1 < T; ++t) {
      for (std::size_t j = 0; j < in.edges.size(); ++j)
        x[vx.y(r, t, static_cast<int>(j))] = x[vx.l(r, t, in.edges[j].from)] * x[vx.l(r, t + 1, in.edges[j].to)];
      for (int k = 0; k < S; ++k) x[vx.z(r, t, k)] = (1.0 - x[vx.e(t, k)]) * x[vx.l(r, t + 1, k)];
    }
  return x;
}

}  // namespace sarplan
