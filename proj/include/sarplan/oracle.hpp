#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sarplan/error.hpp"
#include "sarplan/rp_model.hpp"
#include "sarplan/solution.hpp"

namespace sarplan {

inline constexpr double kOracleSpaceLimit = 1e7;

// 9^(R (T-1)): every robot picks one of nine moves at every transition.
inline double oracle_space_size(int fleet, int horizon) {
  return std::pow(9.0, static_cast<double>(fleet) * std::max(0, horizon - 1));
}

namespace detail {

// Plain enumeration of every joint move sequence; no bounds, no pruning.
class Enumerator {
 public:
  explicit Enumerator(const RpInstance& in) : in_(in), R_(in.fleet), T_(in.horizon) {
    paths_.assign(R_, std::vector<Cell>(T_));
    bat_.assign(R_, std::vector<double>(T_));
    seen_.assign(T_, std::vector<int>(static_cast<std::size_t>(in.cell_count()), 0));
  }

  PlanSolution run() {
    for (int r = 0; r < R_; ++r) {
      paths_[r][0] = in_.starts[r];
      bat_[r][0] = in_.battery_init_J[r];
      seen_[0][in_.grid.index(in_.starts[r])] = 1;
    }
    step(0, 0);
    if (best_ < 0) return no_plan(SolveStatus::Infeasible, "no move sequence meets the coverage target with non-negative batteries");
    return materialize(in_, best_paths_, SolveStatus::Optimal);
  }

 private:
  int explored_count(int t) const {
    int n = 0;
    for (int v : seen_[t]) n += v ? 1 : 0;
    return n;
  }

  // Chooses robot r's move from epoch t to t+1.
  void step(int t, int r) {
    if (t == T_ - 1) {
      leaf();
      return;
    }
    if (r == R_) {
      seen_[t + 1] = seen_[t];
      for (int q = 0; q < R_; ++q) seen_[t + 1][in_.grid.index(paths_[q][t + 1])] = 1;
      step(t + 1, 0);
      return;
    }
    const Cell u = paths_[r][t];
    for (auto d : kDirections) {
      const auto& mc = in_.move_costs.at(u, d);
      if (!mc.valid || !mc.fits_epoch) continue;
      const auto o = offset(d);
      const Cell v{u.a + o.da, u.b + o.db};
      const int kv = in_.grid.index(v);
      const double fresh = seen_[t][kv] ? 0.0 : in_.first_visit_J[kv];
      paths_[r][t + 1] = v;
      bat_[r][t + 1] = bat_[r][t] - in_.base_epoch_J - mc.energy_J - fresh;
      step(t, r + 1);
    }
  }

  void leaf() {
    for (const auto& b : bat_)
      for (double v : b)
        if (v < 0.0) return;
    if (explored_count(T_ - 1) < in_.coverage_target) return;
    int obj = 0;
    for (int t = 0; t < T_; ++t) obj += explored_count(t) < in_.coverage_target ? 1 : 0;
    if (best_ < 0 || obj < best_) {
      best_ = obj;
      best_paths_ = paths_;
    }
  }

  const RpInstance& in_;
  int R_, T_;
  std::vector<std::vector<Cell>> paths_;
  std::vector<std::vector<double>> bat_;
  std::vector<std::vector<int>> seen_;
  int best_ = -1;
  std::vector<std::vector<Cell>> best_paths_;
};

}  // namespace detail

// Reference answer by exhaustive enumeration. Refuses instances whose move
// space exceeds kOracleSpaceLimit.
inline PlanSolution brute_force_oracle(const RpInstance& in) {
  const double space = oracle_space_size(in.fleet, in.horizon);
  if (space > kOracleSpaceLimit)
    throw ConfigError("oracle refuses instance: move space " + format_double(space) + " exceeds " +
                      format_double(kOracleSpaceLimit));
  PlanSolution s = detail::Enumerator(in).run();
  s.solver = "oracle";
  return s;
}

}  // namespace sarplan
