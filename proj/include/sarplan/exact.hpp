#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <cstdint>
#include <cstring>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "sarplan/heuristic.hpp"
#include "sarplan/rp_model.hpp"
#include "sarplan/solution.hpp"

namespace sarplan {

struct ExactLimits {
  double time_limit_s = 600.0;
  std::uint64_t node_cap = 500'000'000;
  bool seed_with_heuristic = true;
  bool dominance = true;
  std::size_t dominance_cap = 3'000'000;
};

namespace detail {

// Depth-first branch and bound over joint moves, one epoch per level.
// The objective equals the first epoch at which coverage reaches the target,
// so the search looks for the earliest such epoch.
class ExactSearch {
 public:
  ExactSearch(const RpInstance& in, const ExactLimits& lim) : in_(in), lim_(lim) {
    R_ = in.fleet;
    T_ = in.horizon;
    S_ = in.cell_count();
    W_ = (S_ + 63) / 64;
    pos_.assign(T_, std::vector<int>(R_));
    bat_.assign(T_, std::vector<double>(R_));
    cov_.assign(T_, std::vector<std::uint64_t>(W_, 0));
    count_.assign(T_, 0);
    reserve_.resize(T_);
    for (int t = 0; t < T_; ++t) reserve_[t] = (T_ - 1 - t) * in.base_epoch_J;
    for (int k = 0; k < S_; ++k)
      if (in.grid.traversable(in.grid.cell(k))) traversable_.push_back(k);
  }

  PlanSolution run() {
    start_ = std::chrono::steady_clock::now();
    for (int r = 0; r < R_; ++r) {
      pos_[0][r] = in_.grid.index(in_.starts[r]);
      bat_[0][r] = in_.battery_init_J[r];
      set_bit(cov_[0], pos_[0][r]);
    }
    count_[0] = popcount(cov_[0]);

    for (int r = 0; r < R_; ++r)
      if (bat_[0][r] < reserve_[0] - 1e-9)
        return finish(no_plan(SolveStatus::Infeasible,
                              "battery bound: robot " + std::to_string(r) + " holds " + format_double(bat_[0][r]) +
                                  " J but staying powered for the horizon needs " + format_double(reserve_[0]) + " J"));
    if (count_[0] >= in_.coverage_target) {
      best_ = 0;
      best_paths_.assign(1, pos_[0]);
      return finish(build(SolveStatus::Optimal));
    }
    if (T_ < 2) return finish(no_plan(SolveStatus::Infeasible, "coverage bound: horizon of one epoch cannot add cells"));
    root_lb_ = lower_bound(0);
    if (root_lb_ > T_ - 1)
      return finish(no_plan(SolveStatus::Infeasible, "coverage bound: the target of " + std::to_string(in_.coverage_target) +
                                                         " cells is unreachable within " + std::to_string(T_) + " epochs"));

    best_ = T_;  // sentinel: a solution must complete by epoch T-1
    if (lim_.seed_with_heuristic) {
      auto h = solve_heuristic(in_);
      if (h.status == SolveStatus::Feasible) {
        best_ = h.objective;
        heuristic_ = std::move(h);
        have_heuristic_ = true;
      }
    }
    if (best_ > root_lb_) dfs(0);

    if (aborted_) {
      PlanSolution s = best_ < T_ ? build(SolveStatus::Timeout)
                                  : no_plan(SolveStatus::Timeout, abort_reason_ + " before any feasible plan was found");
      if (s.reason.empty()) s.reason = abort_reason_;
      s.lower_bound = root_lb_;
      return finish(std::move(s));
    }
    if (best_ < T_) return finish(build(SolveStatus::Optimal));
    return finish(no_plan(SolveStatus::Infeasible,
                          "search exhausted: no joint plan reaches " + std::to_string(in_.coverage_target) +
                              " explored cells within the horizon and battery limits"));
  }

 private:
  static void set_bit(std::vector<std::uint64_t>& v, int k) { v[k >> 6] |= std::uint64_t{1} << (k & 63); }
  static bool get_bit(const std::vector<std::uint64_t>& v, int k) { return (v[k >> 6] >> (k & 63)) & 1U; }
  static int popcount(const std::vector<std::uint64_t>& v) {
    int n = 0;
    for (auto w : v) n += std::popcount(w);
    return n;
  }

  // Earliest epoch at which the target can be met from the state at epoch t:
  // within k more epochs robot r can add at most min(k, unexplored cells within
  // Chebyshev distance k of it).
  int lower_bound(int t) {
    const int need = in_.coverage_target - count_[t];
    if (need <= 0) return t;
    const int maxd = std::max(in_.grid.A(), in_.grid.B());
    hist_.assign(static_cast<std::size_t>(R_ + 1) * (maxd + 1), 0);
    auto h = [&](int r, int dist) -> int& { return hist_[static_cast<std::size_t>(r) * (maxd + 1) + dist]; };
    for (int k : traversable_) {
      if (get_bit(cov_[t], k)) continue;
      const Cell c = in_.grid.cell(k);
      int best = maxd;
      for (int r = 0; r < R_; ++r) {
        const Cell p = in_.grid.cell(pos_[t][r]);
        const int dist = std::max(std::abs(c.a - p.a), std::abs(c.b - p.b));
        ++h(r, dist);
        best = std::min(best, dist);
      }
      ++h(R_, best);
    }
    const int limit = T_ - 1 - t;
    std::vector<int> cum(static_cast<std::size_t>(R_ + 1), 0);
    for (int k = 1; k <= limit; ++k) {
      const int dist = std::min(k, maxd);
      int per_robot = 0;
      for (int r = 0; r <= R_; ++r) {
        if (k <= maxd) cum[r] += h(r, dist);
        if (r < R_) per_robot += std::min(k, cum[r]);
      }
      if (std::min(per_robot, cum[R_]) >= need) return t + k;
    }
    return std::numeric_limits<int>::max();
  }

  bool out_of_budget() {
    if (++nodes_ > lim_.node_cap) {
      aborted_ = true;
      abort_reason_ = "node cap of " + std::to_string(lim_.node_cap) + " reached";
      return true;
    }
    if ((nodes_ & 1023U) == 0) {
      const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (el > lim_.time_limit_s) {
        aborted_ = true;
        abort_reason_ = "time limit of " + format_double(lim_.time_limit_s) + " s reached";
        return true;
      }
    }
    return false;
  }

  // Robots share one profile, so states that differ only by robot labels
  // are equivalent; the key sorts (position, battery) pairs.
  bool dominated(int t) {
    if (!lim_.dominance) return false;
    order_.resize(R_);
    for (int r = 0; r < R_; ++r) order_[r] = r;
    std::sort(order_.begin(), order_.end(), [&](int x, int y) {
      if (pos_[t][x] != pos_[t][y]) return pos_[t][x] < pos_[t][y];
      return bat_[t][x] < bat_[t][y];
    });
    key_.clear();
    auto put = [&](const void* p, std::size_t n) { key_.append(static_cast<const char*>(p), n); };
    put(&t, sizeof t);
    for (int r : order_) put(&pos_[t][r], sizeof(int));
    put(cov_[t].data(), cov_[t].size() * sizeof(std::uint64_t));
    batt_.resize(R_);
    for (int i = 0; i < R_; ++i) batt_[i] = bat_[t][order_[i]];

    auto it = seen_.find(key_);
    if (it != seen_.end()) {
      for (const auto& stored : it->second) {
        bool dom = true;
        for (int i = 0; i < R_ && dom; ++i) dom = stored[i] >= batt_[i] - 1e-9;
        if (dom) return true;
      }
      auto& list = it->second;
      std::erase_if(list, [&](const std::vector<double>& stored) {
        for (int i = 0; i < R_; ++i)
          if (batt_[i] < stored[i] - 1e-9) return false;
        return true;
      });
      list.push_back(batt_);
      return false;
    }
    if (seen_.size() < lim_.dominance_cap) seen_.emplace(key_, std::vector<std::vector<double>>{batt_});
    return false;
  }

  void dfs(int t) {
    if (out_of_budget()) return;
    joint(t, 0, false);
  }

  void joint(int t, int r, bool moved) {
    if (aborted_ || solved_) return;
    if (r == R_) {
      // An epoch in which nobody moves can be deleted from any plan, so skip it.
      if (!moved) return;
      expand(t + 1);
      return;
    }
    const int u = pos_[t][r];
    const double b = bat_[t][r] - in_.base_epoch_J;
    const double floor = reserve_[t + 1] - 1e-9;
    if (b >= floor) {
      pos_[t + 1][r] = u;
      bat_[t + 1][r] = b;
      joint(t, r + 1, moved);
    }
    for (int j : in_.out_edges[u]) {
      if (aborted_ || solved_) return;
      const auto& e = in_.edges[j];
      const double nb = b - e.energy_J - (get_bit(cov_[t], e.to) ? 0.0 : in_.first_visit_J[e.to]);
      if (nb < floor) continue;
      pos_[t + 1][r] = e.to;
      bat_[t + 1][r] = nb;
      joint(t, r + 1, true);
    }
  }

  void expand(int t) {
    cov_[t] = cov_[t - 1];
    for (int r = 0; r < R_; ++r) set_bit(cov_[t], pos_[t][r]);
    count_[t] = popcount(cov_[t]);
    if (count_[t] >= in_.coverage_target) {
      if (t < best_) {
        best_ = t;
        best_paths_.assign(pos_.begin(), pos_.begin() + t + 1);
        have_heuristic_ = false;
        if (best_ <= root_lb_) solved_ = true;
      }
      return;
    }
    if (t >= T_ - 1 || t + 1 >= best_) return;
    if (lower_bound(t) >= best_) return;
    if (dominated(t)) return;
    dfs(t);
  }

  PlanSolution build(SolveStatus status) {
    if (have_heuristic_) {
      PlanSolution s = heuristic_;
      s.status = status;
      s.reason.clear();
      return s;
    }
    std::vector<std::vector<Cell>> paths(R_, std::vector<Cell>(T_));
    const int last = static_cast<int>(best_paths_.size()) - 1;
    for (int r = 0; r < R_; ++r)
      for (int t = 0; t < T_; ++t) paths[r][t] = in_.grid.cell(best_paths_[std::min(t, last)][r]);
    return materialize(in_, std::move(paths), status);
  }

  PlanSolution finish(PlanSolution s) {
    s.nodes = nodes_;
    s.solver = "exact";
    s.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (s.status == SolveStatus::Optimal) s.lower_bound = s.objective;
    return s;
  }

  const RpInstance& in_;
  ExactLimits lim_;
  int R_ = 0, T_ = 0, S_ = 0, W_ = 0;
  std::vector<std::vector<int>> pos_;
  std::vector<std::vector<double>> bat_;
  std::vector<std::vector<std::uint64_t>> cov_;
  std::vector<int> count_;
  std::vector<double> reserve_;
  std::vector<int> traversable_;
  std::vector<int> hist_;

  int best_ = 0;
  int root_lb_ = 0;
  std::vector<std::vector<int>> best_paths_;
  PlanSolution heuristic_;
  bool have_heuristic_ = false;

  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  bool solved_ = false;
  std::string abort_reason_;
  std::chrono::steady_clock::time_point start_;

  std::unordered_map<std::string, std::vector<std::vector<double>>> seen_;
  std::string key_;
  std::vector<int> order_;
  std::vector<double> batt_;
};

}  // namespace detail

// Proven-optimal plan (fewest epochs before the coverage target is met), or
// a certificate of infeasibility. Limits turn the result into a timeout that
// carries the best plan found and the root lower bound.
inline PlanSolution solve_exact(const RpInstance& in, const ExactLimits& lim = {}) {
  return detail::ExactSearch(in, lim).run();
}

}  // namespace sarplan
