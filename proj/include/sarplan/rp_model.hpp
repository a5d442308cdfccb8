#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sarplan/energy.hpp"
#include "sarplan/error.hpp"
#include "sarplan/terrain.hpp"
#include "sarplan/util.hpp"

namespace sarplan {

// Number of cells that must be explored: ceil(kappa * cells), with a small
// tolerance so that e.g. 0.7 * 100 yields 70 and not 71.
inline int coverage_target(double kappa, int cell_count) {
  return static_cast<int>(std::ceil(kappa * cell_count - 1e-9));
}

// Robots fill the first grid line (0,0), (0,1), ... and wrap to the next line,
// skipping cells that cannot be entered.
inline std::vector<Cell> default_start_cells(const CellGrid& grid, int fleet) {
  std::vector<Cell> starts;
  for (int a = 0; a < grid.A() && static_cast<int>(starts.size()) < fleet; ++a)
    for (int b = 0; b < grid.B() && static_cast<int>(starts.size()) < fleet; ++b)
      if (grid.traversable({a, b})) starts.push_back({a, b});
  if (static_cast<int>(starts.size()) < fleet)
    throw ConfigError("grid has " + std::to_string(starts.size()) + " traversable cells, cannot place " + std::to_string(fleet) +
                      " robots");
  return starts;
}

struct RpInputs {
  CellGrid grid;
  EnergyProfile profile;
  int fleet = 1;
  double kappa = 1.0;
  int horizon = 1;
  double epoch_s = 10.0;
  MoveCostTable move_costs;
  CommModel comm;
  std::vector<Cell> starts;
  // Empty means every robot starts with a full battery.
  std::vector<double> battery_init_J;
};

struct RpOptions {
  // Adds d[t+1] <= d[t]. Valid because coverage never decreases.
  bool canonicalize = true;
  // Builds the explicit row model. Solvers only need the instance data.
  bool materialize = true;
  // Throws InfeasibleError when the cheap coverage bound already fails.
  bool reject_infeasible = true;
};

enum class VarType { Binary, Continuous };

struct Variable {
  std::string name;
  VarType type = VarType::Binary;
  double lb = 0.0;
  double ub = 1.0;
};

enum class Sense { LessEqual, GreaterEqual, Equal };

enum class RowFamily {
  FinalCoverage,
  OnePlace,
  Adjacency,
  ExploreUpper,
  ExploreMonotone,
  ExploreLower,
  Activation,
  Battery,
  MoveProduct,
  SenseProduct,
  Canonical,
  StartFix,
};

inline const char* row_family_name(RowFamily f) {
  switch (f) {
    case RowFamily::FinalCoverage: return "final-coverage";
    case RowFamily::OnePlace: return "one-place";
    case RowFamily::Adjacency: return "adjacency";
    case RowFamily::ExploreUpper: return "explore-upper";
    case RowFamily::ExploreMonotone: return "explore-monotone";
    case RowFamily::ExploreLower: return "explore-lower";
    case RowFamily::Activation: return "activation";
    case RowFamily::Battery: return "battery";
    case RowFamily::MoveProduct: return "move-product";
    case RowFamily::SenseProduct: return "sense-product";
    case RowFamily::Canonical: return "canonical";
    case RowFamily::StartFix: return "start-fix";
  }
  return "?";
}

struct Term {
  int var;
  double coef;
};

struct Row {
  std::string name;
  RowFamily family;
  std::vector<Term> terms;
  Sense sense;
  double rhs;

  double activity(std::span<const double> x) const {
    double s = 0.0;
    for (const auto& t : terms) s += t.coef * x[t.var];
    return s;
  }
  bool satisfied(std::span<const double> x, double tol) const {
    const double lhs = activity(x);
    switch (sense) {
      case Sense::LessEqual: return lhs <= rhs + tol;
      case Sense::GreaterEqual: return lhs >= rhs - tol;
      case Sense::Equal: return std::abs(lhs - rhs) <= tol;
    }
    return false;
  }
};

struct LinearModel {
  std::vector<Variable> variables;
  std::vector<Term> objective;
  std::vector<Row> rows;

  std::size_t count(VarType type) const {
    std::size_t n = 0;
    for (const auto& v : variables) n += v.type == type ? 1 : 0;
    return n;
  }
  std::size_t count(RowFamily family) const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.family == family ? 1 : 0;
    return n;
  }
  double objective_value(std::span<const double> x) const {
    double s = 0.0;
    for (const auto& t : objective) s += t.coef * x[t.var];
    return s;
  }
  // Bounds are checked separately by out_of_bounds().
  std::vector<const Row*> violated_rows(std::span<const double> x, double tol = 1e-6) const {
    std::vector<const Row*> out;
    for (const auto& r : rows)
      if (!r.satisfied(x, tol)) out.push_back(&r);
    return out;
  }
  std::vector<int> out_of_bounds(std::span<const double> x, double tol = 1e-6) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < variables.size(); ++i) {
      const auto& v = variables[i];
      bool bad = x[i] < v.lb - tol || x[i] > v.ub + tol;
      if (v.type == VarType::Binary && std::abs(x[i] - std::round(x[i])) > tol) bad = true;
      if (bad) out.push_back(static_cast<int>(i));
    }
    return out;
  }
};

// Directed neighbor edge (cell index k, direction d) with its move energy.
struct MoveEdge {
  int from;
  Direction dir;
  int to;
  double energy_J;
};

// Index arithmetic for every variable family. Epoch indices are 0-based.
class VariableIndex {
 public:
  VariableIndex() = default;
  VariableIndex(int fleet, int horizon, int cells, std::size_t edges)
      : R_(fleet), T_(horizon), S_(cells), E_(static_cast<int>(edges)) {
    const int Tm = std::max(0, T_ - 1);
    e_base_ = T_;
    l_base_ = e_base_ + T_ * S_;
    y_base_ = l_base_ + R_ * T_ * S_;
    z_base_ = y_base_ + R_ * Tm * E_;
    b_base_ = z_base_ + R_ * Tm * S_;
    total_ = b_base_ + R_ * T_;
  }

  int d(int t) const { return t; }
  int e(int t, int k) const { return e_base_ + t * S_ + k; }
  int l(int r, int t, int k) const { return l_base_ + (r * T_ + t) * S_ + k; }
  int y(int r, int t, int edge) const { return y_base_ + (r * (T_ - 1) + t) * E_ + edge; }
  int z(int r, int t, int k) const { return z_base_ + (r * (T_ - 1) + t) * S_ + k; }
  int b(int r, int t) const { return b_base_ + r * T_ + t; }

  int total() const { return total_; }
  int binary_count() const { return b_base_; }
  int d_count() const { return T_; }
  int e_count() const { return T_ * S_; }
  int l_count() const { return R_ * T_ * S_; }
  int y_count() const { return z_base_ - y_base_; }
  int z_count() const { return b_base_ - z_base_; }
  int b_count() const { return R_ * T_; }

 private:
  int R_ = 0, T_ = 0, S_ = 0, E_ = 0;
  int e_base_ = 0, l_base_ = 0, y_base_ = 0, z_base_ = 0, b_base_ = 0, total_ = 0;
};

struct RpInstance {
  CellGrid grid;
  EnergyProfile profile;
  int fleet = 1;
  double kappa = 1.0;
  int horizon = 1;
  double epoch_s = 10.0;
  int coverage_target = 0;
  MoveCostTable move_costs;
  CommModel comm;
  std::vector<Cell> starts;
  std::vector<double> battery_init_J;
  double battery_max_J = 0.0;

  // Charged to every robot every epoch: receive plus idle drain.
  double base_epoch_J = 0.0;
  // Charged on entering a cell that was unexplored at the previous epoch:
  // sensing plus transmit from that cell.
  std::vector<double> first_visit_J;

  std::vector<MoveEdge> edges;
  // Indices into `edges` leaving each cell, in direction order.
  std::vector<std::vector<int>> out_edges;
  VariableIndex vars;
  std::optional<LinearModel> model;
  bool canonicalized = true;

  int cell_count() const { return grid.cell_count(); }
  double edge_energy(int from, Direction d) const { return move_costs.at(from, d).energy_J; }
};

namespace detail {

inline std::string cell_suffix(const CellGrid& g, int k) {
  const Cell c = g.cell(k);
  return std::to_string(c.a) + "_" + std::to_string(c.b);
}

inline LinearModel build_linear_model(const RpInstance& in, bool canonicalize) {
  const auto& g = in.grid;
  const auto& vx = in.vars;
  const int R = in.fleet, T = in.horizon, S = in.cell_count();
  LinearModel m;
  m.variables.resize(static_cast<std::size_t>(vx.total()));

  for (int t = 0; t < T; ++t) m.variables[vx.d(t)] = {"d_" + std::to_string(t), VarType::Binary, 0, 1};
  for (int t = 0; t < T; ++t)
    for (int k = 0; k < S; ++k)
      m.variables[vx.e(t, k)] = {"e_" + std::to_string(t) + "_" + cell_suffix(g, k), VarType::Binary, 0, 1};
  for (int r = 0; r < R; ++r)
    for (int t = 0; t < T; ++t)
      for (int k = 0; k < S; ++k)
        m.variables[vx.l(r, t, k)] = {"l_" + std::to_string(r) + "_" + std::to_string(t) + "_" + cell_suffix(g, k),
                                      VarType::Binary, 0, 1};
  for (int r = 0; r < R; ++r)
    for (int t = 0; t + 1 < T; ++t) {
      for (std::size_t j = 0; j < in.edges.size(); ++j) {
        const auto& ed = in.edges[j];
        m.variables[vx.y(r, t, static_cast<int>(j))] = {"y_" + std::to_string(r) + "_" + std::to_string(t) + "_" +
                                                            cell_suffix(g, ed.from) + "_" + cell_suffix(g, ed.to),
                                                        VarType::Binary, 0, 1};
      }
      for (int k = 0; k < S; ++k)
        m.variables[vx.z(r, t, k)] = {"z_" + std::to_string(r) + "_" + std::to_string(t) + "_" + cell_suffix(g, k),
                                      VarType::Binary, 0, 1};
    }
  for (int r = 0; r < R; ++r)
    for (int t = 0; t < T; ++t)
      m.variables[vx.b(r, t)] = {"b_" + std::to_string(r) + "_" + std::to_string(t), VarType::Continuous, 0.0,
                                 in.battery_max_J};

  for (int t = 0; t < T; ++t) m.objective.push_back({vx.d(t), 1.0});

  const double target = in.coverage_target;
  auto rows = [&](std::string name, RowFamily f, std::vector<Term> terms, Sense s, double rhs) {
    m.rows.push_back({std::move(name), f, std::move(terms), s, rhs});
  };

  // Coverage at the last epoch.
  {
    std::vector<Term> terms;
    for (int k = 0; k < S; ++k) terms.push_back({vx.e(T - 1, k), 1.0});
    rows("cover_final", RowFamily::FinalCoverage, std::move(terms), Sense::GreaterEqual, target);
  }
  // One cell per robot per epoch.
  for (int r = 0; r < R; ++r)
    for (int t = 0; t < T; ++t) {
      std::vector<Term> terms;
      for (int k = 0; k < S; ++k) terms.push_back({vx.l(r, t, k), 1.0});
      rows("one_place_" + std::to_string(r) + "_" + std::to_string(t), RowFamily::OnePlace, std::move(terms), Sense::Equal, 1.0);
    }
  // Moves only between neighbors (or stay).
  std::vector<std::vector<int>> predecessors(static_cast<std::size_t>(S));
  for (int k = 0; k < S; ++k) {
    const Cell c = g.cell(k);
    if (g.traversable(c)) predecessors[k].push_back(k);
  }
  for (const auto& ed : in.edges) predecessors[ed.to].push_back(ed.from);
  for (auto& p : predecessors) std::sort(p.begin(), p.end());
  for (int r = 0; r < R; ++r)
    for (int t = 0; t + 1 < T; ++t)
      for (int k = 0; k < S; ++k) {
        std::vector<Term> terms{{vx.l(r, t + 1, k), 1.0}};
        for (int j : predecessors[k]) terms.push_back({vx.l(r, t, j), -1.0});
        rows("adjacent_" + std::to_string(r) + "_" + std::to_string(t + 1) + "_" + cell_suffix(g, k), RowFamily::Adjacency,
             std::move(terms), Sense::LessEqual, 0.0);
      }
  // Exploration tracking.
  for (int t = 0; t < T; ++t)
    for (int k = 0; k < S; ++k) {
      const std::string sfx = std::to_string(t) + "_" + cell_suffix(g, k);
      std::vector<Term> up{{vx.e(t, k), 1.0}};
      if (t > 0) up.push_back({vx.e(t - 1, k), -1.0});
      for (int r = 0; r < R; ++r) up.push_back({vx.l(r, t, k), -1.0});
      rows("explore_up_" + sfx, RowFamily::ExploreUpper, std::move(up), Sense::LessEqual, 0.0);
      if (t > 0)
        rows("explore_mono_" + sfx, RowFamily::ExploreMonotone, {{vx.e(t, k), 1.0}, {vx.e(t - 1, k), -1.0}},
             Sense::GreaterEqual, 0.0);
      std::vector<Term> lo{{vx.e(t, k), static_cast<double>(R)}};
      for (int r = 0; r < R; ++r) lo.push_back({vx.l(r, t, k), -1.0});
      rows("explore_lo_" + sfx, RowFamily::ExploreLower, std::move(lo), Sense::GreaterEqual, 0.0);
    }
  // d[t] may be 0 only once the target is reached.
  for (int t = 0; t < T; ++t) {
    std::vector<Term> terms;
    for (int k = 0; k < S; ++k) terms.push_back({vx.e(t, k), 1.0});
    terms.push_back({vx.d(t), target});
    rows("active_" + std::to_string(t), RowFamily::Activation, std::move(terms), Sense::GreaterEqual, target);
  }
  // Battery recursion with linearized products.
  for (int r = 0; r < R; ++r)
    for (int t = 0; t + 1 < T; ++t) {
      const std::string rt = std::to_string(r) + "_" + std::to_string(t);
      std::vector<Term> terms{{vx.b(r, t + 1), 1.0}, {vx.b(r, t), -1.0}};
      for (std::size_t j = 0; j < in.edges.size(); ++j)
        if (in.edges[j].energy_J != 0.0) terms.push_back({vx.y(r, t, static_cast<int>(j)), in.edges[j].energy_J});
      for (int k = 0; k < S; ++k)
        if (in.first_visit_J[k] != 0.0) terms.push_back({vx.z(r, t, k), in.first_visit_J[k]});
      rows("battery_" + rt, RowFamily::Battery, std::move(terms), Sense::Equal, -in.base_epoch_J);

      for (std::size_t j = 0; j < in.edges.size(); ++j) {
        const auto& ed = in.edges[j];
        const int y = vx.y(r, t, static_cast<int>(j));
        const std::string nm = rt + "_" + cell_suffix(g, ed.from) + "_" + cell_suffix(g, ed.to);
        rows("ymc_a_" + nm, RowFamily::MoveProduct, {{y, 1.0}, {vx.l(r, t, ed.from), -1.0}}, Sense::LessEqual, 0.0);
        rows("ymc_b_" + nm, RowFamily::MoveProduct, {{y, 1.0}, {vx.l(r, t + 1, ed.to), -1.0}}, Sense::LessEqual, 0.0);
        rows("ymc_c_" + nm, RowFamily::MoveProduct, {{y, 1.0}, {vx.l(r, t, ed.from), -1.0}, {vx.l(r, t + 1, ed.to), -1.0}},
             Sense::GreaterEqual, -1.0);
      }
      for (int k = 0; k < S; ++k) {
        const int z = vx.z(r, t, k);
        const std::string nm = rt + "_" + cell_suffix(g, k);
        rows("zmc_a_" + nm, RowFamily::SenseProduct, {{z, 1.0}, {vx.l(r, t + 1, k), -1.0}}, Sense::LessEqual, 0.0);
        rows("zmc_b_" + nm, RowFamily::SenseProduct, {{z, 1.0}, {vx.e(t, k), 1.0}}, Sense::LessEqual, 1.0);
        rows("zmc_c_" + nm, RowFamily::SenseProduct, {{z, 1.0}, {vx.l(r, t + 1, k), -1.0}, {vx.e(t, k), 1.0}},
             Sense::GreaterEqual, 0.0);
      }
    }
  if (canonicalize)
    for (int t = 0; t + 1 < T; ++t)
      rows("canon_" + std::to_string(t + 1), RowFamily::Canonical, {{vx.d(t + 1), 1.0}, {vx.d(t), -1.0}}, Sense::LessEqual, 0.0);
  // Initial positions, explored start cells and batteries.
  for (int r = 0; r < R; ++r) {
    const int k = g.index(in.starts[r]);
    rows("fix_l_" + std::to_string(r), RowFamily::StartFix, {{vx.l(r, 0, k), 1.0}}, Sense::Equal, 1.0);
    rows("fix_b_" + std::to_string(r), RowFamily::StartFix, {{vx.b(r, 0), 1.0}}, Sense::Equal, in.battery_init_J[r]);
  }
  std::set<int> start_cells;
  for (const auto& s : in.starts) start_cells.insert(g.index(s));
  for (int k : start_cells) rows("fix_e_" + cell_suffix(g, k), RowFamily::StartFix, {{vx.e(0, k), 1.0}}, Sense::Equal, 1.0);
  return m;
}

}  // namespace detail

// Builds the resource-planning instance: coverage target, per-epoch charges,
// variable maps and (optionally) the explicit linear model with the bilinear
// battery terms replaced by binary product variables.
inline RpInstance build_rp(RpInputs inputs, const RpOptions& opts = {}) {
  if (!(inputs.kappa >= 0.0 && inputs.kappa <= 1.0)) throw ConfigError("kappa must lie in [0, 1]");
  if (inputs.horizon < 1) throw ConfigError("horizon must be >= 1 epoch");
  if (inputs.fleet < 1) throw ConfigError("fleet must have at least one robot");
  if (!(inputs.epoch_s > 0)) throw ConfigError("epoch length must be positive");
  inputs.profile.validate();
  const auto& g = inputs.grid;
  if (inputs.move_costs.A() != g.A() || inputs.move_costs.B() != g.B()) throw ConfigError("move cost table does not match grid");
  if (static_cast<int>(inputs.starts.size()) != inputs.fleet) throw ConfigError("need one start cell per robot");
  std::set<Cell> seen;
  for (const auto& s : inputs.starts) {
    if (!g.contains(s)) throw ConfigError("start cell (" + std::to_string(s.a) + "," + std::to_string(s.b) + ") outside grid");
    if (!g.traversable(s)) throw ConfigError("start cell (" + std::to_string(s.a) + "," + std::to_string(s.b) + ") not traversable");
    if (!seen.insert(s).second) throw ConfigError("start cells must be distinct");
  }
  if (inputs.battery_init_J.empty()) inputs.battery_init_J.assign(inputs.fleet, inputs.profile.battery_capacity_J);
  if (static_cast<int>(inputs.battery_init_J.size()) != inputs.fleet) throw ConfigError("need one initial battery per robot");
  for (double b : inputs.battery_init_J)
    if (!(b >= 0.0 && b <= inputs.profile.battery_capacity_J)) throw ConfigError("initial battery must lie in [0, B_max]");

  RpInstance in;
  in.grid = std::move(inputs.grid);
  in.profile = std::move(inputs.profile);
  in.fleet = inputs.fleet;
  in.kappa = inputs.kappa;
  in.horizon = inputs.horizon;
  in.epoch_s = inputs.epoch_s;
  in.move_costs = std::move(inputs.move_costs);
  in.comm = inputs.comm;
  in.starts = std::move(inputs.starts);
  in.battery_init_J = std::move(inputs.battery_init_J);
  in.battery_max_J = in.profile.battery_capacity_J;
  in.coverage_target = coverage_target(in.kappa, in.cell_count());
  in.canonicalized = opts.canonicalize;

  int traversable = 0;
  for (int k = 0; k < in.cell_count(); ++k) traversable += in.grid.traversable(in.grid.cell(k)) ? 1 : 0;
  if (opts.reject_infeasible) {
    if (static_cast<long long>(in.fleet) * in.horizon < in.coverage_target)
      throw InfeasibleError("coverage bound: " + std::to_string(in.fleet) + " robots x " + std::to_string(in.horizon) +
                            " epochs visit at most " + std::to_string(static_cast<long long>(in.fleet) * in.horizon) +
                            " cells, target is " + std::to_string(in.coverage_target));
    if (traversable < in.coverage_target)
      throw InfeasibleError("coverage bound: only " + std::to_string(traversable) + " traversable cells, target is " +
                            std::to_string(in.coverage_target));
  }

  in.base_epoch_J = (in.profile.p_rx_W + in.profile.p_idle_W) * in.epoch_s;
  in.first_visit_J.resize(static_cast<std::size_t>(in.cell_count()));
  for (int k = 0; k < in.cell_count(); ++k)
    in.first_visit_J[k] = (in.profile.p_sen_W + in.comm.p_tx(in.grid, in.profile.p_tx0_W, in.grid.cell(k))) * in.epoch_s;

  in.out_edges.resize(static_cast<std::size_t>(in.cell_count()));
  for (int k = 0; k < in.cell_count(); ++k) {
    const Cell c = in.grid.cell(k);
    for (auto d : kDirections) {
      if (d == Direction::Stay) continue;
      auto to = in.grid.step(c, d);
      if (!to) continue;
      const auto& mc = in.move_costs.at(k, d);
      if (!mc.valid) throw ConfigError("move cost table lacks an edge present in the grid");
      // Diagonals too slow for one epoch are not offered to the planner.
      if (!mc.fits_epoch) continue;
      in.out_edges[k].push_back(static_cast<int>(in.edges.size()));
      in.edges.push_back({k, d, in.grid.index(*to), mc.energy_J});
    }
  }
  in.vars = VariableIndex(in.fleet, in.horizon, in.cell_count(), in.edges.size());
  if (opts.materialize) in.model = detail::build_linear_model(in, opts.canonicalize);
  return in;
}

// Convenience: move costs, default starts and full batteries.
inline RpInstance build_rp(const CellGrid& grid, const EnergyProfile& profile, int fleet, double kappa, int horizon,
                           double epoch_s, const CommModel& comm = {}, const RpOptions& opts = {}) {
  RpInputs in{grid, profile, fleet, kappa, horizon, epoch_s, build_move_costs(grid, profile, epoch_s), comm,
              default_start_cells(grid, fleet), {}};
  return build_rp(std::move(in), opts);
}

// ---------------------------------------------------------------------------
// CPLEX LP export

namespace detail {

inline void write_lp_expression(std::ostream& out, const LinearModel& m, const std::vector<Term>& terms) {
  constexpr int kTermsPerLine = 8;
  if (terms.empty()) {
    out << " 0 " << m.variables.front().name;
    return;
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && i % kTermsPerLine == 0) out << "\n   ";
    const double c = terms[i].coef;
    const auto& name = m.variables[terms[i].var].name;
    out << (c < 0 ? " - " : (i == 0 ? " " : " + "));
    const double mag = std::abs(c);
    if (mag != 1.0) out << format_double(mag) << ' ';
    out << name;
  }
}

}  // namespace detail

inline void export_lp(const RpInstance& in, std::ostream& out) {
  if (!in.model) throw ConfigError("instance was built without the row model; rebuild with materialize = true");
  const auto& m = *in.model;
  out << "Minimize\n obj:";
  detail::write_lp_expression(out, m, m.objective);
  out << "\nSubject To\n";
  for (const auto& r : m.rows) {
    out << ' ' << r.name << ':';
    detail::write_lp_expression(out, m, r.terms);
    out << (r.sense == Sense::LessEqual ? " <= " : r.sense == Sense::GreaterEqual ? " >= " : " = ") << format_double(r.rhs)
        << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : m.variables)
    if (v.type == VarType::Continuous) out << ' ' << format_double(v.lb) << " <= " << v.name << " <= " << format_double(v.ub) << '\n';
  out << "Binary\n";
  for (const auto& v : m.variables)
    if (v.type == VarType::Binary) out << ' ' << v.name << '\n';
  out << "End\n";
}

inline void export_lp(const RpInstance& in, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write LP file '" + path + "'");
  export_lp(in, out);
  if (!out) throw IoError("write failed for LP file '" + path + "'");
}

}  // namespace sarplan
