#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "sarplan/error.hpp"
#include "sarplan/terrain.hpp"
#include "sarplan/util.hpp"

namespace sarplan {

enum class RobotKind { Wheeled, Quadruped };

// How quadruped motion power is derived from slope: the fitted line, or
// piecewise-linear interpolation of the measured samples.
enum class QuadrupedMode { Regression, MeasuredTable };

struct SlopeSample {
  double slope_deg;
  double power_W;
};

struct SlopePower {
  double intercept_W = 0.0;
  double slope_W_per_deg = 0.0;
  double range_min_deg = -11.0;
  double range_max_deg = 11.0;
};

struct PoseTransitions {
  double p_flex_down_W = 0.0;
  double p_flex_up_W = 0.0;
  double p_idle_down_W = 0.0;
  double t_transition_s = 0.0;
};

struct EnergyProfile {
  std::string name;
  RobotKind kind = RobotKind::Wheeled;
  double mass_kg = 0.0;
  double gravity = 9.81;
  double v_max = 1.0;
  double v_plan = 1.0;
  double battery_capacity_J = 0.0;
  double p_rx_W = 0.0;
  double p_tx0_W = 0.0;
  double p_sen_W = 0.0;
  // Standing/idle drain; for the quadruped this is the "idle up" power.
  double p_idle_W = 0.0;
  // Rolling resistance, wheeled only.
  double mu = 0.0;
  // Quadruped only.
  std::optional<SlopePower> slope_power;
  std::vector<SlopeSample> slope_samples;
  QuadrupedMode quadruped_mode = QuadrupedMode::Regression;
  std::optional<PoseTransitions> transitions;
  std::optional<double> motor_power_cap_W;

  void validate() const {
    auto nonneg = [](double v, const char* what) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be finite and >= 0");
    };
    nonneg(p_rx_W, "p_rx_W");
    nonneg(p_tx0_W, "p_tx0_W");
    nonneg(p_sen_W, "p_sen_W");
    nonneg(p_idle_W, "p_idle_W");
    nonneg(mass_kg, "mass_kg");
    if (!(gravity > 0)) throw ConfigError("gravity must be positive");
    if (!(battery_capacity_J > 0)) throw ConfigError("battery_capacity_J must be positive");
    if (!(v_plan > 0) || !(v_plan <= v_max)) throw ConfigError("need 0 < v_plan <= v_max");
    if (motor_power_cap_W && !(*motor_power_cap_W > 0)) throw ConfigError("motor_power_cap_W must be positive");
    if (transitions) {
      nonneg(transitions->p_flex_down_W, "transitions.p_flex_down_W");
      nonneg(transitions->p_flex_up_W, "transitions.p_flex_up_W");
      nonneg(transitions->p_idle_down_W, "transitions.p_idle_down_W");
      nonneg(transitions->t_transition_s, "transitions.t_transition_s");
    }
    if (kind == RobotKind::Wheeled) {
      nonneg(mu, "mu");
    } else {
      if (!slope_power) throw ConfigError("quadruped profile needs slope_power");
      if (!(slope_power->range_min_deg <= slope_power->range_max_deg)) throw ConfigError("slope_power.valid_range_deg is empty");
      if (quadruped_mode == QuadrupedMode::MeasuredTable && slope_samples.size() < 2)
        throw ConfigError("measured-table mode needs at least two slope samples");
    }
  }
};

// ---------------------------------------------------------------------------
// Motion models

namespace detail {
inline constexpr double kDegToRad = std::numbers::pi / 180.0;

// "<x><sep><y>" with optional surrounding whitespace.
inline std::optional<std::pair<double, double>> parse_pair(std::string_view text, char sep) {
  auto pos = text.find(sep);
  if (pos == std::string_view::npos) return std::nullopt;
  auto first = split_whitespace(text.substr(0, pos));
  auto second = split_whitespace(text.substr(pos + 1));
  if (first.size() != 1 || second.size() != 1) return std::nullopt;
  auto x = parse_double(first[0].text);
  auto y = parse_double(second[0].text);
  if (!x || !y) return std::nullopt;
  return std::pair{*x, *y};
}

inline void check_motion_args(double slope_deg, double distance_m) {
  if (!(std::abs(slope_deg) < 90.0)) throw ConfigError("slope must satisfy |slope| < 90 deg");
  if (!(distance_m >= 0.0)) throw ConfigError("distance must be >= 0");
}
}  // namespace detail

// Rolling resistance plus gravity along the slope, integrated over the
// distance at constant mu. No regeneration: descents never return energy.
inline double wheeled_move_energy(const EnergyProfile& p, double slope_deg, double distance_m) {
  if (p.kind != RobotKind::Wheeled) throw TypeMismatchError("wheeled_move_energy needs a wheeled profile");
  detail::check_motion_args(slope_deg, distance_m);
  const double theta = slope_deg * detail::kDegToRad;
  const double weight = p.mass_kg * p.gravity;
  const double force = p.mu * weight * std::cos(theta) + weight * std::sin(theta);
  return std::max(0.0, force * distance_m);
}

struct SlopeFit {
  double intercept_W = 0.0;
  double slope_W_per_deg = 0.0;
  std::vector<double> residuals;

  double power_at(double slope_deg) const { return intercept_W + slope_W_per_deg * slope_deg; }
};

// Ordinary least squares of power against slope.
inline SlopeFit fit_quadruped_slope_power(std::span<const SlopeSample> samples) {
  if (samples.size() < 2) throw ConfigError("slope fit needs at least two samples");
  double mx = 0.0, my = 0.0;
  for (const auto& s : samples) {
    mx += s.slope_deg;
    my += s.power_W;
  }
  mx /= static_cast<double>(samples.size());
  my /= static_cast<double>(samples.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& s : samples) {
    sxx += (s.slope_deg - mx) * (s.slope_deg - mx);
    sxy += (s.slope_deg - mx) * (s.power_W - my);
  }
  if (sxx <= 0.0) throw ConfigError("singular slope fit: all samples share one slope value");
  SlopeFit fit;
  fit.slope_W_per_deg = sxy / sxx;
  fit.intercept_W = my - fit.slope_W_per_deg * mx;
  fit.residuals.reserve(samples.size());
  for (const auto& s : samples) fit.residuals.push_back(s.power_W - fit.power_at(s.slope_deg));
  return fit;
}

// Motion power of a quadruped on the given slope, before multiplying by time.
inline double quadruped_motion_power(const EnergyProfile& p, double slope_deg) {
  if (p.kind != RobotKind::Quadruped) throw TypeMismatchError("quadruped model needs a quadruped profile");
  if (!p.slope_power) throw ConfigError("quadruped profile has no slope_power");
  const auto& sp = *p.slope_power;
  const double theta = std::clamp(slope_deg, sp.range_min_deg, sp.range_max_deg);
  if (p.quadruped_mode == QuadrupedMode::Regression) return std::max(0.0, sp.intercept_W + sp.slope_W_per_deg * theta);

  auto table = p.slope_samples;
  std::sort(table.begin(), table.end(), [](const auto& l, const auto& r) { return l.slope_deg < r.slope_deg; });
  if (theta <= table.front().slope_deg) return table.front().power_W;
  if (theta >= table.back().slope_deg) return table.back().power_W;
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (theta <= table[i].slope_deg) {
      const auto& lo = table[i - 1];
      const auto& hi = table[i];
      const double w = (theta - lo.slope_deg) / (hi.slope_deg - lo.slope_deg);
      return std::max(0.0, lo.power_W + w * (hi.power_W - lo.power_W));
    }
  }
  return table.back().power_W;
}

// Power at the (clamped) slope times the time to walk the distance at v_plan.
inline double quadruped_move_energy(const EnergyProfile& p, double slope_deg, double distance_m) {
  if (p.kind != RobotKind::Quadruped) throw TypeMismatchError("quadruped_move_energy needs a quadruped profile");
  detail::check_motion_args(slope_deg, distance_m);
  return quadruped_motion_power(p, slope_deg) * (distance_m / p.v_plan);
}

inline double move_energy(const EnergyProfile& p, double slope_deg, double distance_m) {
  return p.kind == RobotKind::Wheeled ? wheeled_move_energy(p, slope_deg, distance_m)
                                      : quadruped_move_energy(p, slope_deg, distance_m);
}

// ---------------------------------------------------------------------------
// Idle pose break-even

// Energy to stand idle for t seconds.
inline double stand_idle_energy(const EnergyProfile& p, double t) { return p.p_idle_W * t; }

// Energy to lie down, rest, and stand up again within t seconds. Requires
// t >= 2 * t_transition.
inline double lay_idle_energy(const EnergyProfile& p, double t) {
  if (!p.transitions) throw ConfigError("profile has no pose transition data");
  const auto& tr = *p.transitions;
  if (t < 2.0 * tr.t_transition_s) throw ConfigError("idle interval shorter than a lay-down/stand-up cycle");
  return (tr.p_flex_down_W + tr.p_flex_up_W) * tr.t_transition_s + tr.p_idle_down_W * (t - 2.0 * tr.t_transition_s);
}

// Idle duration beyond which lying down costs less than standing. Root of the
// stand/lay balance, floored at the shortest feasible lay cycle.
inline double idle_break_even(const EnergyProfile& p) {
  if (!p.transitions) throw ConfigError("profile has no pose transition data");
  const auto& tr = *p.transitions;
  const double p_up = p.p_idle_W;
  if (!(p_up > tr.p_idle_down_W))
    throw ConfigError("no break-even: idle-up power " + std::to_string(p_up) + " W does not exceed idle-down power " +
                      std::to_string(tr.p_idle_down_W) + " W");
  const double root =
      (tr.p_flex_down_W + tr.p_flex_up_W - 2.0 * tr.p_idle_down_W) * tr.t_transition_s / (p_up - tr.p_idle_down_W);
  return std::max(root, 2.0 * tr.t_transition_s);
}

// ---------------------------------------------------------------------------
// Speed limiting

struct SpeedConfig {
  // Downhill speed gain per unit sin|theta|; 0 disables overshoot.
  double gamma = 0.25;
  // Downhill speed never exceeds this multiple of the commanded speed.
  double overshoot_cap_factor = 1.5;
};

// Speed achieved on a slope when commanding `commanded_mps`. Uphill wheeled
// robots are limited by the traction power cap; downhill robots of either kind
// may overshoot.
inline double limited_speed(const EnergyProfile& p, double slope_deg, double commanded_mps, const SpeedConfig& cfg) {
  if (!(std::abs(slope_deg) < 90.0)) throw ConfigError("slope must satisfy |slope| < 90 deg");
  if (slope_deg > 0.0) {
    if (p.kind != RobotKind::Wheeled || !p.motor_power_cap_W) return commanded_mps;
    const double theta = slope_deg * detail::kDegToRad;
    const double force = p.mass_kg * p.gravity * (p.mu * std::cos(theta) + std::sin(theta));
    if (force <= 0.0) return commanded_mps;
    return std::min(commanded_mps, *p.motor_power_cap_W / force);
  }
  if (slope_deg < 0.0) {
    const double theta = -slope_deg * detail::kDegToRad;
    return std::min(cfg.overshoot_cap_factor * commanded_mps, commanded_mps * (1.0 + cfg.gamma * std::sin(theta)));
  }
  return commanded_mps;
}

inline double effective_speed(const EnergyProfile& p, double slope_deg, const SpeedConfig& cfg = {}) {
  return limited_speed(p, slope_deg, p.v_max, cfg);
}

// ---------------------------------------------------------------------------
// Communication

// Transmit power grows linearly with the distance to the base station.
struct CommModel {
  Cell base_station{0, 0};
  double beta = 0.0;
  double d_ref_m = 100.0;

  double p_tx(const CellGrid& grid, double p_tx0_W, Cell c) const {
    return p_tx0_W * (1.0 + beta * grid.center_distance_m(c, base_station) / d_ref_m);
  }
};

// ---------------------------------------------------------------------------
// Move costs

struct MoveCost {
  double energy_J = 0.0;
  double transit_time_s = 0.0;
  bool valid = false;
  bool fits_epoch = true;
};

class MoveCostTable {
 public:
  MoveCostTable() = default;
  MoveCostTable(int A, int B) : A_(A), B_(B), costs_(static_cast<std::size_t>(A) * B) {}

  int A() const noexcept { return A_; }
  int B() const noexcept { return B_; }

  const MoveCost& at(int cell_index, Direction d) const { return costs_[cell_index][static_cast<std::size_t>(d)]; }
  MoveCost& at(int cell_index, Direction d) { return costs_[cell_index][static_cast<std::size_t>(d)]; }
  const MoveCost& at(Cell c, Direction d) const { return at(c.a * B_ + c.b, d); }

  // CSV with one row per valid directed edge, stay rows included.
  void write_csv(std::ostream& out) const;

 private:
  int A_ = 0;
  int B_ = 0;
  std::vector<std::array<MoveCost, kDirectionCount>> costs_;
};

inline void MoveCostTable::write_csv(std::ostream& out) const {
  out << "a,b,a2,b2,energy_J,transit_time_s\n";
  for (int a = 0; a < A_; ++a) {
    for (int b = 0; b < B_; ++b) {
      for (auto d : kDirections) {
        const auto& c = at(Cell{a, b}, d);
        if (!c.valid) continue;
        const auto o = offset(d);
        out << a << ',' << b << ',' << a + o.da << ',' << b + o.db << ',' << format_double(c.energy_J) << ','
            << format_double(c.transit_time_s) << '\n';
      }
    }
  }
}

// Energy and transit time of every directed edge for one robot profile.
// Transit uses the planning speed with slope limiting and no downhill
// overshoot. Every axis edge must fit in one epoch; diagonal edges that do
// not are flagged with fits_epoch = false.
inline MoveCostTable build_move_costs(const CellGrid& grid, const EnergyProfile& profile, double epoch_s) {
  if (!(epoch_s > 0)) throw ConfigError("epoch length must be positive");
  profile.validate();
  const SpeedConfig planning{0.0, 1.0};
  MoveCostTable table(grid.A(), grid.B());
  for (int k = 0; k < grid.cell_count(); ++k) {
    const Cell u = grid.cell(k);
    if (!grid.traversable(u)) continue;
    table.at(k, Direction::Stay) = {0.0, 0.0, true, true};
    for (auto d : kDirections) {
      if (d == Direction::Stay) continue;
      const Edge& e = grid.edge(u, d);
      if (!e.valid) continue;
      MoveCost mc;
      mc.valid = true;
      mc.energy_J = move_energy(profile, e.slope_deg, e.distance_m);
      mc.transit_time_s = e.distance_m / limited_speed(profile, e.slope_deg, profile.v_plan, planning);
      mc.fits_epoch = mc.transit_time_s <= epoch_s * (1.0 + 1e-12);
      if (!mc.fits_epoch && !is_diagonal(d)) {
        const auto o = offset(d);
        throw ConfigError("edge (" + std::to_string(u.a) + "," + std::to_string(u.b) + ")->(" + std::to_string(u.a + o.da) +
                          "," + std::to_string(u.b + o.db) + ") needs " + format_double(mc.transit_time_s) +
                          " s, longer than the " + format_double(epoch_s) + " s epoch");
      }
      table.at(k, d) = mc;
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Profile files: `key = value` lines, `#` comments. Keys match the field names,
// nested groups use a dotted prefix (slope_power.*, transitions.*).

inline EnergyProfile parse_profile(std::istream& in) {
  EnergyProfile p;
  std::map<std::string, std::pair<std::string, std::size_t>> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string_view text = detail::strip_cr(line);
    if (detail::blank(text)) continue;
    auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no, 1);
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return std::string(s);
    };
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no, 1);
    if (kv.count(key)) throw ParseError("duplicate key '" + key + "'", line_no, 1);
    kv[key] = {value, line_no};
  }

  auto number = [&](const std::string& key) -> std::optional<double> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    auto v = detail::parse_double(it->second.first);
    if (!v) throw ParseError("key '" + key + "' needs a number, got '" + it->second.first + "'", it->second.second);
    return v;
  };
  auto required = [&](const std::string& key) {
    auto v = number(key);
    if (!v) throw ParseError("missing required key '" + key + "'", 0);
    return *v;
  };

  static const std::vector<std::string> known = {
      "name", "kind", "mass_kg", "gravity", "v_max", "v_plan", "battery_capacity_J", "p_rx_W", "p_tx0_W", "p_sen_W",
      "p_idle_W", "mu", "motor_power_cap_W", "slope_power.intercept_W", "slope_power.slope_W_per_deg",
      "slope_power.valid_range_deg", "slope_power.samples", "slope_power.mode", "transitions.p_flex_down_W",
      "transitions.p_flex_up_W", "transitions.p_idle_down_W", "transitions.t_transition_s"};
  for (const auto& [key, value] : kv)
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError("unknown key '" + key + "'", value.second, 1);

  if (auto it = kv.find("name"); it != kv.end()) p.name = it->second.first;
  auto kind = kv.find("kind");
  if (kind == kv.end()) throw ParseError("missing required key 'kind'", 0);
  if (kind->second.first == "wheeled") {
    p.kind = RobotKind::Wheeled;
  } else if (kind->second.first == "quadruped") {
    p.kind = RobotKind::Quadruped;
  } else {
    throw ParseError("kind must be 'wheeled' or 'quadruped'", kind->second.second);
  }

  p.mass_kg = required("mass_kg");
  p.gravity = number("gravity").value_or(9.81);
  p.v_max = required("v_max");
  p.v_plan = number("v_plan").value_or(p.v_max);
  p.battery_capacity_J = required("battery_capacity_J");
  p.p_rx_W = required("p_rx_W");
  p.p_tx0_W = required("p_tx0_W");
  p.p_sen_W = required("p_sen_W");
  p.p_idle_W = required("p_idle_W");
  p.motor_power_cap_W = number("motor_power_cap_W");

  if (p.kind == RobotKind::Wheeled) {
    p.mu = required("mu");
  } else {
    if (auto it = kv.find("slope_power.samples"); it != kv.end()) {
      std::stringstream ss(it->second.first);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto pair = detail::parse_pair(item, ':');
        if (!pair) throw ParseError("slope_power.samples entries must be '<deg>:<watts>'", it->second.second);
        p.slope_samples.push_back({pair->first, pair->second});
      }
    }
    SlopePower sp;
    auto intercept = number("slope_power.intercept_W");
    auto slope = number("slope_power.slope_W_per_deg");
    if (intercept && slope) {
      sp.intercept_W = *intercept;
      sp.slope_W_per_deg = *slope;
    } else if (!intercept && !slope && p.slope_samples.size() >= 2) {
      auto fit = fit_quadruped_slope_power(p.slope_samples);
      sp.intercept_W = fit.intercept_W;
      sp.slope_W_per_deg = fit.slope_W_per_deg;
    } else {
      throw ParseError("quadruped profile needs slope_power.intercept_W and slope_W_per_deg, or slope_power.samples", 0);
    }
    if (auto it = kv.find("slope_power.valid_range_deg"); it != kv.end()) {
      auto range = detail::parse_pair(it->second.first, ',');
      if (!range) throw ParseError("slope_power.valid_range_deg must be '<min>, <max>'", it->second.second);
      auto lo = std::optional<double>(range->first);
      auto hi = std::optional<double>(range->second);
      sp.range_min_deg = *lo;
      sp.range_max_deg = *hi;
    }
    p.slope_power = sp;
    if (auto it = kv.find("slope_power.mode"); it != kv.end()) {
      if (it->second.first == "regression") {
        p.quadruped_mode = QuadrupedMode::Regression;
      } else if (it->second.first == "measured-table") {
        p.quadruped_mode = QuadrupedMode::MeasuredTable;
      } else {
        throw ParseError("slope_power.mode must be 'regression' or 'measured-table'", it->second.second);
      }
    }
  }

  auto fd = number("transitions.p_flex_down_W");
  auto fu = number("transitions.p_flex_up_W");
  auto down = number("transitions.p_idle_down_W");
  auto tt = number("transitions.t_transition_s");
  if (fd || fu || down || tt) {
    if (!(fd && fu && down && tt)) throw ParseError("transitions.* keys must be given together", 0);
    p.transitions = PoseTransitions{*fd, *fu, *down, *tt};
  }
  p.validate();
  return p;
}

inline EnergyProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open profile '" + path + "'");
  try {
    return parse_profile(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

inline void write_profile(std::ostream& out, const EnergyProfile& p) {
  out << "name = " << p.name << '\n';
  out << "kind = " << (p.kind == RobotKind::Wheeled ? "wheeled" : "quadruped") << '\n';
  out << "mass_kg = " << format_double(p.mass_kg) << '\n';
  out << "gravity = " << format_double(p.gravity) << '\n';
  out << "v_max = " << format_double(p.v_max) << '\n';
  out << "v_plan = " << format_double(p.v_plan) << '\n';
  out << "battery_capacity_J = " << format_double(p.battery_capacity_J) << '\n';
  out << "p_rx_W = " << format_double(p.p_rx_W) << '\n';
  out << "p_tx0_W = " << format_double(p.p_tx0_W) << '\n';
  out << "p_sen_W = " << format_double(p.p_sen_W) << '\n';
  out << "p_idle_W = " << format_double(p.p_idle_W) << '\n';
  if (p.motor_power_cap_W) out << "motor_power_cap_W = " << format_double(*p.motor_power_cap_W) << '\n';
  if (p.kind == RobotKind::Wheeled) out << "mu = " << format_double(p.mu) << '\n';
  if (p.slope_power) {
    out << "slope_power.intercept_W = " << format_double(p.slope_power->intercept_W) << '\n';
    out << "slope_power.slope_W_per_deg = " << format_double(p.slope_power->slope_W_per_deg) << '\n';
    out << "slope_power.valid_range_deg = " << format_double(p.slope_power->range_min_deg) << ", "
        << format_double(p.slope_power->range_max_deg) << '\n';
    out << "slope_power.mode = " << (p.quadruped_mode == QuadrupedMode::Regression ? "regression" : "measured-table") << '\n';
  }
  if (!p.slope_samples.empty()) {
    out << "slope_power.samples = ";
    for (std::size_t i = 0; i < p.slope_samples.size(); ++i)
      out << (i ? ", " : "") << format_double(p.slope_samples[i].slope_deg) << ':' << format_double(p.slope_samples[i].power_W);
    out << '\n';
  }
  if (p.transitions) {
    out << "transitions.p_flex_down_W = " << format_double(p.transitions->p_flex_down_W) << '\n';
    out << "transitions.p_flex_up_W = " << format_double(p.transitions->p_flex_up_W) << '\n';
    out << "transitions.p_idle_down_W = " << format_double(p.transitions->p_idle_down_W) << '\n';
    out << "transitions.t_transition_s = " << format_double(p.transitions->t_transition_s) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Built-in profiles. The shipped data/profiles/*.profile files hold the same
// values.

// Slope scenarios measured on the quadruped at 1 m/s.
inline std::vector<SlopeSample> quadruped_slope_samples() {
  return {{-11.0, 91.01}, {-5.3, 122.87}, {0.0, 142.95}, {5.3, 160.35}, {11.0, 203.38}};
}

inline EnergyProfile default_wheeled_profile(double v_max = 1.0) {
  EnergyProfile p;
  p.name = "wheeled";
  p.kind = RobotKind::Wheeled;
  p.mass_kg = 7.51;
  p.v_max = v_max;
  p.v_plan = v_max;
  p.battery_capacity_J = 72000.0;
  p.p_rx_W = 4.00;
  p.p_tx0_W = 4.95;
  p.p_sen_W = 12.00;
  p.p_idle_W = 0.29;
  p.mu = 0.1;
  return p;
}

inline EnergyProfile default_quadruped_profile(QuadrupedMode mode = QuadrupedMode::Regression) {
  EnergyProfile p;
  p.name = "quadruped";
  p.kind = RobotKind::Quadruped;
  p.mass_kg = 13.0;
  p.v_max = 1.0;
  p.v_plan = 1.0;
  p.battery_capacity_J = 350000.0;
  p.p_rx_W = 15.77;
  p.p_tx0_W = 16.72;
  p.p_sen_W = 76.09;
  p.p_idle_W = 80.33;
  p.slope_samples = quadruped_slope_samples();
  const auto fit = fit_quadruped_slope_power(p.slope_samples);
  p.slope_power = SlopePower{fit.intercept_W, fit.slope_W_per_deg, -11.0, 11.0};
  p.quadruped_mode = mode;
  p.transitions = PoseTransitions{75.79, 93.14, 21.62, 1.0};
  return p;
}

}  // namespace sarplan
