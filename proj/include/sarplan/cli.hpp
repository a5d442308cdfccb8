#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sarplan/config.hpp"
#include "sarplan/energy.hpp"
#include "sarplan/error.hpp"
#include "sarplan/io.hpp"
#include "sarplan/planner.hpp"
#include "sarplan/plot.hpp"
#include "sarplan/rp_model.hpp"
#include "sarplan/simulator.hpp"
#include "sarplan/util.hpp"

namespace sarplan {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInfeasible = 2, kExitTimeout = 3 };

namespace detail {

struct CliOptions {
  std::string config;
  std::string out = "out";
  std::string mode;
  std::optional<double> time_limit_s;
  std::optional<std::uint64_t> seed;
  int fleet = 1;
  std::string plan;
  std::string report;
};

inline RunConfig load_cli_config(const CliOptions& o) {
  if (o.config.empty()) throw ConfigError("--config is required");
  RunConfig cfg = load_run_config(o.config);
  if (!o.mode.empty()) cfg.mission.solver_mode = parse_solver_mode(o.mode);
  if (o.time_limit_s) {
    if (!(*o.time_limit_s > 0.0)) throw ConfigError("--time-limit must be positive");
    cfg.mission.exact_limits.time_limit_s = *o.time_limit_s;
  }
  if (o.seed) {
    cfg.seed = *o.seed;
    cfg.mission.heuristic.seed = *o.seed;
  }
  return cfg;
}

inline std::filesystem::path out_dir(const CliOptions& o) {
  std::filesystem::path p(o.out);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw IoError("cannot create output directory '" + o.out + "': " + ec.message());
  return p;
}

inline int run_ingest(const CliOptions& o, std::ostream& out) {
  const RunConfig cfg = load_cli_config(o);
  const auto& g = cfg.require_grid();
  const auto dir = out_dir(o);
  write_text_file((dir / "cellgrid.json").string(), grid_to_json(g).dump(1) + "\n");
  int trav = 0;
  for (auto t : g.traversable_mask()) trav += t ? 1 : 0;
  out << "grid " << g.A() << "x" << g.B() << " cells of " << format_double(g.cell_size_m()) << " m, " << trav
      << " traversable -> " << (dir / "cellgrid.json").string() << "\n";
  return kExitOk;
}

inline int run_costs(const CliOptions& o, std::ostream& out) {
  const RunConfig cfg = load_cli_config(o);
  const double epoch = cfg.has_mission ? cfg.mission.epoch_s : 10.0;
  const auto table = build_move_costs(cfg.require_grid(), cfg.require_profile(), epoch);
  const auto dir = out_dir(o);
  std::ostringstream csv;
  table.write_csv(csv);
  write_text_file((dir / "move_costs.csv").string(), csv.str());
  out << "move costs for profile '" << cfg.require_profile().name << "' -> " << (dir / "move_costs.csv").string() << "\n";
  return kExitOk;
}

inline std::string plan_summary_line(const MissionPlan& p) {
  std::ostringstream s;
  s << "profile=" << p.profile_name << " fleet=" << p.fleet_size << " explored=" << format_double(std::round(p.expected_explored_pct * 100) / 100)
    << "% completion_epochs=" << p.completion_epochs << " completion_time_s=" << format_double(p.completion_time_s)
    << " status=" << status_name(p.solution.status) << " met=" << (p.met_requirements ? "yes" : "no");
  return s.str();
}

inline int run_plan(const CliOptions& o, std::ostream& out) {
  const RunConfig cfg = load_cli_config(o);
  const MissionSpec spec = cfg.require_mission();
  const MissionPlan plan = plan_mission(spec);
  const auto dir = out_dir(o);
  write_text_file((dir / "plan.json").string(), plan_to_json(plan, spec.grid).dump(1) + "\n");
  std::ostringstream txt;
  txt << plan_summary_line(plan) << "\n";
  for (const auto& a : plan.attempts) {
    txt << "  fleet " << a.fleet << ": " << status_name(a.status) << " (" << a.solver << ")";
    if (a.status != SolveStatus::Infeasible) txt << " objective " << a.objective;
    if (!a.reason.empty()) txt << " - " << a.reason;
    txt << "\n";
  }
  write_text_file((dir / "plan_summary.txt").string(), txt.str());
  out << plan_summary_line(plan) << "\n";
  if (plan.met_requirements) return kExitOk;
  return plan.solution.status == SolveStatus::Timeout ? kExitTimeout : kExitInfeasible;
}

inline int run_export_lp(const CliOptions& o, std::ostream& out) {
  const RunConfig cfg = load_cli_config(o);
  const MissionSpec spec = cfg.require_mission();
  spec.validate();
  if (o.fleet < 1) throw ConfigError("--fleet must be at least 1");
  RpInputs in{spec.grid,
              spec.profile,
              o.fleet,
              spec.err,
              spec.horizon(),
              spec.epoch_s,
              build_move_costs(spec.grid, spec.profile, spec.epoch_s),
              spec.comm,
              default_start_cells(spec.grid, o.fleet),
              {}};
  if (spec.battery_init_J) in.battery_init_J.assign(o.fleet, *spec.battery_init_J);
  const RpInstance inst = build_rp(std::move(in), {.canonicalize = true, .materialize = true, .reject_infeasible = false});
  const auto dir = out_dir(o);
  std::ostringstream lp;
  export_lp(inst, lp);
  write_text_file((dir / "model.lp").string(), lp.str());
  write_text_file((dir / "model_summary.json").string(), instance_summary_json(inst).dump(1) + "\n");
  out << "LP model: " << inst.model->variables.size() << " variables, " << inst.model->rows.size() << " rows -> "
      << (dir / "model.lp").string() << "\n";
  return kExitOk;
}

inline int run_simulate(const CliOptions& o, std::ostream& out) {
  const RunConfig cfg = load_cli_config(o);
  if (o.plan.empty()) throw ConfigError("--plan is required");
  const MissionPlan plan = plan_from_json(read_json_file(o.plan));
  SimConfig sim = cfg.sim;
  if (sim.battery_init_J.size() == 1) sim.battery_init_J.assign(plan.paths.size(), sim.battery_init_J.front());
  const MissionReport rep = simulate(plan, cfg.require_grid(), cfg.require_profile(), cfg.comm, sim);
  const auto dir = out_dir(o);
  std::ostringstream csv;
  write_report_csv(rep, csv);
  write_text_file((dir / "report.csv").string(), csv.str());
  write_text_file((dir / "report_summary.json").string(), report_summary_json(rep).dump(1) + "\n");
  out << "epochs=" << rep.epochs() << " explored=" << format_double(std::round((rep.explored_pct.empty() ? 0.0 : rep.explored_pct.back()) * 100) / 100)
      << "% completion_epoch=" << (rep.completion_epoch ? std::to_string(*rep.completion_epoch) : std::string("none"))
      << " depleted_robots=" << rep.depleted_robots << "\n";
  return kExitOk;
}

// Reads a report CSV and writes explored-vs-epoch and energy-vs-coverage
// data (CSV) plus static SVG charts.
inline int run_report(const CliOptions& o, std::ostream& out) {
  if (o.report.empty()) throw ConfigError("--report is required");
  std::ifstream in(o.report);
  if (!in) throw IoError("cannot open '" + o.report + "'");
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty report file", 1);
  std::vector<std::string> header;
  for (const auto& t : split_csv(strip_cr(line))) header.emplace_back(t.text);
  if (header.size() < 2 || header[0] != "epoch" || header[1] != "explored_pct")
    throw ParseError("report header must start with epoch,explored_pct", 1);
  std::vector<std::size_t> battery_cols;
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i].size() > 10 && header[i].ends_with("_battery_J")) battery_cols.push_back(i);

  Series coverage, energy;
  std::vector<double> initial;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto toks = split_csv(strip_cr(line));
    if (toks.size() != header.size()) throw ParseError("expected " + std::to_string(header.size()) + " fields", line_no);
    std::vector<double> v;
    for (const auto& t : toks) {
      auto d = parse_double(t.text);
      if (!d) throw ParseError("not a number: '" + std::string(t.text) + "'", line_no, t.column);
      v.push_back(*d);
    }
    double used = 0.0;
    if (initial.empty())
      for (auto c : battery_cols) initial.push_back(v[c]);
    for (std::size_t i = 0; i < battery_cols.size(); ++i) used += initial[i] - v[battery_cols[i]];
    coverage.x.push_back(v[0]);
    coverage.y.push_back(v[1]);
    energy.x.push_back(v[1]);
    energy.y.push_back(std::round(used * 1e6) / 1e6);
  }
  const auto dir = out_dir(o);
  std::ostringstream a, b, sa, sb;
  a << "epoch,explored_pct\n";
  for (std::size_t i = 0; i < coverage.x.size(); ++i) a << format_double(coverage.x[i]) << ',' << format_double(coverage.y[i]) << '\n';
  b << "explored_pct,energy_J\n";
  for (std::size_t i = 0; i < energy.x.size(); ++i) b << format_double(energy.x[i]) << ',' << format_double(energy.y[i]) << '\n';
  write_svg_line_chart(sa, coverage, "Explored area per epoch", "epoch", "explored [%]");
  write_svg_line_chart(sb, energy, "Fleet energy versus coverage", "explored [%]", "energy used [J]");
  write_text_file((dir / "explored_vs_epoch.csv").string(), a.str());
  write_text_file((dir / "energy_vs_coverage.csv").string(), b.str());
  write_text_file((dir / "explored_vs_epoch.svg").string(), sa.str());
  write_text_file((dir / "energy_vs_coverage.svg").string(), sb.str());
  out << "plot data for " << coverage.x.size() << " epochs -> " << dir.string() << "\n";
  return kExitOk;
}

}  // namespace detail

// Parses argv, runs one subcommand and returns the process exit status.
inline int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  detail::CliOptions o;
  CLI::App app{"Fleet sizing and coverage planning for energy-limited ground robots", "sarplan"};
  app.require_subcommand(1, 1);

  auto common = [&](CLI::App* sub, bool mission_flags) {
    sub->add_option("--config", o.config, "run configuration (JSON)");
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    if (mission_flags) {
      sub->add_option("--mode", o.mode, "solver mode")->check(CLI::IsMember({"exact", "heuristic", "exact-then-heuristic"}));
      sub->add_option("--time-limit", o.time_limit_s, "exact search time limit in seconds");
      sub->add_option("--seed", o.seed, "seed for randomized heuristic restarts");
    }
  };
  auto* ingest = app.add_subcommand("ingest", "DEM or synthetic terrain -> cell grid JSON");
  common(ingest, false);
  auto* costs = app.add_subcommand("costs", "grid + profile -> move cost CSV");
  common(costs, false);
  auto* plan = app.add_subcommand("plan", "minimum fleet and paths -> plan JSON and summary");
  common(plan, true);
  auto* lp = app.add_subcommand("export-lp", "planning model for one fleet size -> CPLEX LP file");
  common(lp, true);
  lp->add_option("--fleet", o.fleet, "number of robots")->capture_default_str();
  auto* sim = app.add_subcommand("simulate", "replay a plan -> per-epoch report CSV and JSON summary");
  common(sim, true);
  sim->add_option("--plan", o.plan, "plan JSON written by `plan`")->required();
  auto* report = app.add_subcommand("report", "report CSV -> plot data and SVG charts");
  report->add_option("--report", o.report, "report CSV written by `simulate`")->required();
  report->add_option("--out", o.out, "output directory")->capture_default_str();
  for (auto* sub : {ingest, costs, plan, lp, sim}) sub->get_option("--config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest) return detail::run_ingest(o, out);
    if (*costs) return detail::run_costs(o, out);
    if (*plan) return detail::run_plan(o, out);
    if (*lp) return detail::run_export_lp(o, out);
    if (*sim) return detail::run_simulate(o, out);
    if (*report) return detail::run_report(o, out);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace sarplan
