#include <sstream>

#include <gtest/gtest.h>

#include "sarplan/sarplan.hpp"

using namespace sarplan;

namespace {

std::string src(const std::string& rel) { return std::string(SARPLAN_SOURCE_DIR) + "/" + rel; }

const std::vector<Cell> kLine{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}};

SimConfig sim_cfg(double err = 1.0) {
  SimConfig c;
  c.err = err;
  return c;
}

// mu m g d for one flat 10 m move.
const double kFlatMove = 0.1 * 7.51 * 9.81 * 10.0;

double base_J(const EnergyProfile& p) { return (p.p_rx_W + p.p_idle_W) * 10.0; }
double sense_J(const EnergyProfile& p) { return (p.p_sen_W + p.p_tx0_W) * 10.0; }

void expect_identity(const MissionReport& rep) {
  for (std::size_t r = 0; r < rep.energy_J.size(); ++r)
    EXPECT_NEAR(rep.energy_J[r], rep.motion_energy_J[r] + rep.component_energy_J[r], 1e-6) << "robot " << r;
}

}  // namespace

TEST(Simulator, FlatLine) {
  const auto g = synth_terrain(SynthTerrain::flat(), 5, 5, 10.0);
  const auto p = default_wheeled_profile();
  const auto rep = simulate({kLine}, g, p, CommModel{}, sim_cfg(0.2));
  EXPECT_EQ(rep.epochs(), 5);
  EXPECT_EQ(rep.depleted_robots, 0);
  EXPECT_NEAR(rep.motion_energy_J[0], 4 * kFlatMove, 1e-9);
  EXPECT_NEAR(rep.motion_energy_J[0], 294.7, 0.01);
  EXPECT_NEAR(rep.component_energy_J[0], 4 * (base_J(p) + sense_J(p)), 1e-9);
  EXPECT_NEAR(rep.energy_J[0], 4 * (kFlatMove + 42.9 + 169.5), 1e-9);
  expect_identity(rep);

  EXPECT_EQ(rep.explored_cells, (std::vector<int>{1, 2, 3, 4, 5}));
  EXPECT_DOUBLE_EQ(rep.explored_pct.back(), 20.0);
  // Target of 5 cells is reached in the last epoch.
  ASSERT_TRUE(rep.completion_epoch);
  EXPECT_EQ(*rep.completion_epoch, 5);

  const auto& steps = rep.robots[0];
  ASSERT_EQ(steps.size(), 5u);
  EXPECT_EQ(steps.back().cell, (Cell{4, 0}));
  EXPECT_DOUBLE_EQ(steps.front().battery_J, p.battery_capacity_J);
  for (std::size_t t = 1; t < steps.size(); ++t) EXPECT_LT(steps[t].battery_J, steps[t - 1].battery_J);
  EXPECT_NEAR(steps.back().motion_energy_J_cum, 4 * kFlatMove, 1e-9);
}

TEST(Simulator, RampCostsMore) {
  const auto g = synth_terrain(SynthTerrain::ramp(0.1), 5, 5, 10.0);
  const auto p = default_wheeled_profile();
  const auto rep = simulate({kLine}, g, p, CommModel{}, sim_cfg());
  EXPECT_NEAR(rep.motion_energy_J[0] / 4.0, 146.6, 0.5);
  double expected = 0.0;
  for (int a = 0; a < 4; ++a) {
    const Edge& e = g.edge({a, 0}, *direction_between({a, 0}, {a + 1, 0}));
    expected += move_energy(p, e.slope_deg, e.distance_m);
  }
  EXPECT_NEAR(rep.motion_energy_J[0], expected, 1e-9);
  // Elevation follows the ramp.
  EXPECT_NEAR(rep.robots[0].back().elevation_m - rep.robots[0].front().elevation_m, 4.0, 1e-9);
  expect_identity(rep);
}

TEST(Simulator, WaitingCostsBaseOnly) {
  const auto g = synth_terrain(SynthTerrain::flat(), 2, 2, 10.0);
  const auto p = default_wheeled_profile();
  const auto rep = simulate({{{0, 0}, {0, 0}, {0, 0}}}, g, p, CommModel{}, sim_cfg());
  EXPECT_EQ(rep.epochs(), 3);
  EXPECT_DOUBLE_EQ(rep.motion_energy_J[0], 0.0);
  EXPECT_NEAR(rep.energy_J[0], 2 * base_J(p), 1e-9);
  EXPECT_FALSE(rep.completion_epoch);
}

TEST(Simulator, RevisitSkipsSensing) {
  const auto g = synth_terrain(SynthTerrain::flat(), 2, 1, 10.0);
  const auto p = default_wheeled_profile();
  const auto rep = simulate({{{0, 0}, {1, 0}, {0, 0}}}, g, p, CommModel{}, sim_cfg());
  EXPECT_NEAR(rep.component_energy_J[0], 2 * base_J(p) + sense_J(p), 1e-9);
}

TEST(Simulator, SimultaneousArrivalSensesTwice) {
  // Both robots enter the same fresh cell in the same epoch; each pays for sensing.
  const auto g = synth_terrain(SynthTerrain::flat(), 3, 1, 10.0);
  const auto p = default_wheeled_profile();
  const auto rep = simulate({{{0, 0}, {1, 0}}, {{2, 0}, {1, 0}}}, g, p, CommModel{}, sim_cfg());
  EXPECT_NEAR(rep.component_energy_J[0], base_J(p) + sense_J(p), 1e-9);
  EXPECT_NEAR(rep.component_energy_J[1], base_J(p) + sense_J(p), 1e-9);
  EXPECT_EQ(rep.explored_cells.back(), 3);
}

TEST(Simulator, TransmitGrowsWithDistance) {
  const auto g = synth_terrain(SynthTerrain::flat(), 5, 1, 10.0);
  const auto p = default_wheeled_profile();
  const CommModel comm{{0, 0}, 0.5, 100.0};
  const auto rep = simulate({{{3, 0}, {4, 0}}}, g, p, comm, sim_cfg());
  const double tx = p.p_tx0_W * (1.0 + 0.5 * 40.0 / 100.0);
  EXPECT_NEAR(rep.component_energy_J[0], base_J(p) + (p.p_sen_W + tx) * 10.0, 1e-9);
}

TEST(Simulator, StretchedMove) {
  const auto p = load_profile(src("data/profiles/wheeled_capped.profile"));
  const auto g = synth_terrain(SynthTerrain::flat(), 2, 1, 10.0);
  const auto rep = simulate({{{0, 0}, {1, 0}}}, g, p, CommModel{}, sim_cfg());
  // 10 m at 0.4 m/s is 25 s, so three 10 s epochs.
  EXPECT_EQ(rep.epochs(), 4);
  EXPECT_EQ(rep.explored_cells, (std::vector<int>{1, 1, 1, 2}));
  ASSERT_TRUE(rep.completion_epoch);
  EXPECT_EQ(*rep.completion_epoch, 4);
  const auto& s = rep.robots[0];
  EXPECT_EQ(s[1].cell, (Cell{0, 0}));
  EXPECT_EQ(s[3].cell, (Cell{1, 0}));
  EXPECT_NEAR(s[1].motion_energy_J_cum * 3.0, rep.motion_energy_J[0], 1e-9);
  EXPECT_DOUBLE_EQ(s[1].speed_mps, 0.4);
  EXPECT_NEAR(rep.component_energy_J[0], 3 * base_J(p) + sense_J(p), 1e-9);

  SimConfig one = sim_cfg();
  one.stretch_long_moves = false;
  EXPECT_EQ(simulate({{{0, 0}, {1, 0}}}, g, p, CommModel{}, one).epochs(), 2);
}

TEST(Simulator, SlowerRobotKeepsOthersRunning) {
  const auto p = load_profile(src("data/profiles/wheeled_capped.profile"));
  const auto g = synth_terrain(SynthTerrain::flat(), 3, 1, 10.0);
  const auto rep = simulate({{{0, 0}, {1, 0}}, {{2, 0}, {2, 0}}}, g, p, CommModel{}, sim_cfg());
  EXPECT_EQ(rep.epochs(), 4);
  EXPECT_EQ(rep.robots[1].size(), 4u);
  EXPECT_EQ(rep.robots[1].back().cell, (Cell{2, 0}));
}

TEST(Simulator, Depletion) {
  const auto g = synth_terrain(SynthTerrain::flat(), 5, 5, 10.0);
  const auto p = default_wheeled_profile();
  SimConfig c = sim_cfg();
  c.battery_init_J = {600.0};
  const auto rep = simulate({kLine}, g, p, CommModel{}, c);
  // Each fresh move costs 286.1 J, so the third one cannot be paid for.
  EXPECT_EQ(rep.depleted_robots, 1);
  EXPECT_EQ(rep.depleted_at[0], 3);
  EXPECT_EQ(rep.explored_cells.back(), 3);
  EXPECT_EQ(rep.robots[0].back().cell, (Cell{2, 0}));
  EXPECT_TRUE(rep.robots[0].back().depleted);
  EXPECT_DOUBLE_EQ(rep.robots[0].back().battery_J, 0.0);
  EXPECT_DOUBLE_EQ(rep.energy_J[0], 600.0);
  expect_identity(rep);
  for (const auto& st : rep.robots[0]) EXPECT_GE(st.battery_J, 0.0);
}

TEST(Simulator, DepletingConfig) {
  const RunConfig cfg = load_run_config(src("configs/depleting.json"));
  MissionSpec spec = cfg.require_mission();
  const MissionPlan plan = plan_mission(spec);
  ASSERT_TRUE(plan.met_requirements);
  SimConfig sim = cfg.sim;
  sim.battery_init_J.assign(plan.paths.size(), sim.battery_init_J.front());
  const auto rep = simulate(plan, cfg.require_grid(), cfg.require_profile(), cfg.comm, sim);
  EXPECT_EQ(rep.depleted_robots, 1);
  EXPECT_FALSE(rep.completion_epoch);
  expect_identity(rep);
}

TEST(Simulator, AgreesWithPlan) {
  for (const char* name : {"small_wheeled.json", "small_quadruped.json", "ramp_wheeled.json"}) {
    SCOPED_TRACE(name);
    const RunConfig cfg = load_run_config(src(std::string("configs/") + name));
    const MissionPlan plan = plan_mission(cfg.require_mission());
    ASSERT_TRUE(plan.met_requirements);
    const auto rep = simulate(plan, cfg.require_grid(), cfg.require_profile(), cfg.comm, cfg.sim);
    EXPECT_EQ(rep.depleted_robots, 0);
    ASSERT_TRUE(rep.completion_epoch);
    EXPECT_EQ(*rep.completion_epoch, plan.completion_epochs + 1);
    EXPECT_NEAR(rep.explored_pct.back(), plan.expected_explored_pct, 1e-9);
    EXPECT_EQ(rep.epochs(), plan.horizon);
    // Battery after replay matches the planner's bookkeeping.
    for (std::size_t r = 0; r < plan.paths.size(); ++r)
      EXPECT_NEAR(rep.robots[r].back().battery_J, plan.solution.battery_J[r].back(), 1e-6) << "robot " << r;
    expect_identity(rep);
  }
}

TEST(Simulator, BadPaths) {
  const auto g = synth_terrain(SynthTerrain::flat(), 3, 3, 10.0);
  const auto p = default_wheeled_profile();
  auto message = [&](const std::vector<std::vector<Cell>>& paths) {
    try {
      simulate(paths, g, p, CommModel{}, sim_cfg());
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message({{{0, 0}, {1, 0}, {1, 2}}}).find("robot 0, epoch 2"), std::string::npos);
  EXPECT_NE(message({{{0, 0}}, {{0, 0}, {5, 0}}}).find("robot 1, epoch 1"), std::string::npos);
  EXPECT_NE(message({{}}).find("empty path"), std::string::npos);

  SimConfig c = sim_cfg();
  c.battery_init_J = {1.0, 2.0};
  EXPECT_THROW(simulate(std::vector<std::vector<Cell>>{{{0, 0}}}, g, p, CommModel{}, c), ConfigError);
  c.battery_init_J = {-1.0};
  EXPECT_THROW(simulate(std::vector<std::vector<Cell>>{{{0, 0}}}, g, p, CommModel{}, c), ConfigError);
  c = sim_cfg();
  c.epoch_s = 0.0;
  EXPECT_THROW(simulate(std::vector<std::vector<Cell>>{{{0, 0}}}, g, p, CommModel{}, c), ConfigError);

  const CellGrid holes(2, 1, 10.0, {0, 0}, {1, 0});
  EXPECT_THROW(simulate({{{0, 0}, {1, 0}}}, holes, p, CommModel{}, sim_cfg()), ConfigError);
}

TEST(Simulator, EmptyFleet) {
  const auto g = synth_terrain(SynthTerrain::flat(), 2, 2, 10.0);
  const auto rep = simulate(std::vector<std::vector<Cell>>{}, g, default_wheeled_profile(), CommModel{}, sim_cfg(0.0));
  EXPECT_EQ(rep.epochs(), 1);
  EXPECT_EQ(rep.depleted_robots, 0);
  ASSERT_TRUE(rep.completion_epoch);
  EXPECT_EQ(*rep.completion_epoch, 1);
}

TEST(Simulator, ReportCsv) {
  const auto g = synth_terrain(SynthTerrain::ramp(0.1), 5, 5, 10.0);
  const auto rep = simulate({kLine, {{0, 4}, {0, 3}}}, g, default_wheeled_profile(), CommModel{}, sim_cfg());
  std::ostringstream out;
  write_report_csv(rep, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line,
            "epoch,explored_pct,r0_a,r0_b,r0_battery_J,r0_speed_mps,r0_elevation_m,r0_motion_energy_J,"
            "r1_a,r1_b,r1_battery_J,r1_speed_mps,r1_elevation_m,r1_motion_energy_J");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.rfind(std::to_string(rows) + ",", 0), 0u) << line;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 13);
  }
  EXPECT_EQ(rows, rep.epochs());

  std::ostringstream again;
  write_report_csv(rep, again);
  EXPECT_EQ(out.str(), again.str());
}

TEST(Simulator, SummaryJson) {
  const auto g = synth_terrain(SynthTerrain::flat(), 5, 5, 10.0);
  const auto rep = simulate({kLine}, g, default_wheeled_profile(), CommModel{}, sim_cfg(0.2));
  const json j = report_summary_json(rep);
  EXPECT_EQ(j["epochs"], 5);
  EXPECT_EQ(j["completion_epoch"], 5);
  EXPECT_EQ(j["depleted_robots"], 0);
  EXPECT_DOUBLE_EQ(j["final_explored_pct"].get<double>(), 20.0);
}
