#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "sarplan/terrain.hpp"

using namespace sarplan;

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

HeightGrid ascii(const std::string& text) {
  std::istringstream in(text);
  return parse_ascii_grid(in);
}

HeightGrid csv(const std::string& text, double res = 1.0) {
  std::istringstream in(text);
  return parse_csv_heightmap(in, res);
}

const std::string kHeader2x2 =
    "ncols 2\n"
    "nrows 2\n"
    "xllcorner 0\n"
    "yllcorner 0\n"
    "cellsize 10\n"
    "NODATA_value -9999\n";

// Row 0 is north, so raster (row, col) lands in cell (col, rows-1-row) at
// matching resolution.
HeightGrid ramp_raster(int n, double res, double rise_per_m) {
  HeightGrid hg;
  hg.rows = n;
  hg.cols = n;
  hg.resolution_m = res;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) hg.heights.push_back(rise_per_m * (c + 0.5) * res);
  return hg;
}

}  // namespace

TEST(AsciiGrid, FlatTwoByTwo) {
  const auto hg = ascii(kHeader2x2 + "0 0\n0 0\n");
  EXPECT_EQ(hg.rows, 2);
  EXPECT_EQ(hg.cols, 2);
  EXPECT_DOUBLE_EQ(hg.resolution_m, 10.0);
  for (double h : hg.heights) EXPECT_EQ(h, 0.0);
}

TEST(AsciiGrid, HeaderKeysAreCaseInsensitive) {
  const auto hg = ascii("NCOLS 1\nNRows 1\nXLLCORNER 5\nyllCorner 7\nCELLSIZE 2\nnodata_value -1\n3.5\n");
  EXPECT_DOUBLE_EQ(hg.origin_x, 5.0);
  EXPECT_DOUBLE_EQ(hg.origin_y, 7.0);
  EXPECT_DOUBLE_EQ(hg.nodata, -1.0);
  EXPECT_DOUBLE_EQ(hg.at(0, 0), 3.5);
}

TEST(AsciiGrid, KeepsNodataSentinel) {
  const auto hg = ascii(kHeader2x2 + "1 -9999\n2 3\n");
  EXPECT_TRUE(hg.is_nodata(hg.at(0, 1)));
  EXPECT_FALSE(hg.is_nodata(hg.at(1, 0)));
}

TEST(AsciiGrid, WrongHeaderKeyNamesLineAndColumn) {
  try {
    ascii("ncols 2\nnrows 2\nyllcorner 0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 1u);
  }
}

TEST(AsciiGrid, NonNumericCellNamesLineAndColumn) {
  try {
    ascii(kHeader2x2 + "0 0\n0 abc\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 8u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_NE(std::string(e.what()).find("abc"), std::string::npos);
  }
}

TEST(AsciiGrid, RaggedRowIsRejected) {
  try {
    ascii(kHeader2x2 + "0 0 0\n0 0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7u);
  }
}

TEST(AsciiGrid, MissingRowsAndTrailingData) {
  EXPECT_THROW(ascii(kHeader2x2 + "0 0\n"), ParseError);
  EXPECT_THROW(ascii(kHeader2x2 + "0 0\n0 0\n1 1\n"), ParseError);
  EXPECT_NO_THROW(ascii(kHeader2x2 + "0 0\r\n0 0\r\n\n"));
}

TEST(AsciiGrid, BadHeaderValues) {
  EXPECT_THROW(ascii("ncols 0\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 1\nnodata_value -1\n"), ParseError);
  EXPECT_THROW(ascii("ncols 1.5\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 1\nnodata_value -1\n1\n"), ParseError);
  EXPECT_THROW(ascii("ncols 1\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize -1\nnodata_value -1\n1\n"), ParseError);
  EXPECT_THROW(ascii("ncols x\n"), ParseError);
}

TEST(CsvHeightmap, ReadsBackRowMajor) {
  const auto hg = csv("0,1,2\n3,4,5\n6,7,8\n");
  EXPECT_EQ(hg.rows, 3);
  EXPECT_EQ(hg.cols, 3);
  EXPECT_EQ(hg.at(2, 2), 8.0);
  EXPECT_EQ(hg.at(1, 0), 3.0);
}

TEST(CsvHeightmap, ErrorsCarryPosition) {
  try {
    csv("0,1,2\n3,x,5\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
  try {
    csv("0,1,2\n3,4\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(csv(""), ParseError);
}

TEST(LoadDem, ShippedFixtures) {
  const std::string root = SARPLAN_SOURCE_DIR;
  const auto hill = load_dem(root + "/data/dem/hill_50m.asc", DemFormat::AsciiGrid);
  EXPECT_EQ(hill.rows, 25);
  EXPECT_EQ(hill.cols, 25);
  const auto ramp = load_dem(root + "/data/dem/ramp_3x3.csv", DemFormat::CsvHeightmap);
  EXPECT_EQ(ramp.rows, 3);
  EXPECT_THROW(load_dem(root + "/data/dem/does_not_exist.asc", DemFormat::AsciiGrid), IoError);
}

TEST(Discretize, FlatGivesZeroSlopes) {
  for (double cs : {1.0, 2.0, 5.0}) {
    const auto g = discretize(ascii("ncols 10\nnrows 10\nxllcorner 0\nyllcorner 0\ncellsize 1\nnodata_value -9999\n" + [] {
                                std::string s;
                                for (int r = 0; r < 10; ++r) s += "4 4 4 4 4 4 4 4 4 4\n";
                                return s;
                              }()),
                              cs);
    for (int k = 0; k < g.cell_count(); ++k)
      for (auto d : kDirections)
        if (d != Direction::Stay && g.edge(g.cell(k), d).valid) EXPECT_EQ(g.edge(g.cell(k), d).slope_deg, 0.0);
  }
}

TEST(Discretize, CellHeightIsMeanOfSupport) {
  // 4x4 raster at 1 m into 2 m cells; north rows first.
  const auto hg = csv("1,2,10,10\n3,4,10,10\n0,0,5,7\n0,0,5,7\n");
  const auto g = discretize(hg, 2.0);
  ASSERT_EQ(g.A(), 2);
  ASSERT_EQ(g.B(), 2);
  EXPECT_DOUBLE_EQ(g.height({0, 1}), 2.5);
  EXPECT_DOUBLE_EQ(g.height({1, 1}), 10.0);
  EXPECT_DOUBLE_EQ(g.height({0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(g.height({1, 0}), 6.0);
}

TEST(Discretize, PartialCellsAreDropped) {
  const auto g = discretize(ramp_raster(5, 1.0, 0.0), 2.0);
  EXPECT_EQ(g.A(), 2);
  EXPECT_EQ(g.B(), 2);
  EXPECT_LE(g.A() * 2.0, 5.0);
}

TEST(Discretize, RampSlopes) {
  const auto g = discretize(ramp_raster(30, 1.0, 0.1), 10.0);
  ASSERT_EQ(g.A(), 3);
  const auto& ax = g.edge({0, 0}, Direction::E);
  EXPECT_DOUBLE_EQ(ax.distance_m, 10.0);
  EXPECT_NEAR(ax.slope_deg, 5.71, 0.005);
  const auto& dg = g.edge({0, 0}, Direction::NE);
  EXPECT_NEAR(dg.distance_m, 10.0 * std::numbers::sqrt2, 1e-12);
  EXPECT_NEAR(dg.slope_deg, std::atan(1.0 / (10.0 * std::numbers::sqrt2)) * kDeg, 1e-9);
  EXPECT_NEAR(dg.slope_deg, 4.04, 0.01);
  EXPECT_NEAR(g.edge({0, 0}, Direction::N).slope_deg, 0.0, 1e-12);
}

TEST(Discretize, NodataSupport) {
  // Cell (0,1) fully nodata: error naming the cell.
  try {
    discretize(csv("-9999,-9999,1,1\n-9999,-9999,1,1\n1,1,1,1\n1,1,1,1\n"), 2.0);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("(0,1)"), std::string::npos);
  }
  // Half valid stays traversable; one valid sample of four does not.
  const auto half = discretize(csv("-9999,-9999,1,1\n2,2,1,1\n1,1,1,1\n1,1,1,1\n"), 2.0);
  EXPECT_TRUE(half.traversable({0, 1}));
  EXPECT_DOUBLE_EQ(half.height({0, 1}), 2.0);
  const auto quarter = discretize(csv("-9999,-9999,1,1\n-9999,2,1,1\n1,1,1,1\n1,1,1,1\n"), 2.0);
  EXPECT_FALSE(quarter.traversable({0, 1}));
  EXPECT_EQ(quarter.out_degree({0, 1}), 0);
  EXPECT_FALSE(quarter.edge({0, 0}, Direction::N).valid);
}

TEST(Discretize, HillFixtureHasBlockedPond) {
  const auto hg = load_dem(std::string(SARPLAN_SOURCE_DIR) + "/data/dem/hill_50m.asc", DemFormat::AsciiGrid);
  const auto g = discretize(hg, 10.0);
  EXPECT_EQ(g.A(), 5);
  EXPECT_EQ(g.B(), 5);
  int blocked = 0;
  for (int k = 0; k < g.cell_count(); ++k) blocked += g.traversable(g.cell(k)) ? 0 : 1;
  EXPECT_GE(blocked, 1);
}

TEST(Discretize, Preconditions) {
  EXPECT_THROW(discretize(ramp_raster(4, 2.0, 0.0), 1.0), ConfigError);
  EXPECT_THROW(discretize(ramp_raster(4, 1.0, 0.0), 5.0), ConfigError);
}

TEST(SynthTerrain, FlatFiveByFive) {
  const auto g = synth_terrain(SynthTerrain::flat(), 5, 5, 10.0);
  EXPECT_EQ(g.cell_count(), 25);
  for (int k = 0; k < 25; ++k)
    for (auto d : kDirections)
      if (d != Direction::Stay && g.edge(g.cell(k), d).valid) EXPECT_EQ(g.edge(g.cell(k), d).slope_deg, 0.0);
}

TEST(SynthTerrain, RampEastEdges) {
  const auto g = synth_terrain(SynthTerrain::ramp(0.1), 5, 5, 10.0);
  for (int a = 0; a + 1 < 5; ++a)
    for (int b = 0; b < 5; ++b) EXPECT_NEAR(g.edge({a, b}, Direction::E).slope_deg, std::atan(0.1) * kDeg, 1e-12);
  EXPECT_NEAR(g.edge({0, 0}, Direction::E).slope_deg, 5.71, 0.005);
}

TEST(SynthTerrain, RidgeMirrors) {
  const auto g = synth_terrain(SynthTerrain::ridge(5.0), 5, 5, 10.0);
  EXPECT_GT(g.edge({0, 2}, Direction::E).slope_deg, 0.0);
  EXPECT_DOUBLE_EQ(g.edge({0, 2}, Direction::E).slope_deg, g.edge({4, 2}, Direction::W).slope_deg);
  EXPECT_DOUBLE_EQ(g.edge({1, 2}, Direction::E).slope_deg, g.edge({3, 2}, Direction::W).slope_deg);
}

TEST(SynthTerrain, RejectsBadParameters) {
  EXPECT_THROW(synth_terrain(SynthTerrain::ramp(std::nan("")), 3, 3, 10.0), ConfigError);
  EXPECT_THROW(synth_terrain(SynthTerrain::ridge(INFINITY), 3, 3, 10.0), ConfigError);
  EXPECT_THROW(synth_terrain(SynthTerrain::flat(), 0, 3, 10.0), ConfigError);
  EXPECT_THROW(synth_terrain(SynthTerrain::flat(), 3, 3, 0.0), ConfigError);
}

TEST(CellGridProperties, EdgeAntisymmetryAndBounds) {
  const auto hg = load_dem(std::string(SARPLAN_SOURCE_DIR) + "/data/dem/hill_50m.asc", DemFormat::AsciiGrid);
  for (const auto& g : {discretize(hg, 10.0), discretize(ramp_raster(30, 1.0, 0.3), 3.0), synth_terrain(SynthTerrain::ridge(30.0), 6, 4, 3.0)}) {
    for (int k = 0; k < g.cell_count(); ++k) {
      const Cell u = g.cell(k);
      for (auto d : kDirections) {
        if (d == Direction::Stay || !g.edge(u, d).valid) continue;
        const Cell v = *g.step(u, d);
        const auto& back = g.edge(v, opposite(d));
        ASSERT_TRUE(back.valid);
        EXPECT_EQ(g.edge(u, d).slope_deg, -back.slope_deg);
        EXPECT_LT(std::abs(g.edge(u, d).slope_deg), 90.0);
        EXPECT_DOUBLE_EQ(g.edge(u, d).distance_m, is_diagonal(d) ? g.cell_size_m() * std::numbers::sqrt2 : g.cell_size_m());
      }
    }
  }
}

TEST(CellGridProperties, ClosedCycleHeightSumIsZero) {
  const auto g = synth_terrain(SynthTerrain::ridge(7.3), 5, 5, 10.0);
  // Signed rise recovered from each edge: tan(slope) * distance.
  auto rise = [&](Cell u, Direction d) { return std::tan(g.edge(u, d).slope_deg / kDeg) * g.edge(u, d).distance_m; };
  const Cell c0{1, 1};
  const Direction cycle[] = {Direction::E, Direction::NE, Direction::W, Direction::SW, Direction::S, Direction::N};
  double sum = 0.0;
  Cell c = c0;
  for (auto d : cycle) {
    sum += rise(c, d);
    c = *g.step(c, d);
  }
  EXPECT_EQ(c, (Cell{1, 1}));
  EXPECT_NEAR(sum, 0.0, 1e-9);
}

TEST(CellGridProperties, NeighborhoodDegrees) {
  const auto g = synth_terrain(SynthTerrain::flat(), 5, 4, 10.0);
  for (int k = 0; k < g.cell_count(); ++k) {
    const Cell c = g.cell(k);
    const bool edge_a = c.a == 0 || c.a == g.A() - 1, edge_b = c.b == 0 || c.b == g.B() - 1;
    const int expect = edge_a && edge_b ? 3 : (edge_a || edge_b ? 5 : 8);
    EXPECT_EQ(g.out_degree(c), expect) << c.a << "," << c.b;
  }
}

TEST(Directions, OrderAndHelpers) {
  EXPECT_EQ(kDirections[1], Direction::E);
  EXPECT_EQ(kDirections[8], Direction::SE);
  for (auto d : kDirections) {
    EXPECT_EQ(opposite(opposite(d)), d);
    const auto o = offset(d), r = offset(opposite(d));
    EXPECT_EQ(o.da, -r.da);
    EXPECT_EQ(o.db, -r.db);
    EXPECT_EQ(direction_between({2, 2}, {2 + o.da, 2 + o.db}), d);
  }
  EXPECT_FALSE(direction_between({0, 0}, {2, 0}).has_value());
}
