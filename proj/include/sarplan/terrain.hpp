#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sarplan/error.hpp"

namespace sarplan {

// Grid coordinates: `a` runs along x (east), `b` along y (north). (0,0) is the
// south-west cell.
struct Cell {
  int a = 0;
  int b = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Move directions in the fixed expansion order used everywhere a tie has to
// be broken deterministically.
enum class Direction : std::uint8_t { Stay = 0, E, NE, N, NW, W, SW, S, SE };

inline constexpr int kDirectionCount = 9;
inline constexpr std::array<Direction, kDirectionCount> kDirections = {
    Direction::Stay, Direction::E,  Direction::NE, Direction::N, Direction::NW,
    Direction::W,    Direction::SW, Direction::S,  Direction::SE};

struct Offset {
  int da;
  int db;
};

constexpr Offset offset(Direction d) {
  constexpr std::array<Offset, kDirectionCount> table = {
      {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};
  return table[static_cast<std::size_t>(d)];
}

constexpr bool is_diagonal(Direction d) {
  const auto o = offset(d);
  return o.da != 0 && o.db != 0;
}

constexpr Direction opposite(Direction d) {
  if (d == Direction::Stay) return d;
  auto i = static_cast<int>(d) - 1;
  return static_cast<Direction>((i + 4) % 8 + 1);
}

// Direction from `from` to an 8-neighbor (or itself); nullopt if not adjacent.
constexpr std::optional<Direction> direction_between(Cell from, Cell to) {
  const int da = to.a - from.a;
  const int db = to.b - from.b;
  for (auto d : kDirections) {
    const auto o = offset(d);
    if (o.da == da && o.db == db) return d;
  }
  return std::nullopt;
}

inline const char* direction_name(Direction d) {
  constexpr std::array<const char*, kDirectionCount> names = {"stay", "E",  "NE", "N", "NW",
                                                               "W",    "SW", "S",  "SE"};
  return names[static_cast<std::size_t>(d)];
}

// ---------------------------------------------------------------------------
// Raster input

struct HeightGrid {
  int rows = 0;
  int cols = 0;
  double resolution_m = 1.0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  double nodata = -9999.0;
  // Row-major, row 0 is the northernmost raster row.
  std::vector<double> heights;

  double at(int row, int col) const { return heights[static_cast<std::size_t>(row) * cols + col]; }
  bool is_nodata(double h) const { return h == nodata; }
};

enum class DemFormat { AsciiGrid, CsvHeightmap };

namespace detail {

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline std::optional<double> parse_double(std::string_view token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

// Splits on any run of the given separators; records the 1-based column at
// which each token starts.
struct Token {
  std::string_view text;
  std::size_t column;
};

inline std::vector<Token> split_whitespace(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

inline std::vector<Token> split_csv(std::string_view line) {
  std::vector<Token> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      std::string_view field = line.substr(start, i - start);
      std::size_t lead = 0;
      while (lead < field.size() && std::isspace(static_cast<unsigned char>(field[lead]))) ++lead;
      std::size_t end = field.size();
      while (end > lead && std::isspace(static_cast<unsigned char>(field[end - 1]))) --end;
      out.push_back({field.substr(lead, end - lead), start + lead + 1});
      start = i + 1;
    }
  }
  return out;
}

inline std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

inline bool blank(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace detail

// ESRI ASCII grid: six header lines (ncols, nrows, xllcorner, yllcorner,
// cellsize, NODATA_value; keys case-insensitive, fixed order), then nrows lines
// of ncols whitespace-separated values, northernmost row first.
inline HeightGrid parse_ascii_grid(std::istream& in) {
  static constexpr std::array<std::string_view, 6> keys = {"ncols",     "nrows",    "xllcorner",
                                                           "yllcorner", "cellsize", "nodata_value"};
  std::array<double, 6> header{};
  std::string line;
  std::size_t line_no = 0;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (!std::getline(in, line)) throw ParseError("missing header key '" + std::string(keys[k]) + "'", line_no + 1);
    ++line_no;
    auto tokens = detail::split_whitespace(detail::strip_cr(line));
    if (tokens.size() != 2) throw ParseError("header line must be '<key> <value>'", line_no, 1);
    if (detail::lower(tokens[0].text) != keys[k])
      throw ParseError("expected header key '" + std::string(keys[k]) + "', found '" +
                           std::string(tokens[0].text) + "'",
                       line_no, tokens[0].column);
    auto v = detail::parse_double(tokens[1].text);
    if (!v) throw ParseError("non-numeric header value '" + std::string(tokens[1].text) + "'", line_no, tokens[1].column);
    header[k] = *v;
  }
  HeightGrid g;
  if (header[0] < 1 || header[0] != std::floor(header[0])) throw ParseError("ncols must be a positive integer", 1, 1);
  if (header[1] < 1 || header[1] != std::floor(header[1])) throw ParseError("nrows must be a positive integer", 2, 1);
  if (header[4] <= 0) throw ParseError("cellsize must be positive", 5, 1);
  g.cols = static_cast<int>(header[0]);
  g.rows = static_cast<int>(header[1]);
  g.origin_x = header[2];
  g.origin_y = header[3];
  g.resolution_m = header[4];
  g.nodata = header[5];
  g.heights.reserve(static_cast<std::size_t>(g.rows) * g.cols);

  int row = 0;
  while (row < g.rows) {
    if (!std::getline(in, line)) throw ParseError("expected " + std::to_string(g.rows) + " raster rows, found " + std::to_string(row), line_no + 1);
    ++line_no;
    auto text = detail::strip_cr(line);
    if (detail::blank(text)) continue;
    auto tokens = detail::split_whitespace(text);
    if (static_cast<int>(tokens.size()) != g.cols)
      throw ParseError("row has " + std::to_string(tokens.size()) + " values, expected " + std::to_string(g.cols), line_no,
                       tokens.empty() ? 1 : tokens.back().column);
    for (const auto& t : tokens) {
      auto v = detail::parse_double(t.text);
      if (!v) throw ParseError("non-numeric cell '" + std::string(t.text) + "'", line_no, t.column);
      g.heights.push_back(*v);
    }
    ++row;
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!detail::blank(detail::strip_cr(line))) throw ParseError("unexpected data after last raster row", line_no, 1);
  }
  return g;
}

// Headerless CSV heightmap, row-major, first line northernmost. Values equal to
// `nodata` are kept as nodata.
inline HeightGrid parse_csv_heightmap(std::istream& in, double resolution_m = 1.0, double nodata = -9999.0) {
  if (!(resolution_m > 0)) throw ConfigError("CSV heightmap resolution must be positive");
  HeightGrid g;
  g.resolution_m = resolution_m;
  g.nodata = nodata;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = detail::strip_cr(line);
    if (detail::blank(text)) continue;
    auto tokens = detail::split_csv(text);
    if (g.rows == 0) {
      g.cols = static_cast<int>(tokens.size());
    } else if (static_cast<int>(tokens.size()) != g.cols) {
      throw ParseError("row has " + std::to_string(tokens.size()) + " values, expected " + std::to_string(g.cols), line_no,
                       tokens.back().column);
    }
    for (const auto& t : tokens) {
      auto v = detail::parse_double(t.text);
      if (!v) throw ParseError("non-numeric cell '" + std::string(t.text) + "'", line_no, t.column);
      g.heights.push_back(*v);
    }
    ++g.rows;
  }
  if (g.rows == 0) throw ParseError("empty heightmap", 1);
  return g;
}

inline HeightGrid load_dem(const std::string& path, DemFormat format, double csv_resolution_m = 1.0) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open DEM file '" + path + "'");
  return format == DemFormat::AsciiGrid ? parse_ascii_grid(in) : parse_csv_heightmap(in, csv_resolution_m);
}

// ---------------------------------------------------------------------------
// Mission grid

struct Edge {
  double distance_m = 0.0;
  double slope_deg = 0.0;
  bool valid = false;
};

class CellGrid {
 public:
  CellGrid() = default;

  // Builds edges from cell-center heights. Cells with traversable == false get
  // no edges in or out.
  CellGrid(int A, int B, double cell_size_m, std::vector<double> heights, std::vector<std::uint8_t> traversable = {})
      : A_(A), B_(B), cell_size_m_(cell_size_m), heights_(std::move(heights)), traversable_(std::move(traversable)) {
    if (A < 1 || B < 1) throw ConfigError("grid must have at least one cell");
    if (!(cell_size_m > 0)) throw ConfigError("cell size must be positive");
    if (heights_.size() != static_cast<std::size_t>(A) * B) throw ConfigError("height count does not match grid size");
    if (traversable_.empty()) traversable_.assign(heights_.size(), 1);
    if (traversable_.size() != heights_.size()) throw ConfigError("traversable mask does not match grid size");
    for (double h : heights_)
      if (!std::isfinite(h)) throw ConfigError("cell heights must be finite");
    build_edges();
  }

  int A() const noexcept { return A_; }
  int B() const noexcept { return B_; }
  int cell_count() const noexcept { return A_ * B_; }
  double cell_size_m() const noexcept { return cell_size_m_; }

  bool contains(Cell c) const noexcept { return c.a >= 0 && c.a < A_ && c.b >= 0 && c.b < B_; }
  int index(Cell c) const noexcept { return c.a * B_ + c.b; }
  Cell cell(int index) const noexcept { return {index / B_, index % B_}; }

  double height(Cell c) const { return heights_[index(c)]; }
  const std::vector<double>& heights() const noexcept { return heights_; }
  bool traversable(Cell c) const { return traversable_[index(c)] != 0; }
  const std::vector<std::uint8_t>& traversable_mask() const noexcept { return traversable_; }

  // Outgoing edge in direction d (d != Stay).
  const Edge& edge(Cell c, Direction d) const { return edges_[index(c)][static_cast<std::size_t>(d) - 1]; }

  int out_degree(Cell c) const {
    int n = 0;
    for (const auto& e : edges_[index(c)]) n += e.valid ? 1 : 0;
    return n;
  }

  // Neighbor reached by d, if the move exists (Stay always exists on a
  // traversable cell).
  std::optional<Cell> step(Cell c, Direction d) const {
    if (!contains(c) || !traversable(c)) return std::nullopt;
    if (d == Direction::Stay) return c;
    if (!edge(c, d).valid) return std::nullopt;
    const auto o = offset(d);
    return Cell{c.a + o.da, c.b + o.db};
  }

  // Distance between cell centers in meters.
  double center_distance_m(Cell u, Cell v) const {
    return cell_size_m_ * std::hypot(static_cast<double>(u.a - v.a), static_cast<double>(u.b - v.b));
  }

 private:
  void build_edges() {
    edges_.assign(heights_.size(), {});
    constexpr double to_deg = 180.0 / std::numbers::pi;
    for (int a = 0; a < A_; ++a) {
      for (int b = 0; b < B_; ++b) {
        const Cell u{a, b};
        if (!traversable(u)) continue;
        // Forward half of the neighborhood; the reverse edge is the exact negation.
        for (auto d : {Direction::E, Direction::NE, Direction::N, Direction::NW}) {
          const auto o = offset(d);
          const Cell v{a + o.da, b + o.db};
          if (!contains(v) || !traversable(v)) continue;
          const double dist = is_diagonal(d) ? cell_size_m_ * std::numbers::sqrt2 : cell_size_m_;
          const double slope = std::atan2(height(v) - height(u), dist) * to_deg;
          edges_[index(u)][static_cast<std::size_t>(d) - 1] = {dist, slope, true};
          edges_[index(v)][static_cast<std::size_t>(opposite(d)) - 1] = {dist, -slope, true};
        }
      }
    }
  }

  int A_ = 0;
  int B_ = 0;
  double cell_size_m_ = 0.0;
  std::vector<double> heights_;
  std::vector<std::uint8_t> traversable_;
  std::vector<std::array<Edge, 8>> edges_;
};

// Aggregates raster samples into square cells of `cell_size_m`. A sample
// belongs to the cell containing its center. Cell height is the mean of its
// valid samples; a cell is traversable when at least half of its support is
// valid. A cell with no valid sample is an error.
inline CellGrid discretize(const HeightGrid& hg, double cell_size_m) {
  if (hg.rows < 1 || hg.cols < 1 || !(hg.resolution_m > 0)) throw ConfigError("invalid height grid");
  if (!(cell_size_m >= hg.resolution_m))
    throw ConfigError("cell size " + std::to_string(cell_size_m) + " m is finer than raster resolution " +
                      std::to_string(hg.resolution_m) + " m");
  const double eps = 1e-9;
  const int A = static_cast<int>(std::floor(hg.cols * hg.resolution_m / cell_size_m + eps));
  const int B = static_cast<int>(std::floor(hg.rows * hg.resolution_m / cell_size_m + eps));
  if (A < 1 || B < 1) throw ConfigError("raster extent does not cover a single " + std::to_string(cell_size_m) + " m cell");

  const std::size_t n = static_cast<std::size_t>(A) * B;
  std::vector<double> sum(n, 0.0);
  std::vector<int> valid(n, 0), total(n, 0);
  for (int row = 0; row < hg.rows; ++row) {
    const double y = (hg.rows - 1 - row + 0.5) * hg.resolution_m;
    const int b = static_cast<int>(std::floor(y / cell_size_m));
    if (b >= B) continue;
    for (int col = 0; col < hg.cols; ++col) {
      const double x = (col + 0.5) * hg.resolution_m;
      const int a = static_cast<int>(std::floor(x / cell_size_m));
      if (a >= A) continue;
      const std::size_t k = static_cast<std::size_t>(a) * B + b;
      ++total[k];
      const double h = hg.at(row, col);
      if (hg.is_nodata(h)) continue;
      if (!std::isfinite(h)) throw ConfigError("non-finite height at raster row " + std::to_string(row) + ", column " + std::to_string(col));
      sum[k] += h;
      ++valid[k];
    }
  }
  std::vector<double> heights(n, 0.0);
  std::vector<std::uint8_t> traversable(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (valid[k] == 0) {
      throw ConfigError("cell (" + std::to_string(k / B) + "," + std::to_string(k % B) + ") has only nodata support");
    }
    heights[k] = sum[k] / valid[k];
    traversable[k] = 2 * valid[k] >= total[k] ? 1 : 0;
  }
  return CellGrid(A, B, cell_size_m, std::move(heights), std::move(traversable));
}

// ---------------------------------------------------------------------------
// Synthetic terrain for tests and scenario proxies.

struct SynthTerrain {
  enum class Kind { Flat, Ramp, Ridge };
  Kind kind = Kind::Flat;
  // Ramp: rise per meter of x. Ridge: peak height in meters (ridge runs along y
  // through the grid center and falls linearly to the x edges).
  double parameter = 0.0;

  static SynthTerrain flat() { return {Kind::Flat, 0.0}; }
  static SynthTerrain ramp(double grade) { return {Kind::Ramp, grade}; }
  static SynthTerrain ridge(double height) { return {Kind::Ridge, height}; }
};

inline CellGrid synth_terrain(SynthTerrain kind, int A, int B, double cell_size_m) {
  if (A < 1 || B < 1) throw ConfigError("synthetic grid needs A, B >= 1");
  if (!std::isfinite(kind.parameter)) throw ConfigError("synthetic terrain parameter must be finite");
  std::vector<double> heights(static_cast<std::size_t>(A) * B, 0.0);
  const double half_extent = 0.5 * A * cell_size_m;
  for (int a = 0; a < A; ++a) {
    const double x = (a + 0.5) * cell_size_m;
    double h = 0.0;
    switch (kind.kind) {
      case SynthTerrain::Kind::Flat: break;
      case SynthTerrain::Kind::Ramp: h = kind.parameter * x; break;
      case SynthTerrain::Kind::Ridge: h = kind.parameter * std::max(0.0, 1.0 - std::abs(x - half_extent) / half_extent); break;
    }
    for (int b = 0; b < B; ++b) heights[static_cast<std::size_t>(a) * B + b] = h;
  }
  return CellGrid(A, B, cell_size_m, std::move(heights));
}

}  // namespace sarplan
