#pragma once

// Occupancy maps and the two graphs derived from them: the coverage graph of
// unit cells and the spanning graph of 2x2 mega cells.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tmstc/error.hpp"
#include "tmstc/geometry.hpp"

namespace tmstc {

enum class MapFormat { kMovingAi, kGrid01 };

inline constexpr double kDefaultResolution = 0.5;

class GridMap {
 public:
  GridMap(int width, int height, std::vector<std::uint8_t> occupied,
          double resolution = kDefaultResolution)
      : width_(width), height_(height), occupied_(std::move(occupied)),
        resolution_(resolution) {
    if (width_ < 1 || height_ < 1) {
      fail(ErrorCategory::kInvalidArgument, "map dimensions must be positive");
    }
    if (occupied_.size() != static_cast<std::size_t>(width_) * height_) {
      fail(ErrorCategory::kInvalidArgument, "cell count does not match width x height");
    }
    if (!(resolution_ > 0.0)) {
      fail(ErrorCategory::kInvalidArgument, "resolution must be positive");
    }
    for (auto& v : occupied_) v = v ? 1 : 0;
  }

  static GridMap all_free(int width, int height, double resolution = kDefaultResolution) {
    return GridMap(width, height,
                   std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 0),
                   resolution);
  }

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }
  [[nodiscard]] double resolution() const noexcept { return resolution_; }
  [[nodiscard]] std::span<const std::uint8_t> cells() const noexcept { return occupied_; }

  [[nodiscard]] bool in_bounds(Cell c) const noexcept {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  // Out-of-bounds cells read as occupied.
  [[nodiscard]] bool occupied(Cell c) const noexcept {
    return !in_bounds(c) || occupied_[index(c)] != 0;
  }
  [[nodiscard]] bool is_free(Cell c) const noexcept { return !occupied(c); }

  [[nodiscard]] std::size_t free_count() const noexcept {
    return static_cast<std::size_t>(std::count(occupied_.begin(), occupied_.end(), 0));
  }

  [[nodiscard]] GridMap with_resolution(double resolution) const {
    return GridMap(width_, height_, occupied_, resolution);
  }

  // Pads right/bottom with occupied cells up to even dimensions.
  [[nodiscard]] GridMap padded_to_even() const {
    const int w = width_ + (width_ % 2);
    const int h = height_ + (height_ % 2);
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(w) * h, 1);
    for (int y = 0; y < height_; ++y) {
      for (int x = 0; x < width_; ++x) {
        cells[static_cast<std::size_t>(y) * w + x] = occupied_[index({x, y})];
      }
    }
    return GridMap(w, h, std::move(cells), resolution_);
  }

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  [[nodiscard]] std::size_t index(Cell c) const noexcept {
    return static_cast<std::size_t>(c.y) * width_ + c.x;
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> occupied_;
  double resolution_;
};

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    lines.push_back(line);
    if (end == text.size()) break;
    pos = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

inline std::optional<int> parse_positive(std::string_view token) {
  if (token.empty() || token.size() > 9) return std::nullopt;
  int v = 0;
  for (char c : token) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  if (v <= 0) return std::nullopt;
  return v;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline int header_value(std::string_view line, std::string_view key) {
  const auto tokens = split_ws(line);
  if (tokens.size() != 2 || tokens[0] != key) {
    fail(ErrorCategory::kParse, "malformed header: expected '" + std::string(key) + " <n>'");
  }
  const auto v = parse_positive(tokens[1]);
  if (!v) fail(ErrorCategory::kParse, "malformed header: bad value for '" + std::string(key) + "'");
  return *v;
}

inline GridMap parse_movingai(std::string_view bytes, double resolution) {
  const auto lines = split_lines(bytes);
  if (lines.empty()) fail(ErrorCategory::kParse, "empty map");
  if (lines.size() < 4) fail(ErrorCategory::kParse, "malformed header: fewer than 4 lines");
  const auto type_tokens = split_ws(lines[0]);
  if (type_tokens.size() != 2 || type_tokens[0] != "type") {
    fail(ErrorCategory::kParse, "malformed header: expected 'type <name>'");
  }
  const int height = header_value(lines[1], "height");
  const int width = header_value(lines[2], "width");
  if (lines[3] != "map") fail(ErrorCategory::kParse, "malformed header: expected 'map'");
  if (lines.size() - 4 != static_cast<std::size_t>(height)) {
    fail(ErrorCategory::kParse, "dimension mismatch: header height " + std::to_string(height) +
                                    ", found " + std::to_string(lines.size() - 4) + " rows");
  }
  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    const auto row = lines[4 + static_cast<std::size_t>(y)];
    if (row.size() != static_cast<std::size_t>(width)) {
      fail(ErrorCategory::kParse, "dimension mismatch in row " + std::to_string(y));
    }
    for (char g : row) {
      switch (g) {
        case '.':
        case 'G': cells.push_back(0); break;
        case '@':
        case 'O':
        case 'T':
        case 'S':
        case 'W': cells.push_back(1); break;
        default:
          fail(ErrorCategory::kParse, std::string("unknown glyph '") + g + "' in row " +
                                          std::to_string(y));
      }
    }
  }
  return GridMap(width, height, std::move(cells), resolution);
}

inline GridMap parse_grid01(std::string_view bytes, double resolution) {
  auto lines = split_lines(bytes);
  // Leading blank lines carry no rows.
  std::size_t first = 0;
  while (first < lines.size() && lines[first].empty()) ++first;
  if (first == lines.size()) fail(ErrorCategory::kParse, "empty map");

  std::optional<std::pair<int, int>> declared;
  if (split_ws(lines[first]).size() == 2) {
    const auto t = split_ws(lines[first]);
    const auto h = parse_positive(t[0]);
    const auto w = parse_positive(t[1]);
    if (!h || !w) fail(ErrorCategory::kParse, "malformed header: expected '<H> <W>'");
    declared = std::pair{*h, *w};
    ++first;
  }
  std::vector<std::string_view> rows(lines.begin() + static_cast<std::ptrdiff_t>(first),
                                     lines.end());
  if (rows.empty()) fail(ErrorCategory::kParse, "empty map");
  const std::size_t width = rows.front().size();
  if (width == 0) fail(ErrorCategory::kParse, "empty row");
  std::vector<std::uint8_t> cells;
  cells.reserve(width * rows.size());
  for (std::size_t y = 0; y < rows.size(); ++y) {
    if (rows[y].size() != width) {
      fail(ErrorCategory::kParse, "dimension mismatch in row " + std::to_string(y));
    }
    for (char g : rows[y]) {
      if (g == '0') {
        cells.push_back(0);
      } else if (g == '1') {
        cells.push_back(1);
      } else {
        fail(ErrorCategory::kParse, std::string("unknown glyph '") + g + "' in row " +
                                        std::to_string(y));
      }
    }
  }
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(width);
  if (declared && (declared->first != h || declared->second != w)) {
    fail(ErrorCategory::kParse, "dimension mismatch: header declares " +
                                    std::to_string(declared->first) + "x" +
                                    std::to_string(declared->second) + ", body is " +
                                    std::to_string(h) + "x" + std::to_string(w));
  }
  return GridMap(w, h, std::move(cells), resolution);
}

}  // namespace detail

inline GridMap parse_map(std::string_view bytes, MapFormat format,
                         double resolution = kDefaultResolution) {
  return format == MapFormat::kMovingAi ? detail::parse_movingai(bytes, resolution)
                                        : detail::parse_grid01(bytes, resolution);
}

inline std::optional<MapFormat> parse_map_format(std::string_view name) {
  if (name == "movingai") return MapFormat::kMovingAi;
  if (name == "grid01") return MapFormat::kGrid01;
  return std::nullopt;
}

// Graph over free mega cells with 4-adjacency. Node ids follow row-major order
// of the mega-cell coordinates.
class SpanningGraph {
 public:
  using Edge = std::pair<int, int>;  // first < second

  SpanningGraph() = default;

  SpanningGraph(int mega_width, int mega_height, std::span<const Cell> free_cells)
      : mega_width_(mega_width), mega_height_(mega_height),
        index_(static_cast<std::size_t>(mega_width) * mega_height, -1),
        nodes_(free_cells.begin(), free_cells.end()) {
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Cell c = nodes_[i];
      if (c.x < 0 || c.y < 0 || c.x >= mega_width_ || c.y >= mega_height_) {
        fail(ErrorCategory::kInvalidArgument, "mega cell outside graph bounds");
      }
      index_[slot(c)] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      for (Dir d : {Dir::kRight, Dir::kDown}) {
        const int j = id(step(nodes_[i], d));
        if (j >= 0) edges_.emplace_back(static_cast<int>(i), j);
      }
    }
    std::sort(edges_.begin(), edges_.end());
  }

  [[nodiscard]] int mega_width() const noexcept { return mega_width_; }
  [[nodiscard]] int mega_height() const noexcept { return mega_height_; }
  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] bool empty() const noexcept { return nodes_.empty(); }
  [[nodiscard]] const std::vector<Cell>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] Cell node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }

  // Node id of a mega cell, or -1.
  [[nodiscard]] int id(Cell c) const noexcept {
    if (c.x < 0 || c.y < 0 || c.x >= mega_width_ || c.y >= mega_height_) return -1;
    return index_[slot(c)];
  }
  [[nodiscard]] bool contains(Cell c) const noexcept { return id(c) >= 0; }

  // Neighbor ids in right, down, left, up order; -1 where absent.
  [[nodiscard]] std::array<int, 4> neighbors(int node_id) const noexcept {
    std::array<int, 4> out{};
    const Cell c = nodes_[static_cast<std::size_t>(node_id)];
    for (Dir d : kAllDirs) out[static_cast<std::size_t>(d)] = id(step(c, d));
    return out;
  }

  friend bool operator==(const SpanningGraph& a, const SpanningGraph& b) {
    return a.mega_width_ == b.mega_width_ && a.mega_height_ == b.mega_height_ &&
           a.nodes_ == b.nodes_;
  }

 private:
  [[nodiscard]] std::size_t slot(Cell c) const noexcept {
    return static_cast<std::size_t>(c.y) * mega_width_ + c.x;
  }

  int mega_width_ = 0;
  int mega_height_ = 0;
  std::vector<int> index_;
  std::vector<Cell> nodes_;
  std::vector<Edge> edges_;
};

// Unit cells inside free mega cells, 4-adjacency with edge length d.
class CoverageGraph {
 public:
  CoverageGraph() = default;
  explicit CoverageGraph(const SpanningGraph& spanning) {
    width_ = spanning.mega_width() * 2;
    height_ = spanning.mega_height() * 2;
    present_.assign(static_cast<std::size_t>(width_) * height_, 0);
    for (const Cell m : spanning.nodes()) {
      for (int qy = 0; qy < 2; ++qy) {
        for (int qx = 0; qx < 2; ++qx) {
          const Cell u{2 * m.x + qx, 2 * m.y + qy};
          present_[static_cast<std::size_t>(u.y) * width_ + u.x] = 1;
          nodes_.push_back(u);
        }
      }
    }
    std::sort(nodes_.begin(), nodes_.end());
  }

  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] const std::vector<Cell>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] bool contains(Cell c) const noexcept {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_ &&
           present_[static_cast<std::size_t>(c.y) * width_ + c.x] != 0;
  }
  [[nodiscard]] std::size_t edge_count() const noexcept {
    std::size_t n = 0;
    for (const Cell c : nodes_) {
      n += contains(step(c, Dir::kRight)) ? 1 : 0;
      n += contains(step(c, Dir::kDown)) ? 1 : 0;
    }
    return n;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> present_;
  std::vector<Cell> nodes_;
};

struct Discretization {
  SpanningGraph spanning;
  CoverageGraph coverage;
};

inline Cell mega_of(Cell unit) noexcept { return {unit.x / 2, unit.y / 2}; }

// A mega cell is a spanning node iff all four of its unit cells are free.
inline Discretization build_spanning_graph(const GridMap& map) {
  const GridMap padded = map.padded_to_even();
  const int mw = padded.width() / 2;
  const int mh = padded.height() / 2;
  std::vector<Cell> free_mega;
  for (int y = 0; y < mh; ++y) {
    for (int x = 0; x < mw; ++x) {
      if (padded.is_free({2 * x, 2 * y}) && padded.is_free({2 * x + 1, 2 * y}) &&
          padded.is_free({2 * x, 2 * y + 1}) && padded.is_free({2 * x + 1, 2 * y + 1})) {
        free_mega.push_back({x, y});
      }
    }
  }
  if (free_mega.empty()) fail(ErrorCategory::kPlanning, "map has no free mega cell");
  SpanningGraph spanning(mw, mh, free_mega);
  CoverageGraph coverage(spanning);
  return {std::move(spanning), std::move(coverage)};
}

// Component label per node id, labels assigned in order of the lowest node id.
inline std::vector<int> component_labels(const SpanningGraph& graph, int* count = nullptr) {
  std::vector<int> label(graph.size(), -1);
  int next = 0;
  std::vector<int> stack;
  for (std::size_t s = 0; s < graph.size(); ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(static_cast<int>(s));
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : graph.neighbors(u)) {
        if (v >= 0 && label[static_cast<std::size_t>(v)] < 0) {
          label[static_cast<std::size_t>(v)] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

inline bool is_connected(const SpanningGraph& graph) {
  int count = 0;
  component_labels(graph, &count);
  return count <= 1;
}

// Sub-graph of the component holding every seed. With no seeds the graph must
// already be a single component.
inline SpanningGraph connected_component(const SpanningGraph& graph,
                                         std::span<const Cell> seeds) {
  int count = 0;
  const auto label = component_labels(graph, &count);
  if (seeds.empty()) {
    if (count > 1) {
      fail(ErrorCategory::kDisconnected,
           "graph has " + std::to_string(count) + " components and no seed selects one");
    }
    return graph;
  }
  for (const Cell s : seeds) {
    if (!graph.contains(s)) {
      std::ostringstream os;
      os << "seed " << s << " is not a free mega cell";
      fail(ErrorCategory::kInvalidArgument, os.str());
    }
  }
  const int target = label[static_cast<std::size_t>(graph.id(seeds.front()))];
  std::ostringstream offending;
  bool split = false;
  for (const Cell s : seeds) {
    if (label[static_cast<std::size_t>(graph.id(s))] != target) {
      offending << ' ' << s;
      split = true;
    }
  }
  if (split) {
    std::ostringstream os;
    os << "seeds span multiple components; not connected to " << seeds.front() << ":"
       << offending.str();
    fail(ErrorCategory::kDisconnected, os.str());
  }
  std::vector<Cell> keep;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    if (label[i] == target) keep.push_back(graph.nodes()[i]);
  }
  return SpanningGraph(graph.mega_width(), graph.mega_height(), keep);
}

}  // namespace tmstc
