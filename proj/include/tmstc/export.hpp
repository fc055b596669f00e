#pragma once

// Text and SVG artifacts.

#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tmstc/balance.hpp"
#include "tmstc/brick_tiling.hpp"
#include "tmstc/coverage_path.hpp"
#include "tmstc/error.hpp"
#include "tmstc/grid_map.hpp"
#include "tmstc/tree_builder.hpp"

namespace tmstc {

// One row per mega-cell row; each token is the brick id or '.' off-graph.
inline void write_tiling(std::ostream& os, const SpanningGraph& graph, const BrickSet& bricks) {
  std::vector<long> id(static_cast<std::size_t>(graph.mega_width()) * graph.mega_height(), -1);
  for (std::size_t b = 0; b < bricks.size(); ++b) {
    for (const Cell c : bricks.bricks[b].cells) {
      id[static_cast<std::size_t>(c.y) * graph.mega_width() + c.x] = static_cast<long>(b);
    }
  }
  for (int y = 0; y < graph.mega_height(); ++y) {
    for (int x = 0; x < graph.mega_width(); ++x) {
      if (x) os << ' ';
      const long v = id[static_cast<std::size_t>(y) * graph.mega_width() + x];
      if (v < 0) {
        os << '.';
      } else {
        os << v;
      }
    }
    os << '\n';
  }
}

// `(x1,y1)-(x2,y2)` per edge in mega-cell coordinates, sorted.
inline void write_tree_edges(std::ostream& os, const SpanningTree& tree) {
  for (const auto& [a, b] : tree.edges()) {
    os << tree.graph().node(a) << '-' << tree.graph().node(b) << '\n';
  }
}

inline void write_loop(std::ostream& os, const CoverageLoop& loop) {
  for (const Cell c : loop.nodes) os << c.x << ' ' << c.y << '\n';
}

inline void write_loop_metric(std::ostream& os, const CoverageLoop& loop, double d) {
  os << std::fixed << std::setprecision(3);
  for (const Cell c : loop.nodes) {
    const Point p = cell_center(c, d);
    os << p.x << ' ' << p.y << '\n';
  }
  os << std::defaultfloat;
}

// One line per robot:
// robot=<id> anchor=<index> twists=<n> time=<s> waypoints=x,y;x,y;...
inline void write_plan(std::ostream& os, const CoveragePlan& plan, double d) {
  std::ostringstream line;
  line << std::fixed << std::setprecision(3);
  for (const RobotPlan& r : plan.robots) {
    line.str("");
    line << "robot=" << r.robot_id << " anchor=" << r.anchored << " twists=" << r.twists.size()
         << " time=" << r.time << " waypoints=";
    for (std::size_t i = 0; i < r.traversal.size(); ++i) {
      const Point p = cell_center(r.traversal[i], d);
      if (i) line << ';';
      line << p.x << ',' << p.y;
    }
    os << line.str() << '\n';
  }
}

struct SvgLayers {
  const BrickSet* bricks = nullptr;
  const SpanningTree* tree = nullptr;
  const CoverageLoop* loop = nullptr;
  const CoveragePlan* plan = nullptr;
};

inline constexpr int kSvgCellPx = 16;

// Obstacles dark, bricks shaded rectangles, tree edges stroked between mega
// centers, robot traversals as polylines colored by robot id.
inline void write_svg(std::ostream& os, const GridMap& map, const SvgLayers& layers) {
  static constexpr std::array<const char*, 8> kPalette = {
      "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#9a6324"};
  const int px = kSvgCellPx;
  const int w = map.width() + (map.width() % 2);
  const int h = map.height() + (map.height() % 2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * px << "\" height=\"" << h * px
     << "\" viewBox=\"0 0 " << w * px << ' ' << h * px << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << w * px << "\" height=\"" << h * px
     << "\" fill=\"#ffffff\"/>\n";
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (map.occupied({x, y})) {
        os << "<rect class=\"obstacle\" x=\"" << x * px << "\" y=\"" << y * px << "\" width=\"" << px
           << "\" height=\"" << px << "\" fill=\"#333333\"/>\n";
      }
    }
  }
  if (layers.bricks) {
    for (const Brick& b : layers.bricks->bricks) {
      const Cell lo = b.cells.front();
      const Cell hi = b.cells.back();
      os << "<rect class=\"brick\" x=\"" << lo.x * 2 * px + 2 << "\" y=\"" << lo.y * 2 * px + 2
         << "\" width=\"" << (hi.x - lo.x + 1) * 2 * px - 4 << "\" height=\""
         << (hi.y - lo.y + 1) * 2 * px - 4
         << "\" fill=\"#c8d7ee\" stroke=\"#7a8fb3\" stroke-width=\"1\"/>\n";
    }
  }
  if (layers.tree) {
    for (const auto& [a, b] : layers.tree->edges()) {
      const Cell ca = layers.tree->graph().node(a);
      const Cell cb = layers.tree->graph().node(b);
      os << "<line class=\"tree\" x1=\"" << (2 * ca.x + 1) * px << "\" y1=\"" << (2 * ca.y + 1) * px
         << "\" x2=\"" << (2 * cb.x + 1) * px << "\" y2=\"" << (2 * cb.y + 1) * px
         << "\" stroke=\"#1b2a49\" stroke-width=\"3\"/>\n";
    }
  }
  auto polyline = [&](const std::vector<Cell>& cells, const char* color, const char* cls) {
    os << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ' ';
      os << cells[i].x * px + px / 2 << ',' << cells[i].y * px + px / 2;
    }
    os << "\"/>\n";
  };
  if (layers.plan) {
    for (const RobotPlan& r : layers.plan->robots) {
      polyline(r.traversal, kPalette[static_cast<std::size_t>(r.robot_id) % kPalette.size()], "robot");
    }
  } else if (layers.loop) {
    std::vector<Cell> closed = layers.loop->nodes;
    if (!closed.empty()) closed.push_back(closed.front());
    polyline(closed, kPalette[0], "loop");
  }
  os << "</svg>\n";
}

// Writes via a temporary sibling and rename, so readers never see a partial file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCategory::kIo, "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) fail(ErrorCategory::kIo, "failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCategory::kIo, "cannot move output into place at " + path.string());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCategory::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tmstc
