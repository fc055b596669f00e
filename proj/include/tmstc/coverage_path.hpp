#pragma once

// Circumnavigation loops around spanning trees, twist extraction and the
// stop-and-turn travel-time model.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <sstream>
#include <vector>

#include "tmstc/error.hpp"
#include "tmstc/geometry.hpp"
#include "tmstc/grid_map.hpp"
#include "tmstc/tree_builder.hpp"

namespace tmstc {

struct RobotParams {
  double accel = 0.6;   // m/s^2
  double v_max = 0.5;   // m/s
  double omega = 0.8;   // rad/s
  double d = 0.5;       // tool width = unit cell size, m

  void validate() const {
    if (!(accel > 0) || !(v_max > 0) || !(omega > 0) || !(d > 0)) {
      fail(ErrorCategory::kInvalidArgument, "robot parameters must be strictly positive");
    }
  }
};

// Closed counterclockwise walk over unit cells; last -> first is a step too.
struct CoverageLoop {
  std::vector<Cell> nodes;

  [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
  [[nodiscard]] const Cell& operator[](std::size_t i) const { return nodes[i % nodes.size()]; }
};

// Twice the signed area of a closed polygon, measured with y pointing up, so
// a loop that looks counterclockwise on screen is positive.
inline long long signed_area2(std::span<const Cell> polygon) {
  long long sum = 0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Cell a = polygon[i];
    const Cell b = polygon[(i + 1) % polygon.size()];
    sum += static_cast<long long>(b.x) * a.y - static_cast<long long>(a.x) * b.y;
  }
  return sum;
}

namespace detail {

// Two unit cells are consecutive on the loop iff they sit in the same mega
// cell and no tree edge cuts the half-border between them, or they sit in
// tree-adjacent mega cells.
inline bool loop_linked(const SpanningTree& tree, Cell u, Dir d) {
  const Cell v = step(u, d);
  const Cell mu = mega_of(u);
  const Cell mv = {v.x < 0 ? -1 : v.x / 2, v.y < 0 ? -1 : v.y / 2};
  const int id = tree.graph().id(mu);
  if (mu == mv) {
    // A horizontal step crosses the vertical half-border cut by an up edge
    // (top row) or a down edge (bottom row); vertical steps likewise.
    Dir cutting{};
    if (is_horizontal(d)) {
      cutting = (u.y % 2 == 0) ? Dir::kUp : Dir::kDown;
    } else {
      cutting = (u.x % 2 == 0) ? Dir::kLeft : Dir::kRight;
    }
    return !tree.mask(id).has(cutting);
  }
  return tree.graph().contains(mv) && tree.mask(id).has(d);
}

}  // namespace detail

inline CoverageLoop circumnavigate(const SpanningTree& tree, Cell start) {
  if (!tree.graph().contains(mega_of(start)) || start.x < 0 || start.y < 0) {
    std::ostringstream os;
    os << "start " << start << " lies outside the planned component";
    fail(ErrorCategory::kInvalidArgument, os.str());
  }
  if (!tree.is_spanning_tree()) fail(ErrorCategory::kInvalidArgument, "not a spanning tree");

  const std::size_t expected = 4 * tree.size();
  auto links = [&](Cell u) {
    std::vector<Cell> out;
    for (Dir d : kAllDirs) {
      if (detail::loop_linked(tree, u, d)) out.push_back(step(u, d));
    }
    if (out.size() != 2) {
      std::ostringstream os;
      os << "coverage cell " << u << " has " << out.size() << " loop neighbors";
      fail(ErrorCategory::kInternal, os.str());
    }
    return out;
  };

  CoverageLoop loop;
  loop.nodes.reserve(expected);
  loop.nodes.push_back(start);
  Cell prev = start;
  Cell cur = links(start)[0];
  while (cur != start) {
    if (loop.nodes.size() >= expected) fail(ErrorCategory::kInternal, "loop does not close");
    loop.nodes.push_back(cur);
    const auto nb = links(cur);
    const Cell next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  if (loop.nodes.size() != expected) {
    fail(ErrorCategory::kInternal, "loop misses coverage cells");
  }
  if (signed_area2(loop.nodes) < 0) std::reverse(loop.nodes.begin() + 1, loop.nodes.end());
  return loop;
}

// Heading changes around the closed loop.
inline int loop_turns(const CoverageLoop& loop) {
  const std::size_t n = loop.size();
  if (n < 3) return 0;
  int turns = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Dir in{};
    Dir out{};
    direction_between(loop[i + n - 1], loop[i], in);
    direction_between(loop[i], loop[i + 1], out);
    if (in != out) turns += (out == opposite(in)) ? 2 : 1;
  }
  return turns;
}

// Ordered twists of an open path: its endpoints plus every heading change.
// A reversal appears twice at the same index (two quarter turns).
struct TwistSet {
  std::vector<std::size_t> indices;  // into the path
  std::vector<Cell> points;
  std::vector<Dir> headings;         // per leg, heading when leaving the twist

  [[nodiscard]] std::size_t size() const noexcept { return indices.size(); }
  [[nodiscard]] std::size_t turns() const noexcept { return size() >= 2 ? size() - 2 : 0; }
};

inline TwistSet extract_twists(std::span<const Cell> path) {
  if (path.empty()) fail(ErrorCategory::kInvalidArgument, "empty path");
  std::vector<Dir> step_dir(path.size() > 0 ? path.size() - 1 : 0);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!direction_between(path[i], path[i + 1], step_dir[i])) {
      std::ostringstream os;
      os << "path nodes " << path[i] << " and " << path[i + 1] << " are not adjacent";
      fail(ErrorCategory::kInvalidArgument, os.str());
    }
  }
  TwistSet t;
  t.indices.push_back(0);
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const Dir in = step_dir[i - 1];
    const Dir out = step_dir[i];
    if (in == out) continue;
    t.indices.push_back(i);
    if (out == opposite(in)) t.indices.push_back(i);
  }
  if (path.size() >= 2) t.indices.push_back(path.size() - 1);
  for (std::size_t idx : t.indices) t.points.push_back(path[idx]);
  for (std::size_t j = 0; j + 1 < t.indices.size(); ++j) {
    t.headings.push_back(step_dir[t.indices[j]]);
  }
  return t;
}

// Time for one leg that starts and ends at rest: triangular profile below the
// distance needed to reach v_max, trapezoidal above it.
inline double leg_time(double distance, const RobotParams& p) {
  if (distance <= 0) return 0.0;
  if (distance <= p.v_max * p.v_max / (2 * p.accel)) return std::sqrt(2 * distance / p.accel);
  return distance / p.v_max + p.v_max / (2 * p.accel);
}

inline double turn_time(std::size_t turns, const RobotParams& p) {
  return static_cast<double>(turns) * std::numbers::pi / (4 * p.omega);
}

inline double path_time(const TwistSet& twists, const RobotParams& p) {
  double total = 0;
  for (std::size_t j = 0; j + 1 < twists.points.size(); ++j) {
    const Cell a = twists.points[j];
    const Cell b = twists.points[j + 1];
    total += leg_time(std::hypot(b.x - a.x, b.y - a.y) * p.d, p);
  }
  return total + turn_time(twists.turns(), p);
}

inline double path_time(std::span<const Cell> path, const RobotParams& p) {
  return path_time(extract_twists(path), p);
}

// Metric position of a unit cell's center.
struct Point {
  double x = 0;
  double y = 0;
};

inline Point cell_center(Cell c, double d) {
  return {(c.x + 0.5) * d, (c.y + 0.5) * d};
}

}  // namespace tmstc
