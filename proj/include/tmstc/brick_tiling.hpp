#pragma once

// Minimum brick tiling of a spanning graph.
//
// Every border between two adjacent free mega cells is a segment. Deleting a
// segment merges the two cells it separates; deleting two perpendicular
// segments that share an endpoint would create an L-shaped block. The
// segments therefore form a bipartite conflict graph (horizontal vs vertical),
// and a maximum set of deletable segments is a maximum independent set of that
// graph. On a bipartite graph this is the complement of a minimum vertex
// cover, which by Koenig's theorem is recovered from a maximum matching.
// The brick count is then R = S - T with S free cells and T deleted segments.

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "tmstc/dinic.hpp"
#include "tmstc/error.hpp"
#include "tmstc/geometry.hpp"
#include "tmstc/grid_map.hpp"
#include "tmstc/union_find.hpp"

namespace tmstc {

enum class Orientation { kHorizontal, kVertical };

struct Segment {
  int id = 0;
  Orientation orientation = Orientation::kHorizontal;
  int cell_a = 0;  // spanning node ids, cell_a < cell_b
  int cell_b = 0;
  // Lattice endpoints in mega-cell corner coordinates.
  Cell end0;
  Cell end1;
};

struct SegmentGraph {
  std::vector<Segment> segments;
  // (horizontal id, vertical id), sorted.
  std::vector<std::pair<int, int>> edges;
  // Ascending neighbor ids per segment.
  std::vector<std::vector<int>> adjacency;

  [[nodiscard]] std::size_t size() const noexcept { return segments.size(); }
  [[nodiscard]] bool is_horizontal(int id) const {
    return segments.at(static_cast<std::size_t>(id)).orientation == Orientation::kHorizontal;
  }
};

inline SegmentGraph build_segment_graph(const SpanningGraph& graph) {
  SegmentGraph out;
  // Segment ids follow the sorted spanning-edge list.
  for (const auto& [a, b] : graph.edges()) {
    const Cell ca = graph.node(a);
    const Cell cb = graph.node(b);
    Segment s;
    s.id = static_cast<int>(out.segments.size());
    s.cell_a = a;
    s.cell_b = b;
    if (ca.y == cb.y) {
      // Horizontally adjacent cells are split by a vertical border.
      s.orientation = Orientation::kVertical;
      s.end0 = {cb.x, cb.y};
      s.end1 = {cb.x, cb.y + 1};
    } else {
      s.orientation = Orientation::kHorizontal;
      s.end0 = {cb.x, cb.y};
      s.end1 = {cb.x + 1, cb.y};
    }
    out.segments.push_back(s);
  }

  std::map<Cell, std::vector<int>> at_point;
  for (const Segment& s : out.segments) {
    at_point[s.end0].push_back(s.id);
    at_point[s.end1].push_back(s.id);
  }
  for (const auto& [point, ids] : at_point) {
    for (int h : ids) {
      if (!out.is_horizontal(h)) continue;
      for (int v : ids) {
        if (!out.is_horizontal(v)) out.edges.emplace_back(h, v);
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());

  out.adjacency.assign(out.segments.size(), {});
  for (const auto& [h, v] : out.edges) {
    out.adjacency[static_cast<std::size_t>(h)].push_back(v);
    out.adjacency[static_cast<std::size_t>(v)].push_back(h);
  }
  for (auto& adj : out.adjacency) std::sort(adj.begin(), adj.end());
  return out;
}

struct Matching {
  std::vector<int> mate;                    // per segment, -1 if unmatched
  std::vector<std::pair<int, int>> pairs;   // (horizontal, vertical), sorted

  [[nodiscard]] std::size_t size() const noexcept { return pairs.size(); }
};

// Horizontal segments sit on the source side, vertical ones on the sink side.
inline Matching maximum_matching(const SegmentGraph& graph) {
  const int n = static_cast<int>(graph.size());
  const int source = n;
  const int sink = n + 1;
  MaxFlow<int> flow(n + 2);
  for (int s = 0; s < n; ++s) {
    if (graph.is_horizontal(s)) flow.add_edge(source, s, 1);
  }
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> handles;
  for (int h = 0; h < n; ++h) {
    if (!graph.is_horizontal(h)) continue;
    for (int v : graph.adjacency[static_cast<std::size_t>(h)]) {
      handles.push_back({{h, v}, flow.add_edge(h, v, 1)});
    }
  }
  for (int s = 0; s < n; ++s) {
    if (!graph.is_horizontal(s)) flow.add_edge(s, sink, 1);
  }
  flow.run(source, sink);

  Matching m;
  m.mate.assign(graph.size(), -1);
  for (const auto& [edge, handle] : handles) {
    if (flow.flow_on(handle) > 0) {
      m.mate[static_cast<std::size_t>(edge.first)] = edge.second;
      m.mate[static_cast<std::size_t>(edge.second)] = edge.first;
      m.pairs.push_back(edge);
    }
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

namespace detail {

inline void check_matching(const SegmentGraph& graph, const Matching& matching) {
  if (matching.mate.size() != graph.size()) {
    fail(ErrorCategory::kInvalidArgument, "matching does not fit the segment graph");
  }
  std::size_t matched = 0;
  for (std::size_t s = 0; s < graph.size(); ++s) {
    const int t = matching.mate[s];
    if (t < 0) continue;
    ++matched;
    if (matching.mate[static_cast<std::size_t>(t)] != static_cast<int>(s) ||
        !std::binary_search(graph.adjacency[s].begin(), graph.adjacency[s].end(), t)) {
      fail(ErrorCategory::kInvalidArgument, "matching is not a set of disjoint graph edges");
    }
  }
  if (matched != 2 * matching.size()) {
    fail(ErrorCategory::kInvalidArgument, "matching pairs and mates disagree");
  }
}

}  // namespace detail

// Koenig construction: Z = vertices reachable from unmatched horizontal
// segments along alternating paths. Cover = (H \ Z) + (V n Z); the returned
// independent set is its complement. Throws if the matching is not maximum.
inline std::vector<int> max_independent_set(const SegmentGraph& graph,
                                            const Matching& matching) {
  detail::check_matching(graph, matching);
  const std::size_t n = graph.size();
  std::vector<bool> reached(n, false);
  std::vector<int> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (graph.is_horizontal(static_cast<int>(s)) && matching.mate[s] < 0) {
      reached[s] = true;
      queue.push_back(static_cast<int>(s));
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int h = queue[head];
    for (int v : graph.adjacency[static_cast<std::size_t>(h)]) {
      if (reached[static_cast<std::size_t>(v)] || matching.mate[static_cast<std::size_t>(h)] == v) {
        continue;
      }
      reached[static_cast<std::size_t>(v)] = true;
      const int next = matching.mate[static_cast<std::size_t>(v)];
      if (next >= 0 && !reached[static_cast<std::size_t>(next)]) {
        reached[static_cast<std::size_t>(next)] = true;
        queue.push_back(next);
      }
    }
  }
  std::vector<int> independent;
  std::size_t cover = 0;
  for (std::size_t s = 0; s < n; ++s) {
    const bool horizontal = graph.is_horizontal(static_cast<int>(s));
    const bool in_cover = horizontal ? !reached[s] : reached[s];
    if (in_cover) {
      ++cover;
    } else {
      independent.push_back(static_cast<int>(s));
    }
  }
  if (cover != matching.size()) {
    fail(ErrorCategory::kInvalidArgument, "matching is not maximum (vertex cover size " +
                                              std::to_string(cover) + " != matching size " +
                                              std::to_string(matching.size()) + ")");
  }
  return independent;
}

// Straight run of mega cells, ordered along its axis.
struct Brick {
  std::vector<Cell> cells;

  [[nodiscard]] std::size_t size() const noexcept { return cells.size(); }
  [[nodiscard]] Cell top_left() const { return cells.front(); }
  friend bool operator==(const Brick&, const Brick&) = default;
};

// Bricks sorted row-major by their top-left cell; index = brick id.
struct BrickSet {
  std::vector<Brick> bricks;

  [[nodiscard]] std::size_t size() const noexcept { return bricks.size(); }
  friend bool operator==(const BrickSet&, const BrickSet&) = default;
};

inline bool is_straight_brick(std::span<const Cell> cells) {
  if (cells.empty()) return false;
  const bool same_row = std::all_of(cells.begin(), cells.end(),
                                    [&](Cell c) { return c.y == cells.front().y; });
  const bool same_col = std::all_of(cells.begin(), cells.end(),
                                    [&](Cell c) { return c.x == cells.front().x; });
  if (!same_row && !same_col) return false;
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (manhattan(cells[i - 1], cells[i]) != 1) return false;
  }
  return true;
}

// True iff every brick is straight and the bricks partition the node set.
inline bool is_valid_tiling(const SpanningGraph& graph, const BrickSet& set) {
  std::vector<int> hits(graph.size(), 0);
  for (const Brick& b : set.bricks) {
    if (!is_straight_brick(b.cells)) return false;
    for (const Cell c : b.cells) {
      const int id = graph.id(c);
      if (id < 0) return false;
      ++hits[static_cast<std::size_t>(id)];
    }
  }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

// Merges the cell pairs across every segment in `keep`.
inline BrickSet tiling_from_independent_set(const SpanningGraph& graph,
                                            const SegmentGraph& segments,
                                            std::span<const int> keep) {
  UnionFind uf(graph.size());
  for (int id : keep) {
    if (id < 0 || static_cast<std::size_t>(id) >= segments.size()) {
      fail(ErrorCategory::kInvalidArgument, "segment id out of range");
    }
    const Segment& s = segments.segments[static_cast<std::size_t>(id)];
    uf.unite(static_cast<std::size_t>(s.cell_a), static_cast<std::size_t>(s.cell_b));
  }
  std::map<std::size_t, std::vector<Cell>> groups;
  for (std::size_t i = 0; i < graph.size(); ++i) groups[uf.find(i)].push_back(graph.nodes()[i]);

  BrickSet out;
  for (auto& [root, cells] : groups) {
    std::sort(cells.begin(), cells.end());
    if (!is_straight_brick(cells)) {
      std::ostringstream os;
      os << "merged block at " << cells.front()
         << " is not a straight brick; the segment set is not independent";
      fail(ErrorCategory::kInternal, os.str());
    }
    out.bricks.push_back({std::move(cells)});
  }
  std::sort(out.bricks.begin(), out.bricks.end(),
            [](const Brick& a, const Brick& b) { return a.top_left() < b.top_left(); });
  return out;
}

inline BrickSet tiling_from_independent_set(const SpanningGraph& graph,
                                            std::span<const int> keep) {
  return tiling_from_independent_set(graph, build_segment_graph(graph), keep);
}

// Every intermediate of the tiling pipeline, kept for reporting.
struct BrickTiling {
  SegmentGraph segments;
  Matching matching;
  std::vector<int> independent;
  BrickSet bricks;
  std::size_t free_cells = 0;  // S

  [[nodiscard]] std::size_t independent_size() const noexcept { return independent.size(); }  // T
  [[nodiscard]] std::size_t brick_count() const noexcept { return bricks.size(); }  // R
};

inline BrickTiling solve_brick_tiling(const SpanningGraph& graph) {
  if (graph.empty()) fail(ErrorCategory::kInvalidArgument, "empty spanning graph");
  BrickTiling t;
  t.segments = build_segment_graph(graph);
  t.matching = maximum_matching(t.segments);
  t.independent = max_independent_set(t.segments, t.matching);
  t.bricks = tiling_from_independent_set(graph, t.segments, t.independent);
  t.free_cells = graph.size();
  if (t.brick_count() != t.free_cells - t.independent_size()) {
    fail(ErrorCategory::kInternal, "brick count violates R = S - T");
  }
  return t;
}

inline BrickSet min_brick_tiling(const SpanningGraph& graph) {
  return solve_brick_tiling(graph).bricks;
}

}  // namespace tmstc
