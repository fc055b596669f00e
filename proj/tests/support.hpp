#pragma once

// Test-only generators and brute-force references. Nothing here calls the
// matching, merging or balancing code it is used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "tmstc/tmstc.hpp"

namespace tmstc::testing {

// Mega-level graph from rows of '.' (free) and '#'.
inline SpanningGraph graph_from_rows(const std::vector<std::string>& rows) {
  std::vector<Cell> free;
  for (std::size_t y = 0; y < rows.size(); ++y) {
    for (std::size_t x = 0; x < rows[y].size(); ++x) {
      if (rows[y][x] == '.') free.push_back({static_cast<int>(x), static_cast<int>(y)});
    }
  }
  return SpanningGraph(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()), free);
}

inline SpanningGraph full_grid(int w, int h) {
  std::vector<Cell> free;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) free.push_back({x, y});
  }
  return SpanningGraph(w, h, free);
}

// Random free subset of a w x h mega grid, reduced to the component of its
// lowest free cell.
inline SpanningGraph random_connected_graph(std::mt19937_64& rng, int w, int h, double p_free) {
  std::bernoulli_distribution coin(p_free);
  while (true) {
    std::vector<Cell> free;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (coin(rng)) free.push_back({x, y});
      }
    }
    if (free.empty()) continue;
    SpanningGraph g(w, h, free);
    return connected_component(g, std::vector<Cell>{g.nodes().front()});
  }
}

// Random connected graph with at most `max_nodes` nodes, grown from one cell.
inline SpanningGraph random_polyomino(std::mt19937_64& rng, int w, int h, std::size_t max_nodes) {
  std::uniform_int_distribution<std::size_t> size_dist(1, max_nodes);
  const std::size_t target = size_dist(rng);
  std::vector<Cell> cells{{static_cast<int>(rng() % static_cast<unsigned>(w)),
                           static_cast<int>(rng() % static_cast<unsigned>(h))}};
  for (int guard = 0; cells.size() < target && guard < 1000; ++guard) {
    const Cell from = cells[rng() % cells.size()];
    const Cell to = step(from, kAllDirs[rng() % 4]);
    if (to.x < 0 || to.y < 0 || to.x >= w || to.y >= h) continue;
    if (std::find(cells.begin(), cells.end(), to) != cells.end()) continue;
    cells.push_back(to);
  }
  return SpanningGraph(w, h, cells);
}

// Largest independent set by subset enumeration (vertices <= ~22).
inline std::size_t brute_force_mis(const SegmentGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> conflict(n, 0);
  for (const auto& [a, b] : g.edges) {
    conflict[static_cast<std::size_t>(a)] |= 1U << b;
    conflict[static_cast<std::size_t>(b)] |= 1U << a;
  }
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      if ((mask >> v) & 1U) ok = (conflict[v] & mask) == 0;
    }
    if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
  }
  return best;
}

// Largest matching by edge-subset enumeration (edges <= ~20).
inline std::size_t brute_force_matching(const SegmentGraph& g) {
  const std::size_t m = g.edges.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    std::vector<bool> used(g.size(), false);
    bool ok = true;
    for (std::size_t e = 0; e < m && ok; ++e) {
      if (!((mask >> e) & 1U)) continue;
      const auto [a, b] = g.edges[e];
      if (used[static_cast<std::size_t>(a)] || used[static_cast<std::size_t>(b)]) ok = false;
      used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(b)] = true;
    }
    if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
  }
  return best;
}

// Heading changes counted by walking the loop; reversals count twice.
inline int count_loop_twists(const std::vector<Cell>& loop) {
  const std::size_t n = loop.size();
  int turns = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Cell a = loop[(i + n - 1) % n];
    const Cell b = loop[i];
    const Cell c = loop[(i + 1) % n];
    const int ux = b.x - a.x, uy = b.y - a.y, vx = c.x - b.x, vy = c.y - b.y;
    if (ux == vx && uy == vy) continue;
    turns += (ux == -vx && uy == -vy) ? 2 : 1;
  }
  return turns;
}

struct PartitionOptimum {
  double makespan = std::numeric_limits<double>::infinity();
};

// Every placement of one cut per gap between cyclically consecutive anchors.
inline PartitionOptimum brute_force_partition(const CoverageLoop& loop,
                                              const std::vector<RobotStart>& starts,
                                              const RobotParams& params) {
  const long n = static_cast<long>(loop.size());
  std::vector<long> anchors;
  for (const auto& s : starts) anchors.push_back(static_cast<long>(s.anchored));
  std::sort(anchors.begin(), anchors.end());
  const std::size_t k = anchors.size();
  PartitionOptimum best;
  // ends[i] = last index of the arc holding anchors[i], in [a_i, a_{i+1} - 1]
  // cyclically; the arc then starts right after ends[i-1].
  std::vector<long> ends(k);
  auto next_anchor = [&](std::size_t i) {
    return i + 1 < k ? anchors[i + 1] : anchors[0] + n;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      double worst = 0;
      for (std::size_t r = 0; r < k; ++r) {
        const long last = ends[r];
        const long prev_end = r == 0 ? ends[k - 1] - n : ends[r - 1];
        const long first = prev_end + 1;
        const Arc arc{static_cast<std::size_t>(((first % n) + n) % n),
                      static_cast<std::size_t>(last - first + 1)};
        worst = std::max(worst, arc_cost(loop, arc, static_cast<std::size_t>(anchors[r]), params));
      }
      best.makespan = std::min(best.makespan, worst);
      return;
    }
    for (long e = anchors[i]; e <= next_anchor(i) - 1; ++e) {
      ends[i] = e;
      rec(i + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace tmstc::testing
