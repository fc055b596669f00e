#pragma once

// Experiment harness: seeded random maps, tree-method comparison and full
// multi-robot planning runs.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "tmstc/balance.hpp"
#include "tmstc/brick_tiling.hpp"
#include "tmstc/coverage_path.hpp"
#include "tmstc/error.hpp"
#include "tmstc/grid_map.hpp"
#include "tmstc/tree_builder.hpp"

namespace tmstc {

inline constexpr int kMapGenerationAttempts = 100;

struct GeneratorSpec {
  int mega_width = 20;
  int mega_height = 20;
  double obstacle_ratio = 0.1;
  std::uint64_t seed = 0;
};

// Obstacles are whole mega cells: floor(w*h*ratio) of them, drawn without
// replacement. Draws repeat until the free mega cells form one component.
inline GridMap generate_random_map(const GeneratorSpec& spec,
                                   double resolution = kDefaultResolution) {
  if (spec.mega_width < 1 || spec.mega_height < 1) {
    fail(ErrorCategory::kInvalidArgument, "generator dimensions must be positive");
  }
  if (!(spec.obstacle_ratio >= 0.0 && spec.obstacle_ratio < 1.0)) {
    fail(ErrorCategory::kInvalidArgument, "obstacle ratio must lie in [0, 1)");
  }
  const std::size_t cells = static_cast<std::size_t>(spec.mega_width) * spec.mega_height;
  const auto obstacles = static_cast<std::size_t>(std::floor(static_cast<double>(cells) * spec.obstacle_ratio));
  std::mt19937_64 rng(spec.seed);
  for (int attempt = 0; attempt < kMapGenerationAttempts; ++attempt) {
    std::vector<std::size_t> order(cells);
    for (std::size_t i = 0; i < cells; ++i) order[i] = i;
    for (std::size_t i = cells; i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng() % i)]);
    }
    std::vector<bool> blocked(cells, false);
    for (std::size_t i = 0; i < obstacles; ++i) blocked[order[i]] = true;

    std::vector<Cell> free_mega;
    for (std::size_t i = 0; i < cells; ++i) {
      if (!blocked[i]) {
        free_mega.push_back({static_cast<int>(i % static_cast<std::size_t>(spec.mega_width)),
                             static_cast<int>(i / static_cast<std::size_t>(spec.mega_width))});
      }
    }
    if (free_mega.empty() || !is_connected(SpanningGraph(spec.mega_width, spec.mega_height, free_mega))) {
      continue;
    }
    const int w = 2 * spec.mega_width;
    const int h = 2 * spec.mega_height;
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(w) * h, 0);
    for (std::size_t i = 0; i < cells; ++i) {
      if (!blocked[i]) continue;
      const int mx = static_cast<int>(i % static_cast<std::size_t>(spec.mega_width));
      const int my = static_cast<int>(i / static_cast<std::size_t>(spec.mega_width));
      for (int qy = 0; qy < 2; ++qy) {
        for (int qx = 0; qx < 2; ++qx) {
          occ[static_cast<std::size_t>(2 * my + qy) * w + (2 * mx + qx)] = 1;
        }
      }
    }
    return GridMap(w, h, std::move(occ), resolution);
  }
  fail(ErrorCategory::kPlanning, "no connected map after " +
                                     std::to_string(kMapGenerationAttempts) + " attempts");
}

struct Scenario {
  std::string id;
  std::variant<GeneratorSpec, GridMap> map;
  std::size_t robots = 1;
  std::vector<Cell> starts;  // unit cells; empty = evenly spread along the loop
  RobotParams params;
  TreeMethod method = TreeMethod::kTmstc;
  std::uint64_t tree_seed = 0;
};

struct PlannedRun {
  Discretization disc;
  SpanningGraph component;
  BrickTiling tiling;
  SpanningTree tree;
  CoverageLoop loop;
  std::vector<RobotStart> starts;
  CoveragePlan plan;
  double planning_seconds = 0;
};

// Full pipeline on a parsed map. Starts (unit cells) select the component.
inline PlannedRun plan_coverage(const GridMap& map, std::size_t robots,
                                std::span<const Cell> starts, const RobotParams& params,
                                TreeMethod method, std::uint64_t tree_seed) {
  if (robots == 0) fail(ErrorCategory::kInvalidArgument, "robot count must be at least 1");
  if (!starts.empty() && starts.size() != robots) {
    fail(ErrorCategory::kInvalidArgument, "start count " + std::to_string(starts.size()) +
                                              " does not match robot count " +
                                              std::to_string(robots));
  }
  params.validate();
  PlannedRun run;
  run.disc = build_spanning_graph(map);
  std::vector<Cell> seeds;
  for (const Cell s : starts) {
    if (!map.in_bounds(s) || map.occupied(s) || !run.disc.spanning.contains(mega_of(s))) {
      std::ostringstream os;
      os << "start " << s << " is not in free space";
      fail(ErrorCategory::kInvalidArgument, os.str());
    }
    seeds.push_back(mega_of(s));
  }
  run.component = connected_component(run.disc.spanning, seeds);

  const auto t0 = std::chrono::steady_clock::now();
  run.tiling = solve_brick_tiling(run.component);
  run.tree = method == TreeMethod::kTmstc ? merge_bricks(run.tiling.bricks, run.component)
                                          : build_tree(run.component, method, tree_seed);
  const Cell m0 = run.component.nodes().front();
  const Cell loop_start = starts.empty() ? Cell{2 * m0.x, 2 * m0.y} : starts.front();
  run.loop = circumnavigate(run.tree, loop_start);
  if (robots > run.loop.size()) {
    fail(ErrorCategory::kPlanning, "robot count " + std::to_string(robots) +
                                       " exceeds loop length " + std::to_string(run.loop.size()));
  }
  const std::vector<Cell> requested =
      starts.empty() ? spread_starts(run.loop, robots) : std::vector<Cell>(starts.begin(), starts.end());
  run.starts = anchor_starts(run.loop, requested);
  run.plan = balance_partition(run.loop, run.starts, params);
  run.planning_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

struct RunReport {
  std::string id;
  TreeMethod method = TreeMethod::kTmstc;
  std::size_t robots = 0;
  double max_time = 0;
  double min_time = 0;
  int turns = 0;
  std::size_t free_cells = 0;   // S
  std::size_t independent = 0;  // T
  std::size_t bricks = 0;       // R
  std::size_t loop_length = 0;
  double planning_seconds = 0;
};

inline GridMap materialize(const Scenario& s) {
  if (const auto* m = std::get_if<GridMap>(&s.map)) return m->with_resolution(s.params.d);
  return generate_random_map(std::get<GeneratorSpec>(s.map), s.params.d);
}

inline RunReport run_scenario(const Scenario& s) {
  if (s.robots < 1) fail(ErrorCategory::kInvalidArgument, "robot count must be at least 1");
  const GridMap map = materialize(s);
  const PlannedRun run = plan_coverage(map, s.robots, s.starts, s.params, s.method, s.tree_seed);
  RunReport r;
  r.id = s.id;
  r.method = s.method;
  r.robots = s.robots;
  r.max_time = run.plan.makespan();
  r.min_time = run.plan.min_time();
  r.turns = tree_turns(run.tree);
  r.free_cells = run.tiling.free_cells;
  r.independent = run.tiling.independent_size();
  r.bricks = run.tiling.brick_count();
  r.loop_length = run.loop.size();
  r.planning_seconds = run.planning_seconds;
  return r;
}

inline constexpr std::array<TreeMethod, 3> kTreeMethods = {TreeMethod::kTmstc, TreeMethod::kDfs,
                                                            TreeMethod::kKruskal};

struct TreeComparisonRow {
  std::string id;
  std::array<int, 3> turns{};  // indexed like kTreeMethods
};

struct TreeComparison {
  std::vector<TreeComparisonRow> rows;

  [[nodiscard]] std::array<long, 3> totals() const {
    std::array<long, 3> t{};
    for (const auto& r : rows) {
      for (std::size_t m = 0; m < 3; ++m) t[m] += r.turns[m];
    }
    return t;
  }
};

// Turns of each tree method on the connected free region of each scenario map.
inline TreeComparison compare_trees(std::span<const Scenario> scenarios) {
  TreeComparison out;
  for (const Scenario& s : scenarios) {
    const GridMap map = materialize(s);
    const auto disc = build_spanning_graph(map);
    std::vector<Cell> seeds;
    for (const Cell c : s.starts) seeds.push_back(mega_of(c));
    const SpanningGraph comp = connected_component(disc.spanning, seeds);
    TreeComparisonRow row;
    row.id = s.id;
    for (std::size_t m = 0; m < kTreeMethods.size(); ++m) {
      row.turns[m] = tree_turns(build_tree(comp, kTreeMethods[m], s.tree_seed));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

namespace detail {
inline std::string fixed(double v, int digits = 3) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}
}  // namespace detail

// Records: `turns id=<id> tmstc=<n> dfs=<n> kruskal=<n>`, then one
// `turns_total` line.
inline void write_tree_comparison(std::ostream& os, const TreeComparison& table) {
  for (const auto& r : table.rows) {
    os << "turns id=" << r.id << " tmstc=" << r.turns[0] << " dfs=" << r.turns[1]
       << " kruskal=" << r.turns[2] << '\n';
  }
  if (!table.rows.empty()) {
    const auto t = table.totals();
    os << "turns_total tmstc=" << t[0] << " dfs=" << t[1] << " kruskal=" << t[2] << '\n';
  }
}

inline void print_tree_comparison(std::ostream& os, const TreeComparison& table) {
  os << std::left << std::setw(16) << "map" << std::right << std::setw(8) << "dfs"
     << std::setw(10) << "kruskal" << std::setw(8) << "tmstc" << '\n';
  for (const auto& r : table.rows) {
    os << std::left << std::setw(16) << r.id << std::right << std::setw(8) << r.turns[1]
       << std::setw(10) << r.turns[2] << std::setw(8) << r.turns[0] << '\n';
  }
  if (!table.rows.empty()) {
    const auto t = table.totals();
    os << std::left << std::setw(16) << "total" << std::right << std::setw(8) << t[1]
       << std::setw(10) << t[2] << std::setw(8) << t[0] << '\n';
  }
}

// Field order: id method robots max_time min_time turns S T R loop planning_s.
inline void write_run_record(std::ostream& os, const RunReport& r, bool with_wall_time = true) {
  os << "run id=" << r.id << " method=" << to_string(r.method) << " robots=" << r.robots
     << " max_time=" << detail::fixed(r.max_time) << " min_time=" << detail::fixed(r.min_time)
     << " turns=" << r.turns << " S=" << r.free_cells << " T=" << r.independent
     << " R=" << r.bricks << " loop=" << r.loop_length;
  if (with_wall_time) os << " planning_s=" << detail::fixed(r.planning_seconds, 6);
  os << '\n';
}

inline void print_run_table(std::ostream& os, std::span<const RunReport> runs) {
  os << std::left << std::setw(16) << "map" << std::setw(9) << "method" << std::right
     << std::setw(4) << "k" << std::setw(12) << "max (s)" << std::setw(12) << "min (s)"
     << std::setw(12) << "plan (s)" << '\n';
  for (const auto& r : runs) {
    os << std::left << std::setw(16) << r.id << std::setw(9) << to_string(r.method) << std::right
       << std::setw(4) << r.robots << std::setw(12) << detail::fixed(r.max_time, 1)
       << std::setw(12) << detail::fixed(r.min_time, 1) << std::setw(12)
       << detail::fixed(r.planning_seconds, 4) << '\n';
  }
}

}  // namespace tmstc
