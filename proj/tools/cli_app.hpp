#pragma once

// Command-line front end: tile, tree, plan, bench.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tmstc/tmstc.hpp"

namespace tmstc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kParseFailure = 3,
  kPlanningFailure = 4,
  kIoFailure = 5,
  kInternalFailure = 6,
};

inline int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kParse: return kParseFailure;
    case ErrorCategory::kInvalidArgument: return kUsage;
    case ErrorCategory::kDisconnected:
    case ErrorCategory::kPlanning: return kPlanningFailure;
    case ErrorCategory::kIo: return kIoFailure;
    case ErrorCategory::kInternal: return kInternalFailure;
  }
  return kInternalFailure;
}

struct CliConfig {
  std::string subcommand;
  std::string map_path;
  std::string format;  // empty = infer from extension
  RobotParams params;
  std::optional<std::size_t> robots;
  std::vector<std::string> start_specs;
  std::string method = "tmstc";
  std::uint64_t seed = 1;
  std::string out;
  std::string svg;
  // bench
  std::size_t maps = 20;
  int mega = 20;
  double obstacles = 0.1;
  std::size_t max_robots = 5;
};

inline Cell parse_start(const std::string& spec) {
  const auto comma = spec.find(',');
  if (comma == std::string::npos) fail(ErrorCategory::kInvalidArgument, "start '" + spec + "' is not x,y");
  try {
    std::size_t used = 0;
    const int x = std::stoi(spec.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("x");
    const std::string ys = spec.substr(comma + 1);
    const int y = std::stoi(ys, &used);
    if (used != ys.size()) throw std::invalid_argument("y");
    return {x, y};
  } catch (const std::logic_error&) {
    fail(ErrorCategory::kInvalidArgument, "start '" + spec + "' is not x,y");
  }
}

inline GridMap load_map(const CliConfig& cfg) {
  if (cfg.map_path.empty()) fail(ErrorCategory::kInvalidArgument, "--map is required");
  MapFormat format = MapFormat::kGrid01;
  if (cfg.format.empty()) {
    if (std::filesystem::path(cfg.map_path).extension() == ".map") format = MapFormat::kMovingAi;
  } else if (const auto f = parse_map_format(cfg.format)) {
    format = *f;
  } else {
    fail(ErrorCategory::kInvalidArgument, "unknown format '" + cfg.format + "'");
  }
  return parse_map(read_file(cfg.map_path), format, cfg.params.d);
}

inline TreeMethod method_of(const CliConfig& cfg) {
  const auto m = parse_tree_method(cfg.method);
  if (!m) fail(ErrorCategory::kInvalidArgument, "unknown method '" + cfg.method + "'");
  return *m;
}

inline std::vector<Cell> starts_of(const CliConfig& cfg) {
  std::vector<Cell> out;
  for (const auto& s : cfg.start_specs) out.push_back(parse_start(s));
  return out;
}

inline void emit(const CliConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << content;
  } else {
    write_file_atomic(cfg.out, content);
  }
}

// Prints S, T, R and the brick-id grid.
inline int cmd_tile(const CliConfig& cfg, std::ostream& out) {
  const GridMap map = load_map(cfg);
  const auto disc = build_spanning_graph(map);
  const BrickTiling t = solve_brick_tiling(disc.spanning);
  if (t.brick_count() != t.free_cells - t.independent_size()) {
    fail(ErrorCategory::kInternal, "R != S - T");
  }
  std::ostringstream os;
  os << "S=" << t.free_cells << " T=" << t.independent_size() << " R=" << t.brick_count() << '\n';
  write_tiling(os, disc.spanning, t.bricks);
  emit(cfg, os.str(), out);
  if (!cfg.svg.empty()) {
    std::ostringstream svg;
    write_svg(svg, map, {.bricks = &t.bricks});
    write_file_atomic(cfg.svg, svg.str());
  }
  return kOk;
}

inline int cmd_tree(const CliConfig& cfg, std::ostream& out) {
  const GridMap map = load_map(cfg);
  const auto disc = build_spanning_graph(map);
  std::vector<Cell> seeds;
  for (const Cell s : starts_of(cfg)) seeds.push_back(mega_of(s));
  const SpanningGraph comp = connected_component(disc.spanning, seeds);
  const TreeMethod method = method_of(cfg);
  const BrickTiling tiling = solve_brick_tiling(comp);
  const SpanningTree tree = method == TreeMethod::kTmstc ? merge_bricks(tiling.bricks, comp)
                                                         : build_tree(comp, method, cfg.seed);
  std::ostringstream os;
  os << "method=" << to_string(method) << " nodes=" << tree.size()
     << " edges=" << tree.edges().size() << " turns=" << tree_turns(tree) << '\n';
  write_tree_edges(os, tree);
  emit(cfg, os.str(), out);
  if (!cfg.svg.empty()) {
    std::ostringstream svg;
    const BrickSet* bricks = method == TreeMethod::kTmstc ? &tiling.bricks : nullptr;
    write_svg(svg, map, {.bricks = bricks, .tree = &tree});
    write_file_atomic(cfg.svg, svg.str());
  }
  return kOk;
}

inline int cmd_plan(const CliConfig& cfg, std::ostream& out) {
  const std::vector<Cell> starts = starts_of(cfg);
  const std::size_t k = cfg.robots.value_or(starts.empty() ? 1 : starts.size());
  if (!starts.empty() && starts.size() != k) {
    fail(ErrorCategory::kInvalidArgument, "--robots " + std::to_string(k) + " but " +
                                              std::to_string(starts.size()) + " --start given");
  }
  const GridMap map = load_map(cfg);
  const PlannedRun run = plan_coverage(map, k, starts, cfg.params, method_of(cfg), cfg.seed);
  std::ostringstream os;
  write_plan(os, run.plan, cfg.params.d);
  emit(cfg, os.str(), out);
  if (!cfg.svg.empty()) {
    std::ostringstream svg;
    const BrickSet* bricks = method_of(cfg) == TreeMethod::kTmstc ? &run.tiling.bricks : nullptr;
    write_svg(svg, map, {.bricks = bricks, .tree = &run.tree, .plan = &run.plan});
    write_file_atomic(cfg.svg, svg.str());
  }
  return kOk;
}

// Tree comparison and planning runs (k = 1..max) over generated maps plus the
// optional --map. Human tables go to `out`, records to --out when given.
inline int cmd_bench(const CliConfig& cfg, std::ostream& out) {
  std::vector<Scenario> maps;
  if (!cfg.map_path.empty()) {
    Scenario s;
    s.id = std::filesystem::path(cfg.map_path).stem().string();
    s.map = load_map(cfg);
    s.params = cfg.params;
    s.tree_seed = cfg.seed;
    s.starts = starts_of(cfg);
    maps.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < cfg.maps; ++i) {
    Scenario s;
    s.id = "random" + std::to_string(i);
    s.map = GeneratorSpec{cfg.mega, cfg.mega, cfg.obstacles, cfg.seed + i};
    s.params = cfg.params;
    s.tree_seed = cfg.seed + i;
    maps.push_back(std::move(s));
  }
  const TreeComparison table = compare_trees(maps);

  std::vector<TreeMethod> methods;
  if (cfg.method == "all") {
    methods.assign(kTreeMethods.begin(), kTreeMethods.end());
  } else {
    methods.push_back(method_of(cfg));
  }
  std::vector<RunReport> runs;
  for (const Scenario& base : maps) {
    const std::size_t fixed_k = base.starts.size();
    for (const TreeMethod m : methods) {
      for (std::size_t k = fixed_k ? fixed_k : 1; k <= (fixed_k ? fixed_k : cfg.max_robots); ++k) {
        Scenario s = base;
        s.method = m;
        s.robots = k;
        runs.push_back(run_scenario(s));
      }
    }
  }

  std::ostringstream records;
  write_tree_comparison(records, table);
  for (const auto& r : runs) write_run_record(records, r);
  if (!cfg.out.empty() && cfg.out != "-") {
    write_file_atomic(cfg.out, records.str());
    print_tree_comparison(out, table);
    if (!runs.empty()) {
      out << '\n';
      print_run_table(out, runs);
    }
  } else {
    out << records.str();
  }
  return kOk;
}

inline void add_common(CLI::App* sub, CliConfig& cfg) {
  sub->add_option("--map", cfg.map_path, "Map file");
  sub->add_option("--format", cfg.format, "movingai|grid01 (default: by extension, .map = movingai)")
      ->check(CLI::IsMember({"movingai", "grid01"}));
  sub->add_option("--d", cfg.params.d, "Unit cell size / tool width in meters")->check(CLI::PositiveNumber);
  sub->add_option("--vmax", cfg.params.v_max, "Max linear velocity m/s")->check(CLI::PositiveNumber);
  sub->add_option("--omega", cfg.params.omega, "Angular velocity rad/s")->check(CLI::PositiveNumber);
  sub->add_option("--accel", cfg.params.accel, "Translational acceleration m/s^2")->check(CLI::PositiveNumber);
  sub->add_option("--start", cfg.start_specs, "Robot start x,y in unit cells (repeatable)");
  sub->add_option("--seed", cfg.seed, "Random seed");
  sub->add_option("--out", cfg.out, "Output file (default stdout)");
  sub->add_option("--svg", cfg.svg, "SVG rendering output");
}

// Parses argv and runs the chosen subcommand. Errors print one line to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Turn-minimizing multi-robot spanning tree coverage planner"};
  app.require_subcommand(1);
  auto* tile = app.add_subcommand("tile", "Minimum brick tiling of the map");
  auto* tree = app.add_subcommand("tree", "Build a spanning tree and count its turns");
  auto* plan = app.add_subcommand("plan", "Multi-robot coverage plan");
  auto* bench = app.add_subcommand("bench", "Tree and planning comparison on random maps");
  for (auto* sub : {tile, tree, plan, bench}) add_common(sub, cfg);
  for (auto* sub : {tree, plan}) {
    sub->add_option("--method", cfg.method, "tmstc|dfs|kruskal")
        ->check(CLI::IsMember({"tmstc", "dfs", "kruskal"}));
  }
  plan->add_option("--robots", cfg.robots, "Robot count")->check(CLI::PositiveNumber);
  cfg.method = "tmstc";
  auto* bench_method = bench->add_option("--method", cfg.method, "tmstc|dfs|kruskal|all (default all)")
      ->check(CLI::IsMember({"tmstc", "dfs", "kruskal", "all"}));
  bench->add_option("--maps", cfg.maps, "Number of generated maps");
  bench->add_option("--mega", cfg.mega, "Generated map side in mega cells")->check(CLI::PositiveNumber);
  bench->add_option("--obstacles", cfg.obstacles, "Obstacle ratio in [0,1)")->check(CLI::Range(0.0, 0.999999));
  bench->add_option("--robots", cfg.max_robots, "Largest robot count (runs 1..k)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (auto& ch : msg) {
      if (ch == '\n') ch = ' ';
    }
    err << "error: usage: " << msg << '\n';
    return kUsage;
  }
  if (bench->parsed() && bench_method->count() == 0) cfg.method = "all";

  try {
    if (tile->parsed()) return cmd_tile(cfg, out);
    if (tree->parsed()) return cmd_tree(cfg, out);
    if (plan->parsed()) return cmd_plan(cfg, out);
    return cmd_bench(cfg, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.category()) << ": " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "error: internal error: " << e.what() << '\n';
    return kInternalFailure;
  }
}

}  // namespace tmstc::cli
