#pragma once

// Spanning trees over the mega-cell graph: the turn-minimizing brick merge and
// the DFS / Kruskal baselines it is compared against.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <random>
#include <sstream>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "tmstc/brick_tiling.hpp"
#include "tmstc/error.hpp"
#include "tmstc/geometry.hpp"
#include "tmstc/grid_map.hpp"
#include "tmstc/union_find.hpp"

namespace tmstc {

class SpanningTree {
 public:
  using Edge = SpanningGraph::Edge;

  SpanningTree() = default;

  // Edges are node-id pairs of `graph`; each must be a graph edge.
  SpanningTree(SpanningGraph graph, std::vector<Edge> edges)
      : graph_(std::move(graph)), edges_(std::move(edges)), masks_(graph_.size()) {
    for (auto& e : edges_) {
      if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
      fail(ErrorCategory::kInvalidArgument, "duplicate tree edge");
    }
    for (const auto& [a, b] : edges_) {
      if (a < 0 || static_cast<std::size_t>(b) >= graph_.size()) {
        fail(ErrorCategory::kInvalidArgument, "tree edge references unknown node");
      }
      Dir d{};
      if (!direction_between(graph_.node(a), graph_.node(b), d)) {
        fail(ErrorCategory::kInvalidArgument, "tree edge joins non-adjacent mega cells");
      }
      masks_[static_cast<std::size_t>(a)] = masks_[static_cast<std::size_t>(a)].with(d);
      masks_[static_cast<std::size_t>(b)] = masks_[static_cast<std::size_t>(b)].with(opposite(d));
    }
  }

  [[nodiscard]] const SpanningGraph& graph() const noexcept { return graph_; }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] std::size_t size() const noexcept { return graph_.size(); }
  [[nodiscard]] DirMask mask(int node_id) const { return masks_.at(static_cast<std::size_t>(node_id)); }
  [[nodiscard]] int degree(int node_id) const { return mask(node_id).degree(); }

  [[nodiscard]] bool has_edge(Cell a, Cell b) const {
    const int ia = graph_.id(a);
    Dir d{};
    return ia >= 0 && direction_between(a, b, d) && mask(ia).has(d);
  }

  // |E| = |V| - 1 and connected.
  [[nodiscard]] bool is_spanning_tree() const {
    if (graph_.empty() || edges_.size() + 1 != graph_.size()) return false;
    UnionFind uf(graph_.size());
    for (const auto& [a, b] : edges_) {
      if (!uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b))) return false;
    }
    return uf.set_count() == 1;
  }

  friend bool operator==(const SpanningTree& a, const SpanningTree& b) {
    return a.graph_ == b.graph_ && a.edges_ == b.edges_;
  }

 private:
  SpanningGraph graph_;
  std::vector<Edge> edges_;
  std::vector<DirMask> masks_;
};

// Turns the circumnavigating path makes around a node with the given incident
// tree edges: 0 straight-through, 2 for a corner, an end or a T, 4 for a cross.
// An isolated node is circled by a square loop and counts 4.
inline constexpr int turn_count(DirMask incident) noexcept {
  switch (incident.degree()) {
    case 0: return 4;
    case 1: return 2;
    case 2: {
      const bool straight = (incident.has(Dir::kLeft) && incident.has(Dir::kRight)) ||
                            (incident.has(Dir::kUp) && incident.has(Dir::kDown));
      return straight ? 0 : 2;
    }
    case 3: return 2;
    default: return 4;
  }
}

// Change in total turns from adding the edge a -> b (direction `a_to_b`).
inline constexpr int edge_cost(DirMask a, DirMask b, Dir a_to_b) noexcept {
  return turn_count(a.with(a_to_b)) + turn_count(b.with(opposite(a_to_b))) - turn_count(a) -
         turn_count(b);
}

// Turns of the loop that circumnavigates the tree.
inline int tree_turns(const SpanningTree& tree) {
  int total = 0;
  for (std::size_t i = 0; i < tree.size(); ++i) total += turn_count(tree.mask(static_cast<int>(i)));
  return total;
}

struct MergeStep {
  int edge_index = 0;  // into graph.edges()
  int cost = 0;
};

// Optional record of a merge run, for auditing.
struct MergeTrace {
  std::vector<MergeStep> accepted;
  std::size_t pops = 0;
  std::size_t reinserts = 0;
};

// Greedy brick merge: all intra-brick edges first, then connectors popped from
// a min-heap of cached costs. A popped connector is accepted only if its
// recomputed cost equals the cached one; otherwise it is reinserted with the
// fresh cost. Ties pop in ascending edge index.
inline SpanningTree merge_bricks(const BrickSet& bricks, const SpanningGraph& graph,
                                 MergeTrace* trace = nullptr) {
  if (!is_valid_tiling(graph, bricks)) {
    fail(ErrorCategory::kInvalidArgument, "bricks do not tile the spanning graph");
  }
  const std::size_t n = graph.size();
  UnionFind uf(n);
  std::vector<DirMask> mask(n);
  std::vector<SpanningTree::Edge> tree_edges;
  tree_edges.reserve(n ? n - 1 : 0);

  auto add = [&](int a, int b) {
    Dir d{};
    direction_between(graph.node(a), graph.node(b), d);
    mask[static_cast<std::size_t>(a)] = mask[static_cast<std::size_t>(a)].with(d);
    mask[static_cast<std::size_t>(b)] = mask[static_cast<std::size_t>(b)].with(opposite(d));
    uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    tree_edges.emplace_back(std::min(a, b), std::max(a, b));
  };

  for (const Brick& brick : bricks.bricks) {
    for (std::size_t j = 0; j + 1 < brick.cells.size(); ++j) {
      add(graph.id(brick.cells[j]), graph.id(brick.cells[j + 1]));
    }
  }

  const auto& edges = graph.edges();
  auto cost_of = [&](int e) {
    const auto [a, b] = edges[static_cast<std::size_t>(e)];
    Dir d{};
    direction_between(graph.node(a), graph.node(b), d);
    return edge_cost(mask[static_cast<std::size_t>(a)], mask[static_cast<std::size_t>(b)], d);
  };

  using Entry = std::pair<int, int>;  // (cached cost, edge index)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  {
    std::vector<SpanningTree::Edge> in_tree = tree_edges;
    std::sort(in_tree.begin(), in_tree.end());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!std::binary_search(in_tree.begin(), in_tree.end(), edges[e])) {
        heap.emplace(cost_of(static_cast<int>(e)), static_cast<int>(e));
      }
    }
  }

  while (!heap.empty() && uf.set_count() > 1) {
    const auto [cached, e] = heap.top();
    heap.pop();
    if (trace) ++trace->pops;
    const auto [a, b] = edges[static_cast<std::size_t>(e)];
    if (uf.same(static_cast<std::size_t>(a), static_cast<std::size_t>(b))) continue;
    const int fresh = cost_of(e);
    if (fresh == cached) {
      add(a, b);
      if (trace) trace->accepted.push_back({e, fresh});
    } else {
      heap.emplace(fresh, e);
      if (trace) ++trace->reinserts;
    }
  }
  if (uf.set_count() > 1) {
    fail(ErrorCategory::kDisconnected, "spanning graph is disconnected; bricks cannot form one tree");
  }
  return SpanningTree(graph, std::move(tree_edges));
}

// Depth-first tree; neighbors visited right, down, left, up.
inline SpanningTree dfs_tree(const SpanningGraph& graph, Cell root) {
  const int r = graph.id(root);
  if (r < 0) {
    std::ostringstream os;
    os << "root " << root << " is not a spanning node";
    fail(ErrorCategory::kInvalidArgument, os.str());
  }
  std::vector<bool> seen(graph.size(), false);
  std::vector<SpanningTree::Edge> tree_edges;
  std::vector<std::pair<int, int>> stack{{r, 0}};  // (node, next direction slot)
  seen[static_cast<std::size_t>(r)] = true;
  while (!stack.empty()) {
    auto& [u, slot] = stack.back();
    if (slot == 4) {
      stack.pop_back();
      continue;
    }
    const int v = graph.neighbors(u)[static_cast<std::size_t>(slot++)];
    if (v >= 0 && !seen[static_cast<std::size_t>(v)]) {
      seen[static_cast<std::size_t>(v)] = true;
      tree_edges.emplace_back(u, v);
      stack.emplace_back(v, 0);
    }
  }
  if (tree_edges.size() + 1 != graph.size()) {
    fail(ErrorCategory::kDisconnected, "spanning graph is disconnected");
  }
  return SpanningTree(graph, std::move(tree_edges));
}

// Union-find over the edges in a seeded shuffled order. Fisher-Yates driven by
// raw mt19937_64 output so the order is identical across standard libraries.
inline SpanningTree kruskal_tree(const SpanningGraph& graph, std::uint64_t seed) {
  std::vector<SpanningTree::Edge> order = graph.edges();
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[static_cast<std::size_t>(rng() % i)]);
  }
  UnionFind uf(graph.size());
  std::vector<SpanningTree::Edge> tree_edges;
  for (const auto& [a, b] : order) {
    if (uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b))) {
      tree_edges.emplace_back(a, b);
    }
  }
  if (graph.empty() || uf.set_count() > 1) {
    fail(ErrorCategory::kDisconnected, "spanning graph is disconnected");
  }
  return SpanningTree(graph, std::move(tree_edges));
}

enum class TreeMethod { kTmstc, kDfs, kKruskal };

inline constexpr std::string_view to_string(TreeMethod m) noexcept {
  switch (m) {
    case TreeMethod::kTmstc: return "tmstc";
    case TreeMethod::kDfs: return "dfs";
    case TreeMethod::kKruskal: return "kruskal";
  }
  return "?";
}

inline std::optional<TreeMethod> parse_tree_method(std::string_view name) {
  if (name == "tmstc") return TreeMethod::kTmstc;
  if (name == "dfs") return TreeMethod::kDfs;
  if (name == "kruskal") return TreeMethod::kKruskal;
  return std::nullopt;
}

// DFS is rooted at the lowest node id; the seed only affects Kruskal.
inline SpanningTree build_tree(const SpanningGraph& graph, TreeMethod method,
                               std::uint64_t seed = 0) {
  if (graph.empty()) fail(ErrorCategory::kInvalidArgument, "empty spanning graph");
  switch (method) {
    case TreeMethod::kTmstc: return merge_bricks(min_brick_tiling(graph), graph);
    case TreeMethod::kDfs: return dfs_tree(graph, graph.nodes().front());
    case TreeMethod::kKruskal: return kruskal_tree(graph, seed);
  }
  fail(ErrorCategory::kInternal, "unknown tree method");
}

}  // namespace tmstc
