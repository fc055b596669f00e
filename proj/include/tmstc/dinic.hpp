#pragma once

// Dinic's blocking-flow max-flow. Adjacency is scanned in insertion order, so
// callers control tie-breaking by the order in which they add edges.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace tmstc {

template <typename Cap = int>
class MaxFlow {
 public:
  struct Arc {
    int to;
    int rev;  // index of the reverse arc in adj_[to]
    Cap cap;
  };

  explicit MaxFlow(int n) : adj_(static_cast<std::size_t>(n)), level_(adj_.size()), it_(adj_.size()) {}

  // Returns a handle (node, position) usable with flow_on(). No self loops.
  std::pair<int, int> add_edge(int from, int to, Cap cap) {
    auto& f = adj_[static_cast<std::size_t>(from)];
    auto& t = adj_[static_cast<std::size_t>(to)];
    f.push_back({to, static_cast<int>(t.size()), cap});
    t.push_back({from, static_cast<int>(f.size()) - 1, Cap{0}});
    return {from, static_cast<int>(f.size()) - 1};
  }

  Cap run(int source, int sink) {
    Cap total{0};
    while (build_levels(source, sink)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (true) {
        const Cap pushed = augment(source, sink, std::numeric_limits<Cap>::max());
        if (pushed == Cap{0}) break;
        total += pushed;
      }
    }
    return total;
  }

  [[nodiscard]] Cap flow_on(std::pair<int, int> handle) const {
    const auto& a = adj_[static_cast<std::size_t>(handle.first)][static_cast<std::size_t>(handle.second)];
    return adj_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap;
  }

  // Nodes reachable from source in the residual graph.
  [[nodiscard]] std::vector<bool> residual_reachable(int source) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<int> stack{source};
    seen[static_cast<std::size_t>(source)] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const Arc& a : adj_[static_cast<std::size_t>(u)]) {
        if (a.cap > Cap{0} && !seen[static_cast<std::size_t>(a.to)]) {
          seen[static_cast<std::size_t>(a.to)] = true;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }

 private:
  bool build_levels(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(source)] = 0;
    q.push(source);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const Arc& a : adj_[static_cast<std::size_t>(u)]) {
        if (a.cap > Cap{0} && level_[static_cast<std::size_t>(a.to)] < 0) {
          level_[static_cast<std::size_t>(a.to)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(sink)] >= 0;
  }

  // Recursion depth is bounded by the sink's level.
  Cap augment(int u, int sink, Cap limit) {
    if (u == sink) return limit;
    auto& edges = adj_[static_cast<std::size_t>(u)];
    for (int& i = it_[static_cast<std::size_t>(u)]; i < static_cast<int>(edges.size()); ++i) {
      Arc& a = edges[static_cast<std::size_t>(i)];
      if (a.cap <= Cap{0} ||
          level_[static_cast<std::size_t>(a.to)] != level_[static_cast<std::size_t>(u)] + 1) {
        continue;
      }
      const Cap pushed = augment(a.to, sink, limit < a.cap ? limit : a.cap);
      if (pushed > Cap{0}) {
        a.cap -= pushed;
        adj_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap += pushed;
        return pushed;
      }
    }
    return Cap{0};
  }

  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<int> it_;
};

}  // namespace tmstc
