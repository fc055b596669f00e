#pragma once

// Exhaustive minimum brick count, used as a reference for small graphs.
// Shares nothing with the matching pipeline beyond the graph type.

#include <cstddef>
#include <vector>

#include "tmstc/error.hpp"
#include "tmstc/grid_map.hpp"

namespace tmstc {

inline constexpr std::size_t kBruteForceTilingLimit = 16;

namespace detail {

class TilingSearch {
 public:
  explicit TilingSearch(const SpanningGraph& graph)
      : graph_(graph), covered_(graph.size(), false), best_(graph.size()) {}

  std::size_t run() {
    search(0, 0);
    return best_;
  }

 private:
  // The first uncovered cell in row-major order must be the first cell of
  // whatever brick covers it, so that brick extends right or down from it.
  void search(std::size_t from, std::size_t used) {
    if (used >= best_) return;
    std::size_t i = from;
    while (i < covered_.size() && covered_[i]) ++i;
    if (i == covered_.size()) {
      best_ = used;
      return;
    }
    const Cell origin = graph_.nodes()[i];
    for (Dir d : {Dir::kRight, Dir::kDown}) {
      std::vector<std::size_t> taken{i};
      covered_[i] = true;
      Cell c = origin;
      while (true) {
        c = step(c, d);
        const int id = graph_.id(c);
        if (id < 0 || covered_[static_cast<std::size_t>(id)]) break;
        covered_[static_cast<std::size_t>(id)] = true;
        taken.push_back(static_cast<std::size_t>(id));
        search(i + 1, used + 1);
      }
      for (std::size_t t : taken) covered_[t] = false;
    }
    // Single-cell brick.
    covered_[i] = true;
    search(i + 1, used + 1);
    covered_[i] = false;
  }

  const SpanningGraph& graph_;
  std::vector<bool> covered_;
  std::size_t best_;
};

}  // namespace detail

inline std::size_t brute_force_min_tiling(const SpanningGraph& graph) {
  if (graph.size() > kBruteForceTilingLimit) {
    fail(ErrorCategory::kInvalidArgument,
         "instance too large for exhaustive tiling (" + std::to_string(graph.size()) +
             " cells, limit " + std::to_string(kBruteForceTilingLimit) + ")");
  }
  if (graph.empty()) return 0;
  return detail::TilingSearch(graph).run();
}

}  // namespace tmstc
