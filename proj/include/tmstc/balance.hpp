#pragma once

// Min-max partition of a coverage loop into contiguous arcs, one per robot,
// with each arc priced by the stop-and-turn time model.
//
// Each arc is swept from its anchor: either straight to one end, or to one end
// first and then back past the anchor to the other end (a reversal costs two
// quarter turns). Arc costs never decrease when an arc grows, which makes the
// greedy feasibility test below exact for a given makespan bound.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "tmstc/coverage_path.hpp"
#include "tmstc/error.hpp"
#include "tmstc/geometry.hpp"

namespace tmstc {

// Cyclic index range [begin, begin + length) on a loop.
struct Arc {
  std::size_t begin = 0;
  std::size_t length = 0;

  [[nodiscard]] bool contains(std::size_t index, std::size_t loop_size) const noexcept {
    return (index + loop_size - begin % loop_size) % loop_size < length;
  }
  friend bool operator==(const Arc&, const Arc&) = default;
};

enum class SweepOrder { kOneWay, kBackwardFirst, kForwardFirst };

// Constant-time-ish arc pricing for one loop: turn positions and full-leg time
// prefix sums over the loop unrolled twice.
class LoopCostModel {
 public:
  LoopCostModel(const CoverageLoop& loop, const RobotParams& params)
      : size_(loop.size()), params_(params) {
    params_.validate();
    if (size_ == 0) fail(ErrorCategory::kInvalidArgument, "empty loop");
    for (std::size_t i = 0; i < size_ && size_ > 1; ++i) {
      Dir d{};
      if (!direction_between(loop[i], loop[i + 1], d)) {
        fail(ErrorCategory::kInvalidArgument, "loop has non-adjacent consecutive nodes");
      }
      steps_.push_back(d);
    }
    if (size_ >= 3) {
      for (std::size_t p = 0; p < 2 * size_; ++p) {
        if (steps_[(p + size_ - 1) % size_] != steps_[p % size_]) turns_.push_back(static_cast<long>(p));
      }
    }
    prefix_.assign(turns_.size(), 0.0);
    for (std::size_t r = 1; r < turns_.size(); ++r) {
      prefix_[r] = prefix_[r - 1] + leg(turns_[r] - turns_[r - 1]);
    }
  }

  [[nodiscard]] std::size_t loop_size() const noexcept { return size_; }
  [[nodiscard]] const RobotParams& params() const noexcept { return params_; }

  // Cost of covering `arc` starting at loop index `anchor`, which must lie in
  // the arc. Returns the cheaper of the two sweep orders.
  [[nodiscard]] double arc_cost(Arc arc, std::size_t anchor) const {
    return best(arc, anchor).first;
  }

  [[nodiscard]] std::pair<double, SweepOrder> best(Arc arc, std::size_t anchor) const {
    check(arc, anchor);
    const long s = static_cast<long>(arc.begin % size_);
    const long e = s + static_cast<long>(arc.length) - 1;
    const long a = s + static_cast<long>((anchor + size_ - static_cast<std::size_t>(s)) % size_);
    if (a == s || a == e) return {sweep_time(s, e), SweepOrder::kOneWay};
    const double back_first = reversal_time(s, a, s, e);
    const double fwd_first = reversal_time(a, e, s, e);
    if (fwd_first < back_first) return {fwd_first, SweepOrder::kForwardFirst};
    return {back_first, SweepOrder::kBackwardFirst};
  }

  // Unrolled arc [first, last] (first may be negative or exceed the loop),
  // anchor given in the same unrolled frame.
  [[nodiscard]] double unrolled_cost(long first, long last, long anchor) const {
    const long n = static_cast<long>(size_);
    const long shift = ((first % n) + n) % n - first;
    return arc_cost({static_cast<std::size_t>(first + shift), static_cast<std::size_t>(last - first + 1)},
                    static_cast<std::size_t>(((anchor + shift) % n + n) % n));
  }

 private:
  void check(Arc arc, std::size_t anchor) const {
    if (arc.length == 0) fail(ErrorCategory::kInvalidArgument, "empty arc");
    if (arc.length > size_) fail(ErrorCategory::kInvalidArgument, "arc longer than loop");
    if (anchor >= size_ || !arc.contains(anchor, size_)) {
      fail(ErrorCategory::kInvalidArgument, "anchor outside arc");
    }
  }

  [[nodiscard]] double leg(long steps) const {
    return leg_time(static_cast<double>(steps) * params_.d, params_);
  }

  // Legs and interior turn count of the straight traversal of [i, j], i <= j,
  // 0 <= i < size. Direction of travel does not matter.
  [[nodiscard]] std::pair<double, std::size_t> sweep(long i, long j) const {
    if (i == j) return {0.0, 0};
    const auto lo = std::upper_bound(turns_.begin(), turns_.end(), i);
    const auto hi = std::lower_bound(turns_.begin(), turns_.end(), j);
    if (lo >= hi) return {leg(j - i), 0};
    const auto r0 = static_cast<std::size_t>(lo - turns_.begin());
    const auto r1 = static_cast<std::size_t>(hi - turns_.begin()) - 1;
    const double legs = leg(turns_[r0] - i) + (prefix_[r1] - prefix_[r0]) + leg(j - turns_[r1]);
    return {legs, r1 - r0 + 1};
  }

  [[nodiscard]] double sweep_time(long i, long j) const {
    const auto [legs, turns] = sweep(i, j);
    return legs + turn_time(turns, params_);
  }

  // Out to one end over [i, j], reverse, then the whole arc [s, e].
  [[nodiscard]] double reversal_time(long i, long j, long s, long e) const {
    const auto [l1, t1] = sweep(i, j);
    const auto [l2, t2] = sweep(s, e);
    return l1 + l2 + turn_time(t1 + t2 + 2, params_);
  }

  std::size_t size_;
  RobotParams params_;
  std::vector<Dir> steps_;    // steps_[i] = heading of loop[i] -> loop[i+1]
  std::vector<long> turns_;   // unrolled positions where the heading changes
  std::vector<double> prefix_;
};

inline double arc_cost(const CoverageLoop& loop, Arc arc, std::size_t anchor,
                       const RobotParams& params) {
  return LoopCostModel(loop, params).arc_cost(arc, anchor);
}

// Concrete node sequence for sweeping `arc` from `anchor` in the given order.
inline std::vector<Cell> arc_traversal(const CoverageLoop& loop, Arc arc, std::size_t anchor,
                                       SweepOrder order) {
  const std::size_t n = loop.size();
  const std::size_t off = (anchor + n - arc.begin % n) % n;
  const std::size_t last = arc.length - 1;
  auto at = [&](std::size_t k) { return loop[arc.begin % n + k]; };
  std::vector<Cell> out;
  if (order == SweepOrder::kOneWay) {
    if (off == 0) {
      for (std::size_t k = 0; k <= last; ++k) out.push_back(at(k));
    } else {
      for (std::size_t k = off + 1; k-- > 0;) out.push_back(at(k));
    }
    return out;
  }
  if (order == SweepOrder::kBackwardFirst) {
    for (std::size_t k = off + 1; k-- > 0;) out.push_back(at(k));
    for (std::size_t k = 1; k <= last; ++k) out.push_back(at(k));
  } else {
    for (std::size_t k = off; k <= last; ++k) out.push_back(at(k));
    for (std::size_t k = last; k-- > 0;) out.push_back(at(k));
  }
  return out;
}

struct RobotStart {
  int robot_id = 0;
  Cell requested;
  std::size_t anchored = 0;
};

// Nearest loop node by Euclidean distance, ties to the lowest index. A robot
// whose anchor is taken moves forward along the loop to the next free index.
inline std::vector<RobotStart> anchor_starts(const CoverageLoop& loop,
                                             std::span<const Cell> requested) {
  const std::size_t n = loop.size();
  if (requested.empty()) fail(ErrorCategory::kInvalidArgument, "at least one robot is required");
  if (requested.size() > n) {
    fail(ErrorCategory::kPlanning, "robot count " + std::to_string(requested.size()) +
                                       " exceeds loop length " + std::to_string(n));
  }
  std::vector<bool> taken(n, false);
  std::vector<RobotStart> out;
  for (std::size_t r = 0; r < requested.size(); ++r) {
    const Cell q = requested[r];
    std::size_t best = 0;
    long long best_d = std::numeric_limits<long long>::max();
    for (std::size_t i = 0; i < n; ++i) {
      const long long ddx = loop.nodes[i].x - q.x;
      const long long ddy = loop.nodes[i].y - q.y;
      const long long dist = ddx * ddx + ddy * ddy;
      if (dist < best_d) {
        best_d = dist;
        best = i;
      }
    }
    while (taken[best]) best = (best + 1) % n;
    taken[best] = true;
    out.push_back({static_cast<int>(r), q, best});
  }
  return out;
}

// Evenly spaced anchors for runs without explicit starts.
inline std::vector<Cell> spread_starts(const CoverageLoop& loop, std::size_t k) {
  std::vector<Cell> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(loop.nodes[(i * loop.size()) / k]);
  return out;
}

struct RobotPlan {
  int robot_id = 0;
  std::size_t anchored = 0;
  Arc arc;
  std::vector<Cell> traversal;  // start-anchored; may revisit nodes after a reversal
  TwistSet twists;
  double time = 0;
};

struct CoveragePlan {
  std::vector<RobotPlan> robots;  // in robot id order

  [[nodiscard]] double makespan() const {
    double m = 0;
    for (const auto& r : robots) m = std::max(m, r.time);
    return m;
  }
  [[nodiscard]] double min_time() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : robots) m = std::min(m, r.time);
    return robots.empty() ? 0.0 : m;
  }
};

namespace detail {

// Robots in cyclic anchor order, unrolled so anchors strictly increase and the
// first robot has the smallest preceding gap.
struct CyclicLayout {
  std::vector<std::size_t> robot;  // index into starts
  std::vector<long> anchor;        // unrolled
  long loop = 0;
};

inline CyclicLayout make_layout(std::span<const RobotStart> starts, std::size_t loop_size) {
  CyclicLayout lay;
  lay.loop = static_cast<long>(loop_size);
  std::vector<std::size_t> order(starts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return starts[a].anchored < starts[b].anchored; });
  const std::size_t k = order.size();
  std::size_t first = 0;
  long smallest = std::numeric_limits<long>::max();
  for (std::size_t i = 0; i < k; ++i) {
    const long cur = static_cast<long>(starts[order[i]].anchored);
    const long prev = static_cast<long>(starts[order[(i + k - 1) % k]].anchored);
    long gap = ((cur - prev) % lay.loop + lay.loop) % lay.loop;
    if (gap == 0) gap = lay.loop;
    if (gap < smallest) {
      smallest = gap;
      first = i;
    }
  }
  const long base = static_cast<long>(starts[order[first]].anchored);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t r = order[(first + i) % k];
    lay.robot.push_back(r);
    const long a = static_cast<long>(starts[r].anchored);
    lay.anchor.push_back(base + ((a - base) % lay.loop + lay.loop) % lay.loop);
  }
  return lay;
}

struct Cuts {
  std::vector<long> first;  // unrolled arc bounds per layout slot
  std::vector<long> last;
  double makespan = 0;
};

inline std::optional<Cuts> feasible(const LoopCostModel& model, const CyclicLayout& lay,
                                    double bound, bool strict) {
  const std::size_t k = lay.anchor.size();
  const long n = lay.loop;
  auto fits = [&](double c) { return strict ? c < bound : c <= bound; };
  auto cost = [&](std::size_t slot, long first, long last) {
    return model.unrolled_cost(first, last, lay.anchor[slot]);
  };
  for (long s0 = lay.anchor[k - 1] + 1 - n; s0 <= lay.anchor[0]; ++s0) {
    Cuts cuts;
    long s = s0;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < k && ok; ++i) {
      long lo = lay.anchor[i];
      long hi = lay.anchor[i + 1] - 1;
      if (!fits(cost(i, s, lo))) {
        ok = false;
        break;
      }
      while (lo < hi) {
        const long mid = lo + (hi - lo + 1) / 2;
        if (fits(cost(i, s, mid))) {
          lo = mid;
        } else {
          hi = mid - 1;
        }
      }
      cuts.first.push_back(s);
      cuts.last.push_back(lo);
      s = lo + 1;
    }
    if (!ok) continue;
    const long e = s0 + n - 1;
    if (!fits(cost(k - 1, s, e))) continue;
    cuts.first.push_back(s);
    cuts.last.push_back(e);
    for (std::size_t i = 0; i < k; ++i) {
      cuts.makespan = std::max(cuts.makespan, cost(i, cuts.first[i], cuts.last[i]));
    }
    return cuts;
  }
  return std::nullopt;
}

// Moves each inner cut by one while that lowers the larger of its two arcs.
inline void refine(const LoopCostModel& model, const CyclicLayout& lay, Cuts& cuts) {
  const std::size_t k = lay.anchor.size();
  if (k < 2) return;
  auto cost = [&](std::size_t slot) {
    return model.unrolled_cost(cuts.first[slot], cuts.last[slot], lay.anchor[slot]);
  };
  const std::size_t limit = 4 * static_cast<std::size_t>(lay.loop) * k;
  bool improved = true;
  for (std::size_t round = 0; improved && round < limit; ++round) {
    improved = false;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const double before = std::max(cost(i), cost(i + 1));
      for (long delta : {-1L, 1L}) {
        const long cut = cuts.last[i] + delta;
        if (cut < lay.anchor[i] || cut + 1 > lay.anchor[i + 1]) continue;
        const long old_last = cuts.last[i];
        cuts.last[i] = cut;
        cuts.first[i + 1] = cut + 1;
        if (std::max(cost(i), cost(i + 1)) < before) {
          improved = true;
          break;
        }
        cuts.last[i] = old_last;
        cuts.first[i + 1] = old_last + 1;
      }
    }
  }
}

}  // namespace detail

// Exact min-max cut placement: bisection on the makespan with a greedy
// feasibility sweep, finished by a strict-improvement check so the result is
// the optimum over all placements, then local cut refinement.
inline CoveragePlan balance_partition(const CoverageLoop& loop, std::span<const RobotStart> starts,
                                      const RobotParams& params) {
  const LoopCostModel model(loop, params);
  const std::size_t n = loop.size();
  if (starts.empty()) fail(ErrorCategory::kInvalidArgument, "at least one robot is required");
  {
    std::vector<std::size_t> seen;
    for (const auto& s : starts) {
      if (s.anchored >= n) fail(ErrorCategory::kInvalidArgument, "anchor index outside loop");
      seen.push_back(s.anchored);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      fail(ErrorCategory::kInvalidArgument, "robots share an anchor");
    }
  }
  const auto lay = detail::make_layout(starts, n);

  auto best = detail::feasible(model, lay, std::numeric_limits<double>::infinity(), false);
  if (!best) fail(ErrorCategory::kInternal, "no feasible partition");
  double lo = 0.0;
  double hi = best->makespan;
  while (true) {
    if (hi - lo <= 1e-12 * std::max(1.0, hi)) {
      auto better = detail::feasible(model, lay, hi, true);
      if (!better) break;
      best = std::move(better);
      hi = best->makespan;
      continue;
    }
    const double mid = lo + (hi - lo) / 2;
    if (auto cand = detail::feasible(model, lay, mid, false)) {
      best = std::move(cand);
      hi = best->makespan;
    } else {
      lo = mid;
    }
  }
  detail::refine(model, lay, *best);

  CoveragePlan plan;
  plan.robots.resize(starts.size());
  for (std::size_t slot = 0; slot < lay.robot.size(); ++slot) {
    const RobotStart& start = starts[lay.robot[slot]];
    const long first = best->first[slot];
    const long nn = static_cast<long>(n);
    RobotPlan rp;
    rp.robot_id = start.robot_id;
    rp.anchored = start.anchored;
    rp.arc = {static_cast<std::size_t>(((first % nn) + nn) % nn),
              static_cast<std::size_t>(best->last[slot] - first + 1)};
    const auto [time, order] = model.best(rp.arc, rp.anchored);
    rp.time = time;
    rp.traversal = arc_traversal(loop, rp.arc, rp.anchored, order);
    rp.twists = extract_twists(rp.traversal);
    plan.robots[lay.robot[slot]] = std::move(rp);
  }
  return plan;
}

}  // namespace tmstc
