#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <ostream>

namespace tmstc {

// Integer grid coordinate: x = column, y = row, origin top-left.
struct Cell {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(const Cell&, const Cell&) = default;
  // Row-major order.
  friend constexpr std::strong_ordering operator<=>(const Cell& a, const Cell& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
  friend std::ostream& operator<<(std::ostream& os, const Cell& c) {
    return os << '(' << c.x << ',' << c.y << ')';
  }
};

// Neighbor scan order used throughout: right, down, left, up.
enum class Dir : std::uint8_t { kRight = 0, kDown = 1, kLeft = 2, kUp = 3 };

inline constexpr std::array<Dir, 4> kAllDirs = {Dir::kRight, Dir::kDown, Dir::kLeft,
                                                Dir::kUp};

inline constexpr int dx(Dir d) noexcept {
  return d == Dir::kRight ? 1 : d == Dir::kLeft ? -1 : 0;
}
inline constexpr int dy(Dir d) noexcept {
  return d == Dir::kDown ? 1 : d == Dir::kUp ? -1 : 0;
}
inline constexpr Dir opposite(Dir d) noexcept {
  return static_cast<Dir>((static_cast<int>(d) + 2) % 4);
}
inline constexpr bool is_horizontal(Dir d) noexcept {
  return d == Dir::kRight || d == Dir::kLeft;
}
inline constexpr Cell step(Cell c, Dir d) noexcept { return {c.x + dx(d), c.y + dy(d)}; }

inline constexpr int manhattan(Cell a, Cell b) noexcept {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

// Direction of a unit step a -> b; false if the cells are not 4-adjacent.
inline constexpr bool direction_between(Cell a, Cell b, Dir& out) noexcept {
  for (Dir d : kAllDirs) {
    if (step(a, d) == b) {
      out = d;
      return true;
    }
  }
  return false;
}

// Set of incident directions at a node, one bit per Dir.
class DirMask {
 public:
  constexpr DirMask() = default;
  constexpr explicit DirMask(std::uint8_t bits) : bits_(bits & 0xF) {}

  [[nodiscard]] constexpr bool has(Dir d) const noexcept {
    return (bits_ >> static_cast<int>(d)) & 1U;
  }
  [[nodiscard]] constexpr DirMask with(Dir d) const noexcept {
    return DirMask(static_cast<std::uint8_t>(bits_ | (1U << static_cast<int>(d))));
  }
  [[nodiscard]] constexpr int degree() const noexcept {
    int n = 0;
    for (Dir d : kAllDirs) n += has(d) ? 1 : 0;
    return n;
  }
  [[nodiscard]] constexpr std::uint8_t bits() const noexcept { return bits_; }

  friend constexpr bool operator==(DirMask, DirMask) = default;

 private:
  std::uint8_t bits_ = 0;
};

}  // namespace tmstc
