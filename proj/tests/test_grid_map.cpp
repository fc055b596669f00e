#include <gtest/gtest.h>

#include <random>
#include <string>

#include "support.hpp"
#include "tmstc/grid_map.hpp"

namespace tmstc {
namespace {

TEST(ParseMap, Grid01Transcription) {
  const GridMap m = parse_map("10\n00\n01\n", MapFormat::kGrid01);
  EXPECT_EQ(m.width(), 2);
  EXPECT_EQ(m.height(), 3);
  EXPECT_TRUE(m.occupied({0, 0}));
  EXPECT_TRUE(m.occupied({1, 2}));
  EXPECT_FALSE(m.occupied({1, 0}));
  EXPECT_EQ(m.free_count(), 4u);
}

TEST(ParseMap, Grid01OptionalHeader) {
  const GridMap a = parse_map("3 2\n10\n00\n01\n", MapFormat::kGrid01);
  const GridMap b = parse_map("10\r\n00\r\n01", MapFormat::kGrid01);
  EXPECT_EQ(a, b);
  EXPECT_THROW(parse_map("4 2\n10\n00\n01\n", MapFormat::kGrid01), Error);
}

TEST(ParseMap, MovingAiAllFree) {
  const GridMap m = parse_map("type octile\nheight 4\nwidth 4\nmap\n....\n....\n....\n....\n",
                              MapFormat::kMovingAi);
  EXPECT_EQ(m.width(), 4);
  EXPECT_EQ(m.height(), 4);
  EXPECT_EQ(m.free_count(), 16u);
}

TEST(ParseMap, MovingAiGlyphs) {
  const GridMap m = parse_map("type octile\nheight 1\nwidth 7\nmap\n.GT@OSW\n", MapFormat::kMovingAi);
  EXPECT_TRUE(m.is_free({0, 0}));
  EXPECT_TRUE(m.is_free({1, 0}));
  for (int x = 2; x < 7; ++x) EXPECT_TRUE(m.occupied({x, 0})) << x;
}

TEST(ParseMap, Errors) {
  auto category = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.category();
    }
    return ErrorCategory::kInternal;
  };
  EXPECT_EQ(category([] { parse_map("", MapFormat::kGrid01); }), ErrorCategory::kParse);
  EXPECT_EQ(category([] { parse_map("\n\n", MapFormat::kMovingAi); }), ErrorCategory::kParse);
  EXPECT_EQ(category([] { parse_map("01\n0\n", MapFormat::kGrid01); }), ErrorCategory::kParse);
  EXPECT_EQ(category([] { parse_map("0x\n", MapFormat::kGrid01); }), ErrorCategory::kParse);
  EXPECT_EQ(category([] { parse_map("type octile\nheight 2\nwidth 2\nmap\n..\n", MapFormat::kMovingAi); }),
            ErrorCategory::kParse);
  EXPECT_EQ(category([] { parse_map("type octile\nheigth 1\nwidth 1\nmap\n.\n", MapFormat::kMovingAi); }),
            ErrorCategory::kParse);
  EXPECT_EQ(category([] { parse_map("type octile\nheight 1\nwidth 1\nmap\nX\n", MapFormat::kMovingAi); }),
            ErrorCategory::kParse);
}

TEST(SpanningGraphBuild, SingleMegaCell) {
  const auto d = build_spanning_graph(GridMap::all_free(2, 2));
  EXPECT_EQ(d.spanning.size(), 1u);
  EXPECT_EQ(d.coverage.size(), 4u);
  EXPECT_TRUE(d.spanning.edges().empty());
}

TEST(SpanningGraphBuild, FourByFour) {
  const auto d = build_spanning_graph(GridMap::all_free(4, 4));
  EXPECT_EQ(d.spanning.size(), 4u);
  EXPECT_EQ(d.spanning.edges().size(), 4u);
  EXPECT_EQ(d.coverage.size(), 16u);
}

TEST(SpanningGraphBuild, PartiallyBlockedMegaCellExcluded) {
  std::vector<std::uint8_t> cells(16, 0);
  cells[0] = 1;
  const auto d = build_spanning_graph(GridMap(4, 4, cells));
  EXPECT_EQ(d.spanning.size(), 3u);
  EXPECT_FALSE(d.spanning.contains({0, 0}));
  EXPECT_EQ(d.coverage.size(), 12u);
}

TEST(SpanningGraphBuild, OddDimensionsPadded) {
  const GridMap m = GridMap::all_free(5, 3);
  const GridMap p = m.padded_to_even();
  EXPECT_EQ(p.width(), 6);
  EXPECT_EQ(p.height(), 4);
  EXPECT_EQ(p.free_count(), m.free_count());
  const auto d = build_spanning_graph(m);
  EXPECT_EQ(d.spanning.mega_width(), 3);
  EXPECT_EQ(d.spanning.mega_height(), 2);
  EXPECT_EQ(d.spanning.size(), 2u);  // only the two fully free mega cells of row 0
}

TEST(SpanningGraphBuild, NoFreeMegaCell) {
  EXPECT_THROW(build_spanning_graph(parse_map("11\n11\n", MapFormat::kGrid01)), Error);
  EXPECT_THROW(build_spanning_graph(parse_map("01\n00\n", MapFormat::kGrid01)), Error);
}

TEST(SpanningGraphBuild, PropertiesOnRandomMaps) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 50; ++iter) {
    const int w = 1 + static_cast<int>(rng() % 15);
    const int h = 1 + static_cast<int>(rng() % 15);
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(w) * h);
    for (auto& c : cells) c = (rng() % 10) < 2;
    const GridMap m(w, h, cells);
    EXPECT_EQ(m.padded_to_even().free_count(), m.free_count());
    Discretization d;
    try {
      d = build_spanning_graph(m);
    } catch (const Error&) {
      continue;
    }
    EXPECT_EQ(d.coverage.size(), 4 * d.spanning.size());
    for (const auto& [a, b] : d.spanning.edges()) {
      const Cell ca = d.spanning.node(a);
      const Cell cb = d.spanning.node(b);
      EXPECT_EQ(manhattan(ca, cb), 1);
    }
    const auto again = build_spanning_graph(m);
    EXPECT_EQ(again.spanning, d.spanning);
    EXPECT_EQ(again.spanning.edges(), d.spanning.edges());
  }
}

TEST(ConnectedComponent, SelectsSeedComponent) {
  const auto g = testing::graph_from_rows({"..#..", "..#.."});
  const auto a = connected_component(g, std::vector<Cell>{{0, 0}, {1, 1}});
  EXPECT_EQ(a.size(), 4u);
  EXPECT_TRUE(a.contains({1, 0}));
  EXPECT_FALSE(a.contains({3, 0}));
  EXPECT_EQ(a.edges().size(), 4u);
}

TEST(ConnectedComponent, SeedsAcrossComponentsRejected) {
  const auto g = testing::graph_from_rows({"..#..", "..#.."});
  try {
    connected_component(g, std::vector<Cell>{{0, 0}, {4, 1}});
    FAIL() << "expected error";
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::kDisconnected);
    EXPECT_NE(std::string(e.what()).find("(4,1)"), std::string::npos);
  }
}

TEST(ConnectedComponent, EmptySeedsOnConnectedGraph) {
  const auto g = testing::full_grid(3, 2);
  EXPECT_EQ(connected_component(g, {}), g);
  EXPECT_THROW(connected_component(testing::graph_from_rows({".#."}), {}), Error);
}

}  // namespace
}  // namespace tmstc
