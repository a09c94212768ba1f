#include <gtest/gtest.h>

#include "support.hpp"
#include "tmred/tiles.hpp"

using namespace tmred;
using tmred::support::load_machine;
using tmred::support::tiny_machine;

namespace {

TileType by_id(const std::vector<TileType>& ts, const std::string& id) {
  for (auto& t : ts)
    if (t.id == id) return t;
  throw std::out_of_range(id);
}

}  // namespace

TEST(Tiles, STileForOrdinarySymbol) {
  Machine m = tiny_machine(2, {{"q1", "|", "q1", "_", 'S'}});
  TileType t = by_id(machine_tiles(m), "tS[q1,|]");
  EXPECT_EQ(t.left, Mark{"*"});
  EXPECT_EQ(t.right, Mark{"*"});
  EXPECT_EQ(t.up, (Mark{"q1", "_"}));
  EXPECT_EQ(t.down, (Mark{"q1", "|"}));
}

TEST(Tiles, RTileOnMarker) {
  Machine m = tiny_machine(2, {{"q0", "#", "q1", "#", 'R'}});
  auto mt = machine_tiles(m);
  TileType t = by_id(mt, "tR[q0,#]");
  EXPECT_EQ(t.left, Mark{"⊗"});
  EXPECT_EQ(t.right, (Mark{"q0", "#"}));
  EXPECT_EQ(t.up, Mark{"#"});
  EXPECT_EQ(t.down, (Mark{"q0", "#"}));
  for (std::string a : {"_", "|"}) {
    TileType c = by_id(mt, "tR[q0,#]^" + a);
    EXPECT_EQ(c.left, (Mark{"q0", "#"}));
    EXPECT_EQ(c.up, (Mark{"q1", a}));
    EXPECT_EQ(c.down, Mark{a});
  }
}

TEST(Tiles, SOnlyMachineTileSet) {
  Machine m;
  m.sigma = {"_", "#", "|"};
  m.states = {"q0", "hx", "hy"};
  m.q0 = "q0";
  m.halting = {"hx", "hy"};
  m.hx = "hx";
  m.hy = "hy";
  for (auto& q : m.states)
    for (auto& s : m.sigma) m.delta[{q, s}] = Instr{q == "q0" ? "hx" : q, s, Move::S};
  auto mt = machine_tiles(m);
  // t0, three star tiles, one S tile per (q, s)
  EXPECT_EQ(mt.size(), 1u + 3u + 9u);
  by_id(mt, "t*[_]");
  by_id(mt, "t*[|]");
  by_id(mt, "t*[#]");
}

TEST(Tiles, InputTiles) {
  Machine m = tiny_machine(1, {});
  auto z = input_tiles(m, 0);
  ASSERT_EQ(z.size(), 2u);
  EXPECT_EQ(z[0].id, "t**[0]");
  EXPECT_EQ(z[0].left, Mark{});
  EXPECT_EQ(z[0].right, (Mark{"*", "*"}));
  EXPECT_EQ(z[0].up, Mark{"_"});
  EXPECT_EQ(z[0].down, Mark{"⊗"});
  auto two = input_tiles(m, 2);
  ASSERT_EQ(two.size(), 4u);
  EXPECT_EQ(two[0].left, Mark{});
  EXPECT_EQ(two[0].right, Mark{"|"});
  EXPECT_EQ(two[1].left, Mark{"|"});
  EXPECT_EQ(two[1].right, (Mark{"|", "|"}));
}

TEST(Tiles, TileSetOrderAndCount) {
  Machine m = load_machine("M_A");
  TileSet t = tile_set(m, 1);
  EXPECT_EQ(t.tiles[0].id, "t0");
  EXPECT_EQ(t.tiles[1].id, "tS[hx,#]");
  EXPECT_EQ(t.tiles[2].id, "tS[hy,#]");
  EXPECT_EQ(t.size(), machine_tiles(m).size() + 1 + 2);
  TileSet again = tile_set(m, 1);
  for (size_t i = 0; i < t.size(); ++i) EXPECT_EQ(t.tiles[i].id, again.tiles[i].id);
  EXPECT_EQ(t.k(), t.size() - 1);
}

TEST(Tiles, SpecialTilingRowZero) {
  Machine m = load_machine("M_A");
  TileSet t = tile_set(m, 2);
  Tiling f = special_tiling(m, 2, 7, 1);
  std::vector<std::string> want{"t0", "tX[0]", "tX[1]", "t**[2]", "t**[_]", "t**[_]", "t**[_]"};
  for (size_t i = 0; i < want.size(); ++i) EXPECT_EQ(t.tiles[f.at(i, 0)].id, want[i]);
  EXPECT_TRUE(adjacency_ok(t, f));
}

TEST(Tiles, SpecialTilingColumnZero) {
  Machine m = load_machine("M_A");
  TileSet t = tile_set(m, 0);
  Tiling f = special_tiling(m, 0, 3, 4);
  EXPECT_EQ(t.tiles[f.at(0, 0)].id, "t0");
  EXPECT_EQ(t.tiles[f.at(0, 1)].id, "tS[q0,#]");
  EXPECT_EQ(t.tiles[f.at(0, 2)].id, "tS[q1,#]");
  EXPECT_EQ(f.at(0, 3), 1);
  EXPECT_EQ(row_to_configuration(t, f, 0, m.blank), (std::vector<std::string>{"q0", "#"}));
  EXPECT_EQ(row_to_configuration(t, f, 2, m.blank), (std::vector<std::string>{"hx", "#"}));
  Tiling one = special_window(m, 0, 1, 1);
  EXPECT_EQ(one.at(0, 0), 0);
}

TEST(Tiles, BruteForce) {
  Machine m = load_machine("M_A");
  TileSet t = tile_set(m, 0);
  auto all = brute_force_tilings(t, 3, 3, SeedCell{0, 0, 0});
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0], special_window(m, 0, 3, 3));
  EXPECT_EQ(brute_force_tilings(t, 1, 1, std::nullopt).size(), t.size());
  TileSet empty;
  EXPECT_TRUE(brute_force_tilings(empty, 1, 1, std::nullopt).empty());
}

TEST(Tiles, BlankRowIsEmptyWord) {
  Machine m = load_machine("M_A");
  TileSet t = tile_set(m, 0);
  Tiling f;
  f.width = 3;
  f.height = 1;
  f.cells.assign(3, t.index_of("t*[_]"));
  EXPECT_TRUE(row_to_configuration(t, f, 0, m.blank).empty());
}
