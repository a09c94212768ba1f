#pragma once
#include <optional>
#include <string>
#include <vector>

#include "tmred/turing.hpp"

namespace tmred {

using Mark = std::vector<std::string>;

enum class TileKind { Init, InstrS, InstrRMain, InstrRComp, InstrLMain, InstrLComp, Star, StarMarker, Input, InputEnd, BlankEnd };

struct TileType {
  std::string id;
  Mark left, right, up, down;
  TileKind kind = TileKind::Init;
  std::string q, s, a;  // sort keys
  size_t k = 0;
};

struct TileSet {
  std::vector<TileType> tiles;
  size_t n = 0;
  size_t size() const { return tiles.size(); }
  size_t k() const { return tiles.size() - 1; }
  int index_of(const std::string& id) const;
};

struct Tiling {
  size_t width = 0, height = 0;
  std::vector<int> cells;  // row-major from row 0
  int at(size_t i, size_t j) const { return cells[j * width + i]; }
  int& at(size_t i, size_t j) { return cells[j * width + i]; }
  bool operator==(const Tiling&) const = default;
};

std::string mark_str(const Mark& m);

std::vector<TileType> machine_tiles(const Machine& m);
std::vector<TileType> input_tiles(const Machine& m, size_t n);
TileSet tile_set(const Machine& m, size_t n);

Tiling special_tiling(const Machine& m, size_t n, size_t width, size_t height);
// any width: computed wide, cropped
Tiling special_window(const Machine& m, size_t n, size_t width, size_t height);

struct SeedCell {
  size_t i, j;
  int tile;
};
// throws std::length_error when more than budget search nodes are visited
std::vector<Tiling> brute_force_tilings(const TileSet& t, size_t width, size_t height,
                                        std::optional<SeedCell> seed, size_t budget = 50'000'000);

std::vector<std::string> row_to_configuration(const TileSet& t, const Tiling& f, size_t j,
                                              const std::string& blank);
bool adjacency_ok(const TileSet& t, const Tiling& f);
std::string render_tiling(const Tiling& f);
// top row first, cells as padded tile ids
std::string render_tiling(const Tiling& f, const TileSet& t);

}  // namespace tmred
