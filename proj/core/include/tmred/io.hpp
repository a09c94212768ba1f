#pragma once
#include <string>

#include <nlohmann/json.hpp>

#include "tmred/tiles.hpp"
#include "tmred/turing.hpp"

namespace tmred {

// throws std::invalid_argument on malformed input
Machine machine_from_json(const nlohmann::json& j);
nlohmann::json machine_to_json(const Machine& m);
nlohmann::json tileset_to_json(const TileSet& t);
TileSet tileset_from_json(const nlohmann::json& j);
nlohmann::json tiling_to_json(const Tiling& f, const TileSet& t);

nlohmann::json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
// sorted keys, two-space indent, trailing newline
std::string canonical(const nlohmann::json& j);
// 16 hex digits of FNV-1a
std::string content_hash(const std::string& s);

}  // namespace tmred
