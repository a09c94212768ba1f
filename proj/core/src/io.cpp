#include "tmred/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tmred {

namespace {

std::string need_str(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw std::invalid_argument(std::string("machine: missing string '") + key + "'");
  return j[key].get<std::string>();
}

std::vector<std::string> need_list(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw std::invalid_argument(std::string("machine: missing list '") + key + "'");
  return j[key].get<std::vector<std::string>>();
}

}  // namespace

Machine machine_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("machine: expected an object");
  Machine m;
  m.sigma = need_list(j, "sigma");
  m.blank = j.value("blank", "_");
  m.marker = j.value("marker", "#");
  m.states = need_list(j, "states");
  m.q0 = need_str(j, "q0");
  m.halting = need_list(j, "halting");
  m.hx = need_str(j, "hx");
  m.hy = need_str(j, "hy");
  if (!j.contains("delta") || !j["delta"].is_array()) throw std::invalid_argument("machine: missing list 'delta'");
  size_t i = 0;
  for (auto& d : j["delta"]) {
    if (!d.is_object()) throw std::invalid_argument("machine: delta[" + std::to_string(i) + "] is not an object");
    Instr ins;
    std::string q = need_str(d, "q"), s = need_str(d, "s");
    ins.q2 = need_str(d, "q2");
    ins.s2 = need_str(d, "s2");
    ins.move = parse_move(need_str(d, "move"));
    if (!m.delta.emplace(std::make_pair(q, s), ins).second)
      throw std::invalid_argument("machine: duplicate delta entry for (" + q + "," + s + ")");
    ++i;
  }
  return m;
}

nlohmann::json machine_to_json(const Machine& m) {
  nlohmann::json j;
  j["sigma"] = m.sigma;
  j["blank"] = m.blank;
  j["marker"] = m.marker;
  j["states"] = m.states;
  j["q0"] = m.q0;
  j["halting"] = m.halting;
  j["hx"] = m.hx;
  j["hy"] = m.hy;
  j["delta"] = nlohmann::json::array();
  for (auto& [k, ins] : m.delta)
    j["delta"].push_back({{"q", k.first}, {"s", k.second}, {"q2", ins.q2}, {"s2", ins.s2}, {"move", move_name(ins.move)}});
  return j;
}

nlohmann::json tileset_to_json(const TileSet& t) {
  nlohmann::json j;
  j["n"] = t.n;
  j["k"] = t.k();
  j["tiles"] = nlohmann::json::array();
  for (size_t i = 0; i < t.size(); ++i) {
    auto& tt = t.tiles[i];
    j["tiles"].push_back({{"index", i},
                          {"id", tt.id},
                          {"left", mark_str(tt.left)},
                          {"right", mark_str(tt.right)},
                          {"up", mark_str(tt.up)},
                          {"down", mark_str(tt.down)},
                          {"marks", {{"left", tt.left}, {"right", tt.right}, {"up", tt.up}, {"down", tt.down}}}});
  }
  return j;
}

TileSet tileset_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("tiles") || !j["tiles"].is_array()) throw std::invalid_argument("tileset: expected {\"tiles\": [...]}");
  TileSet t;
  t.n = j.value("n", size_t(0));
  // token arrays under "marks" win; a plain string is one token, "ε" or "" the empty mark
  auto mark = [](const nlohmann::json& e, const char* side) -> Mark {
    if (e.contains("marks") && e["marks"].contains(side)) return e["marks"][side].get<Mark>();
    if (!e.contains(side)) throw std::invalid_argument(std::string("tileset: tile lacks '") + side + "'");
    if (e[side].is_array()) return e[side].get<Mark>();
    std::string s = e[side].get<std::string>();
    if (s.empty() || s == "ε") return {};
    return {s};
  };
  for (auto& e : j["tiles"]) {
    TileType tt;
    tt.id = e.value("id", "t" + std::to_string(t.tiles.size()));
    tt.left = mark(e, "left");
    tt.right = mark(e, "right");
    tt.up = mark(e, "up");
    tt.down = mark(e, "down");
    t.tiles.push_back(tt);
  }
  if (t.tiles.size() < 3) throw std::invalid_argument("tileset: need at least t_0, t_1, t_2");
  return t;
}

nlohmann::json tiling_to_json(const Tiling& f, const TileSet& t) {
  nlohmann::json j;
  j["width"] = f.width;
  j["height"] = f.height;
  j["rows"] = nlohmann::json::array();
  for (size_t r = 0; r < f.height; ++r) {
    std::vector<std::string> row;
    for (size_t c = 0; c < f.width; ++c) row.push_back(t.tiles[f.at(c, r)].id);
    j["rows"].push_back(row);
  }
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json_file(const std::string& path) {
  std::string text = read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string canonical(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string content_hash(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tmred
