#include "tmred/tiles.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace tmred {

namespace {

const std::string kX = "⊗";
const std::string kS = "*";

Mark qs(const std::string& q, const std::string& s) { return {q, s}; }
Mark bars(size_t k) { return Mark(k, "|"); }

std::vector<std::string> sym_order(const Machine& m) {
  auto v = m.sigma;
  std::sort(v.begin(), v.end());
  return v;
}

int kind_rank(TileKind k) { return static_cast<int>(k); }

}  // namespace

std::string mark_str(const Mark& m) {
  if (m.empty()) return "ε";
  return join_word(m);
}

int TileSet::index_of(const std::string& id) const {
  for (size_t i = 0; i < tiles.size(); ++i)
    if (tiles[i].id == id) return static_cast<int>(i);
  return -1;
}

std::vector<TileType> machine_tiles(const Machine& m) {
  if (auto v = validate_machine(m); !v.empty()) throw std::invalid_argument("invalid machine: " + v.front());
  const std::string& H = m.marker;
  std::vector<TileType> out;
  out.push_back({"t0", {kX}, {}, qs(m.q0, H), {kX}, TileKind::Init});
  for (auto& [key, ins] : m.delta) {
    auto& [q, s] = key;
    std::string base = q + "," + s;
    if (ins.move == Move::S) {
      if (s != H)
        out.push_back({"tS[" + base + "]", {kS}, {kS}, qs(ins.q2, ins.s2), qs(q, s), TileKind::InstrS, q, s});
      else
        out.push_back({"tS[" + base + "]", {kX}, {kS}, qs(ins.q2, H), qs(q, H), TileKind::InstrS, q, s});
    } else if (ins.move == Move::R) {
      if (s != H)
        out.push_back({"tR[" + base + "]", {kS}, qs(q, s), {ins.s2}, qs(q, s), TileKind::InstrRMain, q, s});
      else
        out.push_back({"tR[" + base + "]", {kX}, qs(q, H), {H}, qs(q, H), TileKind::InstrRMain, q, s});
      for (auto& a : sym_order(m)) {
        if (a == H) continue;
        out.push_back({"tR[" + base + "]^" + a, qs(q, s), {kS}, qs(ins.q2, a), {a}, TileKind::InstrRComp, q, s, a});
      }
    } else {
      out.push_back({"tL[" + base + "]", qs(q, s), {kS}, {ins.s2}, qs(q, s), TileKind::InstrLMain, q, s});
      for (auto& a : sym_order(m)) {
        if (a != H)
          out.push_back({"tL[" + base + "]^" + a, {kS}, qs(q, s), qs(ins.q2, a), {a}, TileKind::InstrLComp, q, s, a});
        else
          out.push_back({"tL[" + base + "]^" + a, {kX}, qs(q, s), qs(ins.q2, H), {H}, TileKind::InstrLComp, q, s, a});
      }
    }
  }
  for (auto& s : sym_order(m))
    if (s != H) out.push_back({"t*[" + s + "]", {kS}, {kS}, {s}, {s}, TileKind::Star, "", s});
  out.push_back({"t*[" + H + "]", {kX}, {kS}, {H}, {H}, TileKind::StarMarker, "", H});
  return out;
}

std::vector<TileType> input_tiles(const Machine& m, size_t n) {
  std::vector<TileType> out;
  for (size_t k = 0; k < n; ++k) {
    TileType t{"tX[" + std::to_string(k) + "]", bars(k), bars(k + 1), {"|"}, {kX}, TileKind::Input};
    t.k = k;
    out.push_back(t);
  }
  TileType e{"t**[" + std::to_string(n) + "]", bars(n), {kS, kS}, {m.blank}, {kX}, TileKind::InputEnd};
  e.k = n;
  out.push_back(e);
  out.push_back({"t**[" + m.blank + "]", {kS, kS}, {kS, kS}, {m.blank}, {kX}, TileKind::BlankEnd});
  return out;
}

TileSet tile_set(const Machine& m, size_t n) {
  auto mt = machine_tiles(m);
  std::string h1 = "tS[" + m.hx + "," + m.marker + "]", h2 = "tS[" + m.hy + "," + m.marker + "]";
  auto pick = [&](const std::string& id) {
    auto it = std::find_if(mt.begin(), mt.end(), [&](auto& t) { return t.id == id; });
    if (it == mt.end()) throw std::invalid_argument("tile " + id + " missing: halting state lacks a # self-loop");
    TileType t = *it;
    mt.erase(it);
    return t;
  };
  TileSet ts;
  ts.n = n;
  ts.tiles.push_back(pick("t0"));
  ts.tiles.push_back(pick(h1));
  ts.tiles.push_back(pick(h2));
  std::stable_sort(mt.begin(), mt.end(), [](const TileType& x, const TileType& y) {
    return std::tuple(kind_rank(x.kind), x.q, x.s, x.a) < std::tuple(kind_rank(y.kind), y.q, y.s, y.a);
  });
  for (auto& t : mt) ts.tiles.push_back(t);
  for (auto& t : input_tiles(m, n)) ts.tiles.push_back(t);
  for (size_t i = 0; i < ts.tiles.size(); ++i)
    for (size_t j = i + 1; j < ts.tiles.size(); ++j) {
      auto& a = ts.tiles[i];
      auto& b = ts.tiles[j];
      if (a.left == b.left && a.right == b.right && a.up == b.up && a.down == b.down)
        throw std::logic_error("duplicate tile marks: " + a.id + " " + b.id);
    }
  return ts;
}

namespace {

Tiling build(const Machine& m, size_t n, size_t width, size_t height) {
  TileSet ts = tile_set(m, n);
  auto id = [&](const std::string& s) {
    int i = ts.index_of(s);
    if (i < 0) throw std::logic_error("missing tile " + s);
    return i;
  };
  Tiling f{width, height, std::vector<int>(width * height, -1)};
  if (height == 0) return f;
  for (size_t i = 0; i < width; ++i) {
    if (i == 0)
      f.at(i, 0) = id("t0");
    else if (i <= n)
      f.at(i, 0) = id("tX[" + std::to_string(i - 1) + "]");
    else if (i == n + 1)
      f.at(i, 0) = id("t**[" + std::to_string(n) + "]");
    else
      f.at(i, 0) = id("t**[" + m.blank + "]");
  }
  Config c = initial_config(m, n);
  for (size_t j = 1; j < height; ++j) {
    auto sym = [&](size_t i) { return i < c.tape.size() ? c.tape[i] : m.blank; };
    std::string q = c.state, s = sym(c.head);
    const Instr* ins = m.find(q, s);
    std::string base = q + "," + s;
    for (size_t i = 0; i < width; ++i) f.at(i, j) = i == 0 ? id("t*[" + m.marker + "]") : id("t*[" + sym(i) + "]");
    auto put = [&](size_t i, const std::string& t) {
      if (i < width) f.at(i, j) = id(t);
    };
    if (ins->move == Move::S) put(c.head, "tS[" + base + "]");
    if (ins->move == Move::R) {
      put(c.head, "tR[" + base + "]");
      put(c.head + 1, "tR[" + base + "]^" + sym(c.head + 1));
    }
    if (ins->move == Move::L) {
      put(c.head, "tL[" + base + "]");
      put(c.head - 1, "tL[" + base + "]^" + sym(c.head - 1));
    }
    c = step(m, c);
  }
  return f;
}

}  // namespace

Tiling special_tiling(const Machine& m, size_t n, size_t width, size_t height) {
  if (width < n + 2) throw std::invalid_argument("window width must be at least n+2");
  return build(m, n, width, height);
}

Tiling special_window(const Machine& m, size_t n, size_t width, size_t height) {
  size_t w = std::max(width, n + 2);
  Tiling big = build(m, n, w, height);
  Tiling f{width, height, std::vector<int>(width * height)};
  for (size_t j = 0; j < height; ++j)
    for (size_t i = 0; i < width; ++i) f.at(i, j) = big.at(i, j);
  return f;
}

std::vector<Tiling> brute_force_tilings(const TileSet& t, size_t width, size_t height,
                                        std::optional<SeedCell> seed, size_t budget) {
  std::vector<Tiling> out;
  if (width == 0 || height == 0) return out;
  Tiling f{width, height, std::vector<int>(width * height, -1)};
  size_t cells = width * height, nodes = 0;
  auto fits = [&](size_t pos, int k) {
    size_t i = pos % width, j = pos / width;
    const TileType& x = t.tiles[k];
    if (seed && seed->i == i && seed->j == j && seed->tile != k) return false;
    if (i > 0 && t.tiles[f.at(i - 1, j)].right != x.left) return false;
    if (j > 0 && t.tiles[f.at(i, j - 1)].up != x.down) return false;
    return true;
  };
  auto rec = [&](auto&& self, size_t pos) -> void {
    if (++nodes > budget) throw std::length_error("tiling search budget exceeded");
    if (pos == cells) {
      out.push_back(f);
      return;
    }
    for (size_t k = 0; k < t.size(); ++k) {
      if (!fits(pos, static_cast<int>(k))) continue;
      f.cells[pos] = static_cast<int>(k);
      self(self, pos + 1);
    }
    f.cells[pos] = -1;
  };
  rec(rec, 0);
  return out;
}

std::vector<std::string> row_to_configuration(const TileSet& t, const Tiling& f, size_t j,
                                              const std::string& blank) {
  size_t len = f.width;
  while (len > 0 && t.tiles[f.at(len - 1, j)].up == Mark{blank}) --len;
  std::vector<std::string> w;
  for (size_t i = 0; i < len; ++i)
    for (auto& tok : t.tiles[f.at(i, j)].up) w.push_back(tok);
  return w;
}

bool adjacency_ok(const TileSet& t, const Tiling& f) {
  for (size_t j = 0; j < f.height; ++j)
    for (size_t i = 0; i < f.width; ++i) {
      if (i + 1 < f.width && t.tiles[f.at(i, j)].right != t.tiles[f.at(i + 1, j)].left) return false;
      if (j + 1 < f.height && t.tiles[f.at(i, j)].up != t.tiles[f.at(i, j + 1)].down) return false;
    }
  return true;
}

std::string render_tiling(const Tiling& f) {
  int w = 1;
  for (int c : f.cells) w = std::max<int>(w, std::to_string(c).size());
  std::string out;
  for (size_t jj = f.height; jj-- > 0;) {
    for (size_t i = 0; i < f.width; ++i) {
      std::string s = std::to_string(f.at(i, jj));
      if (i) out += ' ';
      out += std::string(w - s.size(), ' ') + s;
    }
    out += '\n';
  }
  return out;
}

std::string render_tiling(const Tiling& f, const TileSet& t) {
  size_t w = 1;
  for (int c : f.cells) w = std::max(w, t.tiles[c].id.size());
  std::string out;
  for (size_t jj = f.height; jj-- > 0;) {
    for (size_t i = 0; i < f.width; ++i) {
      const std::string& s = t.tiles[f.at(i, jj)].id;
      if (i) out += ' ';
      out += s + std::string(w - s.size(), ' ');
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  }
  return out;
}

}  // namespace tmred
