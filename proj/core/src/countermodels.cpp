#include "tmred/countermodels.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "tmred/generators.hpp"

namespace tmred {

namespace {

std::string cell(size_t i, size_t j) { return std::to_string(i) + "." + std::to_string(j); }

void tag(Structure& s, const std::string& name, const std::string& anchor, std::vector<std::string> asserted) {
  s.meta["construction"] = name;
  s.meta["anchor"] = anchor;
  s.meta["asserted"] = asserted;
}

std::vector<int> unary_letters(const Structure& src) {
  std::set<int> ls;
  for (auto& m : src.interp)
    for (auto& [l, r] : m)
      if (r->arity == 1) ls.insert(l);
  return {ls.begin(), ls.end()};
}

// symmetric binary relation from an edge list
RelPtr sym_rel(size_t n, const std::vector<std::pair<int, int>>& edges) {
  auto r = std::make_shared<Rel>(2, n);
  for (auto [a, b] : edges) {
    r->add(a, b);
    r->add(b, a);
  }
  return r;
}

// copies unary letters of a classical source onto the first elements of s, at every world
void copy_unary(Structure& s, const Structure& src, const std::vector<int>& skip = {}) {
  for (int l : unary_letters(src)) {
    if (std::find(skip.begin(), skip.end(), l) != skip.end()) continue;
    auto r = std::make_shared<Rel>(1, s.N());
    const Rel* o = src.find(0, l);
    for (size_t a = 0; a < src.N(); ++a)
      if (o->has(static_cast<int>(a))) r->add(static_cast<int>(a));
    s.share(l, r);
  }
}

int unary_index(const Structure& src, const std::vector<int>& ls, int a) {
  for (size_t i = 0; i < ls.size(); ++i) {
    const Rel* r = src.find(0, ls[i]);
    if (r && r->has(a)) return static_cast<int>(i);
  }
  return -1;
}

struct Ext {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> edges;
  int add(const std::string& n) {
    names.push_back(n);
    return static_cast<int>(names.size()) - 1;
  }
};

Ext source_ext(const Structure& src) {
  Ext x;
  x.names = src.elems;
  const Rel* P = src.find(0, letter("P", 2));
  if (!P) throw std::invalid_argument("source has no P");
  for (size_t a = 0; a < src.N(); ++a)
    for (size_t b = 0; b < src.N(); ++b)
      if (P->has(static_cast<int>(a), static_cast<int>(b))) x.edges.push_back({static_cast<int>(a), static_cast<int>(b)});
  return x;
}

// chain a - e_0 - ... - e_last with P/R/U tips; returns e_{k+9} per source element when asked
void add_chains(Ext& x, const Structure& src, size_t k, size_t last, bool with_c, std::vector<std::pair<int, int>>* c_edges) {
  Letters L = letters_for(static_cast<int>(k));
  std::vector<int> R(L.R.begin(), L.R.end()), U(L.U.begin(), L.U.end());
  for (size_t a = 0; a < src.N(); ++a) {
    const std::string& an = src.elems[a];
    std::vector<int> e;
    for (size_t t = 0; t <= last; ++t) e.push_back(x.add("e" + std::to_string(t) + "@" + an));
    int ep = x.add("eP@" + an), er = x.add("eR@" + an), eu = x.add("eU@" + an);
    x.edges.push_back({static_cast<int>(a), e[0]});
    for (size_t t = 0; t + 1 <= last; ++t) x.edges.push_back({e[t], e[t + 1]});
    int m = unary_index(src, L.Pm, static_cast<int>(a));
    int i = unary_index(src, R, static_cast<int>(a));
    int j = unary_index(src, U, static_cast<int>(a));
    if (m >= 0) x.edges.push_back({e[m], ep});
    if (i >= 0) x.edges.push_back({e[k + i + 1], er});
    if (j >= 0) x.edges.push_back({e[k + j + 5], eu});
    if (with_c) {
      int ec = x.add("eC@" + an);
      c_edges->push_back({e[k + 9], ec});
    }
  }
}

Structure classical_from(const Ext& x) {
  Structure s = make_classical(x.names);
  s.share(letter("P", 2), sym_rel(s.N(), x.edges));
  return s;
}

void new_frame(Structure& s, Kind kind, const std::vector<std::string>& elems) {
  s = Structure{};
  s.kind = kind;
  s.worlds.clear();
  for (auto& e : elems) s.add_elem(e);
}

void transitive_close(Structure& s) {
  size_t W = s.W();
  std::vector<std::vector<int>> out(W);
  for (size_t u = 0; u < W; ++u) {
    std::vector<char> seen(W, 0);
    std::deque<int> q(s.rel_edges[u].begin(), s.rel_edges[u].end());
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      if (seen[v]) continue;
      seen[v] = 1;
      out[u].push_back(v);
      for (int w : s.rel_edges[v]) q.push_back(w);
    }
  }
  s.rel_edges = out;
}

RelPtr unary_set(size_t n, const std::function<bool(int)>& in) {
  auto r = std::make_shared<Rel>(1, n);
  for (size_t a = 0; a < n; ++a)
    if (in(static_cast<int>(a))) r->add(static_cast<int>(a));
  return r;
}

RelPtr prop_rel(bool v) {
  auto r = std::make_shared<Rel>(0, 0);
  r->prop = v;
  return r;
}

std::vector<std::pair<int, int>> unordered_nonedges(const Rel& P, size_t n) {
  std::vector<std::pair<int, int>> out;
  for (size_t b = 0; b < n; ++b)
    for (size_t c = b; c < n; ++c)
      if (!P.has(static_cast<int>(b), static_cast<int>(c))) out.push_back({static_cast<int>(b), static_cast<int>(c)});
  return out;
}

constexpr size_t kMaxWorlds = 2'000'000;

void world_budget(size_t w) {
  if (w > kMaxWorlds) throw std::length_error("construction needs " + std::to_string(w) + " worlds");
}

}  // namespace

// ---------------------------------------------------------------- grids

GridSpec grid_spec(const Machine& machine, size_t n, size_t max_rows) {
  GridSpec g;
  g.machine = machine;
  g.n = n;
  g.tiles = tile_set(machine, n);
  Tiling f = special_tiling(machine, n, n + 2, max_rows);
  for (size_t j = 0; j < max_rows; ++j) {
    int t = f.at(0, j);
    if (t == 1 || t == 2) {
      g.m = j;
      g.halted_in = t == 1 ? machine.hx : machine.hy;
      g.r = std::max(j, n + 1);
      return g;
    }
  }
  throw std::runtime_error("no halting tile in column 0 within " + std::to_string(max_rows) + " rows");
}

Structure grid_model(const GridSpec& g, size_t max_r) {
  if (g.r > max_r) throw std::length_error("r = " + std::to_string(g.r) + " exceeds the grid budget");
  size_t side = g.r + 3;
  Tiling f = special_tiling(g.machine, g.n, side, side);
  std::vector<std::string> names;
  for (size_t j = 0; j < side; ++j)
    for (size_t i = 0; i < side; ++i) names.push_back(cell(i, j));
  Structure s = make_classical(names);
  auto id = [&](size_t i, size_t j) { return static_cast<int>(j * side + i); };
  Rel& P = s.make_rel(0, letter("P", 2));
  size_t top = g.r + 2;
  for (size_t j = 0; j < side; ++j)
    for (size_t i = 0; i < side; ++i) {
      if (i + 1 < side) P.add(id(i, j), id(i + 1, j));
      if (j + 1 < side) P.add(id(i, j), id(i, j + 1));
      if (i == top) P.add(id(i, j), id(g.r + 1, j));
      if (j == top) P.add(id(i, j), id(i, g.r + 1));
    }
  Letters L = letters_for(g.tiles);
  bool t1 = false;
  for (size_t t = 0; t < g.tiles.size(); ++t) s.make_rel(0, L.Pm[t]);
  for (size_t j = 0; j < side; ++j)
    for (size_t i = 0; i < side; ++i) {
      s.rel_at(0, L.Pm[f.at(i, j)]).add(id(i, j));
      t1 = t1 || f.at(i, j) == 1;
    }
  tag(s, "grid", "finite grid with back edges describing the special tiling", {"Tiling", "exists P_1 iff t_1 in window"});
  s.meta["r"] = g.r;
  s.meta["m"] = g.m;
  s.meta["k"] = g.tiles.k();
  s.meta["has_t1"] = t1;
  s.meta["halted_in"] = g.halted_in;
  s.finalize();
  return s;
}

namespace {

// columns 0..lx+3, rows 0..ly+3; the last four of each close into a 4-cycle
Structure sib_from_window(const GridSpec& g, const Tiling& f, size_t lx, size_t ly) {
  size_t wx = lx + 4, wy = ly + 4;
  std::vector<std::string> names;
  for (size_t j = 0; j < wy; ++j)
    for (size_t i = 0; i < wx; ++i) names.push_back(cell(i, j));
  Structure s = make_classical(names);
  auto id = [&](size_t i, size_t j) { return static_cast<int>(j * wx + i); };
  Rel& P = s.make_rel(0, letter("P", 2));
  auto both = [&](int a, int b) {
    P.add(a, b);
    P.add(b, a);
  };
  for (size_t j = 0; j < wy; ++j)
    for (size_t i = 0; i < wx; ++i) {
      if (i + 1 < wx) both(id(i, j), id(i + 1, j));
      if (j + 1 < wy) both(id(i, j), id(i, j + 1));
    }
  for (size_t t = 0; t < wy; ++t) both(id(lx, t), id(lx + 3, t));
  for (size_t t = 0; t < wx; ++t) both(id(t, ly), id(t, ly + 3));
  Letters L = letters_for(g.tiles);
  bool t1 = false;
  for (size_t t = 0; t < g.tiles.size(); ++t) s.make_rel(0, L.Pm[t]);
  for (int q = 0; q < 4; ++q) {
    s.make_rel(0, L.R[q]);
    s.make_rel(0, L.U[q]);
  }
  for (size_t j = 0; j < wy; ++j)
    for (size_t i = 0; i < wx; ++i) {
      s.rel_at(0, L.Pm[f.at(i, j)]).add(id(i, j));
      t1 = t1 || f.at(i, j) == 1;
      // R_q holds where i - q + 1 is divisible by 4, q = 1..4
      s.rel_at(0, L.R[i % 4]).add(id(i, j));
      s.rel_at(0, L.U[j % 4]).add(id(i, j));
    }
  tag(s, "sib-grid", "symmetric grid with 4-cycles describing the special tiling",
      {"sib", "Tiling'", "bipartite", "exists P_1 iff t_1 in window"});
  s.meta["r"] = g.r;
  s.meta["m"] = g.m;
  s.meta["k"] = g.tiles.k();
  s.meta["has_t1"] = t1;
  s.meta["halted_in"] = g.halted_in;
  s.meta["lead"] = {lx, ly};
  return s;
}

}  // namespace

Structure sib_grid_model(const GridSpec& g, size_t max_r) {
  if (g.r > max_r) throw std::length_error("r = " + std::to_string(g.r) + " exceeds the grid budget");
  size_t side = g.r + 5;
  Structure s = sib_from_window(g, special_tiling(g.machine, g.n, side, side), g.r + 1, g.r + 1);
  s.finalize();
  return s;
}

Structure compact_sib_grid_model(const GridSpec& g, size_t max_r) {
  if (g.r > max_r) throw std::length_error("r = " + std::to_string(g.r) + " exceeds the grid budget");
  size_t wide = g.r + 8, high = g.m + 4;
  Tiling f = special_tiling(g.machine, g.n, wide, high);
  auto col_eq = [&](size_t a, size_t b) {
    for (size_t j = 0; j < high; ++j)
      if (f.at(a, j) != f.at(b, j)) return false;
    return true;
  };
  size_t lx = 1;
  for (; lx < g.r + 1; ++lx) {
    bool ok = true;
    for (size_t i = lx + 1; i < wide && ok; ++i) ok = col_eq(lx, i);
    if (ok) break;
  }
  for (size_t j = g.m + 1; j < high; ++j)
    for (size_t i = 0; i < wide; ++i)
      if (f.at(i, j) != f.at(i, g.m)) throw std::runtime_error("rows do not settle after the halting row");
  Structure s = sib_from_window(g, special_tiling(g.machine, g.n, lx + 4, high), lx, g.m);
  s.meta["construction"] = "sib-grid";
  s.finalize();
  return s;
}

bool is_bipartite(const Structure& c) {
  const Rel* P = c.find(0, letter("P", 2));
  if (!P) return true;
  size_t n = c.N();
  std::vector<int> col(n, -1);
  for (size_t s = 0; s < n; ++s) {
    if (col[s] >= 0) continue;
    col[s] = 0;
    std::deque<int> q{static_cast<int>(s)};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (size_t v = 0; v < n; ++v) {
        if (!P->has(u, static_cast<int>(v)) && !P->has(static_cast<int>(v), u)) continue;
        if (col[v] < 0) {
          col[v] = 1 - col[u];
          q.push_back(static_cast<int>(v));
        } else if (col[v] == col[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- extensions

Structure s0_extension(const Structure& grid, size_t k) {
  Letters L = letters_for(static_cast<int>(k));
  Ext x;
  x.names = grid.elems;
  const Rel* P = grid.find(0, L.P);
  std::vector<std::pair<int, int>> dir;
  for (size_t a = 0; a < grid.N(); ++a)
    for (size_t b = 0; b < grid.N(); ++b)
      if (P->has(static_cast<int>(a), static_cast<int>(b))) dir.push_back({static_cast<int>(a), static_cast<int>(b)});
  for (size_t a = 0; a < grid.N(); ++a) {
    int m = unary_index(grid, L.Pm, static_cast<int>(a));
    if (m < 0) continue;
    const std::string& an = grid.elems[a];
    int star = x.add("e*@" + an);
    std::vector<int> e;
    for (int t = 0; t <= m; ++t) e.push_back(x.add("e" + std::to_string(t) + "@" + an));
    dir.push_back({static_cast<int>(a), star});
    dir.push_back({star, star});
    dir.push_back({static_cast<int>(a), e[m]});
    for (int t = m; t >= 1; --t) dir.push_back({e[t], e[t - 1]});
  }
  Structure s = make_classical(x.names);
  Rel& R = s.make_rel(0, L.P);
  for (auto [a, b] : dir) R.add(a, b);
  copy_unary(s, grid);
  tag(s, "s0-extension", "tails and looped branches simulating the tile letters and the grid",
      {"grid iff original element", "tile_m iff P_m on the original domain"});
  s.meta["n0"] = grid.N();
  s.meta["k"] = k;
  s.finalize();
  return s;
}

Structure s1_extension(const Structure& sib, size_t k) {
  Ext x = source_ext(sib);
  for (size_t a = 0; a < sib.N(); ++a) {
    const std::string& an = sib.elems[a];
    int c0 = x.add("c0@" + an), c1 = x.add("c1@" + an), c2 = x.add("c2@" + an);
    x.edges.push_back({static_cast<int>(a), c0});
    x.edges.push_back({c0, c1});
    x.edges.push_back({c1, c2});
    x.edges.push_back({c2, c0});
  }
  add_chains(x, sib, k, k + 10, false, nullptr);
  Structure s = classical_from(x);
  copy_unary(s, sib);
  tag(s, "s1-extension", "triangles, chains and tips simulating the tile, direction and grid letters",
      {"grid' iff original element", "tile' indices reproduce P_m, R_i, U_j", "sib"});
  s.meta["n0"] = sib.N();
  s.meta["k"] = k;
  s.finalize();
  return s;
}

Structure chain_extension(const Structure& sib, size_t k, bool with_c) {
  Ext x = source_ext(sib);
  std::vector<std::pair<int, int>> c_edges;
  add_chains(x, sib, k, with_c ? k + 11 : k + 10, with_c, &c_edges);
  Structure s = classical_from(x);
  copy_unary(s, sib);
  s.share(letter("G", 1), unary_set(s.N(), [&](int a) { return a < static_cast<int>(sib.N()); }));
  tag(s, "chain-extension", "chains and tips simulating the tile and direction letters",
      {"tile' indices reproduce P_m, R_i, U_j on the original domain", "sib"});
  s.meta["n0"] = sib.N();
  s.meta["k"] = k;
  s.meta["c_edges"] = c_edges;
  s.finalize();
  return s;
}

// ---------------------------------------------------------------- modal

Structure star_modal_model(const Structure& sib, size_t extra_leaves, bool reflexive_hub) {
  size_t n = sib.N();
  world_budget(n * n + extra_leaves + 1);
  const Rel* P = sib.find(0, letter("P", 2));
  Structure s;
  new_frame(s, Kind::Modal, sib.elems);
  int w0 = s.add_world("w0");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) s.add_world("w" + sib.elems[i] + "," + sib.elems[j]);
  for (size_t e = 0; e < extra_leaves; ++e) s.add_world("x" + std::to_string(e));
  for (size_t w = 1; w < s.W(); ++w) s.add_edge(w0, static_cast<int>(w));
  if (reflexive_hub) s.add_edge(w0, w0);
  s.set_constant_domain();
  for (auto& [l, r] : sib.interp[0]) s.share(l, r);
  int q = letter("Q", 1);
  auto all = unary_set(n, [](int) { return true; });
  s.share(q, all);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (P->has(static_cast<int>(i), static_cast<int>(j))) continue;
      int w = static_cast<int>(1 + i * n + j);
      s.interp[w][q] = unary_set(n, [&](int a) { return a != static_cast<int>(i) && a != static_cast<int>(j); });
    }
  tag(s, "star", "star frame whose leaves falsify Q on the non-edges", {"P(a,b) iff box(Q(a) or Q(b)) at the hub"});
  s.finalize();
  return s;
}

Structure s3_modal_model(const Structure& sib, size_t k) {
  Structure base = chain_extension(sib, k, false);
  size_t n0 = sib.N();
  Structure s;
  new_frame(s, Kind::Modal, base.elems);
  int w0 = s.add_world("w0");
  for (size_t a = 0; a < n0; ++a) s.add_edge(w0, s.add_world("w" + sib.elems[a]));
  s.set_constant_domain();
  for (auto& [l, r] : base.interp[0]) s.share(l, r);
  int C = letter("C", 1);
  s.share(C, std::make_shared<Rel>(1, s.N()));
  for (size_t a = 0; a < n0; ++a) s.interp[1 + a][C] = unary_set(s.N(), [&](int b) { return b == static_cast<int>(a); });
  tag(s, "s3-modal", "hub with one world per grid element carrying C", {"C(a) iff world w_a"});
  s.meta["n0"] = n0;
  s.meta["k"] = k;
  s.finalize();
  return s;
}

Structure s2s3_modal_model(const Structure& sib, size_t k) {
  Structure base = chain_extension(sib, k, false);
  size_t n0 = sib.N(), n = base.N();
  const Rel* P = base.find(0, letter("P", 2));
  auto non = unordered_nonedges(*P, n);
  world_budget((n0 + 1) * (non.size() + 1));
  Structure s;
  new_frame(s, Kind::Modal, base.elems);
  int w0 = s.add_world("w0");
  std::vector<int> vs{w0};
  for (size_t a = 0; a < n0; ++a) {
    int w = s.add_world("w" + sib.elems[a]);
    s.add_edge(w0, w);
    vs.push_back(w);
  }
  s.set_constant_domain();
  int q = letter("Q", 1), C = letter("C", 1);
  for (auto& [l, r] : base.interp[0]) s.share(l, r);
  s.share(C, std::make_shared<Rel>(1, n));
  s.share(q, unary_set(n, [](int) { return true; }));
  for (int v : vs)
    for (auto [b, c] : non) {
      int u = s.add_world("u" + s.worlds[v] + ":" + base.elems[b] + "," + base.elems[c]);
      s.add_edge(v, u);
    }
  s.fit();
  s.set_constant_domain();
  for (auto& [l, r] : base.interp[0]) s.share(l, r);
  s.share(C, std::make_shared<Rel>(1, n));
  s.share(q, unary_set(n, [](int) { return true; }));
  for (size_t a = 0; a < n0; ++a) s.interp[1 + a][C] = unary_set(n, [&](int b) { return b == static_cast<int>(a); });
  size_t u = 1 + n0;
  for (size_t vi = 0; vi < vs.size(); ++vi)
    for (auto [b, c] : non) s.interp[u++][q] = unary_set(n, [&](int d) { return d != b && d != c; });
  tag(s, "s2s3-modal", "two layers of worlds falsifying Q on the non-edges",
      {"P(b,c) iff box(Q(b) or Q(c)) at w0 and every w_a", "C(a) iff world w_a"});
  s.meta["n0"] = n0;
  s.meta["k"] = k;
  s.finalize();
  return s;
}

Structure p_modal_model(const Structure& sib, size_t k) {
  Structure base = chain_extension(sib, k, true);
  size_t n0 = sib.N(), n = base.N();
  Structure s;
  new_frame(s, Kind::Modal, base.elems);
  int w0 = s.add_world("w0");
  for (size_t a = 0; a < n0; ++a) s.add_edge(w0, s.add_world("w" + sib.elems[a]));
  s.set_constant_domain();
  for (auto& [l, r] : base.interp[0]) s.share(l, r);
  s.share(letter("p", 0), prop_rel(true));
  int P = letter("P", 2);
  auto ce = base.meta["c_edges"].get<std::vector<std::pair<int, int>>>();
  for (size_t a = 0; a < n0; ++a) {
    Rel& r = s.rel_at(static_cast<int>(1 + a), P);
    r.add(ce[a].first, ce[a].second);
    r.add(ce[a].second, ce[a].first);
  }
  (void)n;
  tag(s, "p-modal", "hub and grid worlds, each w_a adding the C-edge of a",
      {"tile'_{k+9}(b) iff b = a at w_a", "p everywhere"});
  s.meta["n0"] = n0;
  s.meta["k"] = k;
  s.finalize();
  return s;
}

Structure gl_grz_layer_model(const Structure& sib, size_t k, LayerVariant variant, bool grz) {
  // the loop variant targets irreflexive frames; reflexive points never see a dead end
  if (variant == LayerVariant::S5pLoop && grz) throw std::invalid_argument("the looped variant has no reflexive form");
  Structure pm = p_modal_model(sib, k);
  size_t n0 = sib.N(), n = pm.N();
  int P = letter("P", 2), G = letter("G", 1), Q = letter("Q", 1);
  int lp = letter("p", 0), lq = letter("q", 0), lr = letter("r", 0);
  std::vector<std::vector<std::pair<int, int>>> non(n0);
  size_t total = 2 + n0 + 2;
  for (size_t a = 0; a < n0; ++a) {
    non[a] = unordered_nonedges(*pm.find(static_cast<int>(1 + a), P), n);
    total += non[a].size();
  }
  world_budget(total);
  Structure s;
  new_frame(s, Kind::Modal, pm.elems);
  int w0 = s.add_world("w0");
  std::vector<int> w1;
  for (size_t a = 0; a < n0; ++a) w1.push_back(s.add_world("w" + sib.elems[a]));
  std::vector<int> w2p;
  std::vector<std::vector<int>> ua(n0);
  for (size_t a = 0; a < n0; ++a)
    for (auto [b, c] : non[a]) {
      int u = s.add_world("u" + sib.elems[a] + ":" + pm.elems[b] + "," + pm.elems[c]);
      ua[a].push_back(u);
      w2p.push_back(u);
    }
  int ug = s.add_world("uG");
  int vm = -1, vp = -1;
  if (variant == LayerVariant::S5Tails) {
    vm = s.add_world("v-");
    vp = s.add_world("v+");
  }
  for (size_t a = 0; a < n0; ++a) {
    s.add_edge(w0, w1[a]);
    for (int u : ua[a]) s.add_edge(w1[a], u);
    s.add_edge(w1[a], ug);
  }
  if (variant == LayerVariant::S5Tails) {
    for (int u : w2p) s.add_edge(u, vm);
    s.add_edge(ug, vp);
  }
  transitive_close(s);
  if (variant == LayerVariant::S5pLoop) s.add_edge(ug, ug);
  if (grz)
    for (size_t w = 0; w < s.W(); ++w) s.add_edge(static_cast<int>(w), static_cast<int>(w));
  s.set_constant_domain();

  auto none = std::make_shared<Rel>(1, n);
  auto all = unary_set(n, [](int) { return true; });
  auto grid = unary_set(n, [&](int a) { return a < static_cast<int>(n0); });
  s.share(Q, none);
  s.share(lp, prop_rel(false));
  s.share(lq, prop_rel(false));
  s.share(lr, prop_rel(false));
  s.share(P, std::make_shared<Rel>(2, n));
  s.share(G, none);
  auto setw = [&](int w, int l, const RelPtr& r) { s.interp[w][l] = r; };
  setw(w0, lp, prop_rel(true));
  setw(w0, P, pm.interp[0].at(P));
  setw(w0, G, grid);
  for (size_t a = 0; a < n0; ++a) {
    setw(w1[a], lp, prop_rel(true));
    setw(w1[a], P, pm.interp[1 + a].at(P));
    setw(w1[a], G, grid);
    for (size_t i = 0; i < ua[a].size(); ++i) {
      auto [b, c] = non[a][i];
      setw(ua[a][i], lq, prop_rel(true));
      setw(ua[a][i], Q, unary_set(n, [&](int d) { return d != b && d != c; }));
    }
  }
  setw(ug, lr, prop_rel(true));
  setw(ug, Q, grid);
  if (vp >= 0) setw(vp, Q, all);

  std::string name = variant == LayerVariant::Plain ? "plain" : variant == LayerVariant::S5Tails ? "s5_tails" : "s5p_loop";
  std::vector<std::string> asserted{"P(b,c) iff box(q -> Q(b) or Q(c)) at w0 and every w_a",
                                    "G(b) iff box(r -> Q(b)) at w0 and every w_a"};
  if (variant != LayerVariant::Plain) asserted.push_back("p, q, r truth sets equal their substitutes");
  tag(s, "layer", "layered frame realizing p, q, r and the simulation of P and G by Q", asserted);
  s.meta["variant"] = name;
  s.meta["grz"] = grz;
  s.meta["n0"] = n0;
  s.meta["k"] = k;
  s.meta["depth"] = variant == LayerVariant::S5Tails ? 4 : 3;
  s.finalize();
  return s;
}

// ---------------------------------------------------------------- intuitionistic

Structure int_relativized_model(const Structure& sib) {
  size_t n = sib.N();
  if (n < 3) throw std::invalid_argument("need at least 3 elements");
  world_budget(n * (n + 1) / 2 + 1);
  const Rel* P = sib.find(0, letter("P", 2));
  Structure s;
  new_frame(s, Kind::Int, sib.elems);
  int w0 = s.add_world("w0");
  std::vector<std::pair<int, int>> pairs;
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a; b < n; ++b) {
      s.add_edge(w0, s.add_world("w" + sib.elems[a] + "," + sib.elems[b]));
      pairs.push_back({static_cast<int>(a), static_cast<int>(b)});
    }
  s.set_constant_domain();
  int Q = letter("Q", 1), lp = letter("p", 0), lq = letter("q", 0);
  for (auto& [l, r] : sib.interp[0]) s.share(l, r);
  s.share(Q, std::make_shared<Rel>(1, n));
  // no world of this frame misses the antichain, so p holds nowhere
  s.share(lp, prop_rel(false));
  s.share(lq, prop_rel(true));
  s.interp[w0][lq] = prop_rel(false);
  for (size_t i = 0; i < pairs.size(); ++i) {
    auto [a, b] = pairs[i];
    if (!P->has(a, b)) s.interp[1 + i][Q] = unary_set(n, [&](int c) { return c == a || c == b; });
  }
  tag(s, "int-relativized", "root over an antichain of pair worlds",
      {"w0 forces S_6(K(phi)^p) iff source satisfies phi", "p <-> S_7(p) and q <-> S_7(q) everywhere"});
  s.finalize();
  return s;
}

Structure int_tiling_model(const Structure& sib) {
  size_t n = sib.N();
  Structure s;
  new_frame(s, Kind::Int, sib.elems);
  int w0 = s.add_world("w0");
  for (size_t a = 0; a < n; ++a) s.add_edge(w0, s.add_world("w" + sib.elems[a]));
  s.set_constant_domain();
  for (auto& [l, r] : sib.interp[0]) s.share(l, r);
  int C = letter("C", 1);
  s.share(C, std::make_shared<Rel>(1, n));
  for (size_t a = 0; a < n; ++a) s.interp[1 + a][C] = unary_set(n, [&](int b) { return b == static_cast<int>(a); });
  tag(s, "int-tiling", "root over one world per element carrying C", {"C(a) iff world w_a", "root refutes M^int Tiling_X"});
  s.finalize();
  return s;
}

Structure int_two_layer_model(const Structure& sib, size_t k) {
  Structure pm = p_modal_model(sib, k);
  size_t n0 = sib.N(), n = pm.N();
  int P = letter("P", 2), G = letter("G", 1), Q = letter("Q", 1);
  std::vector<std::vector<std::pair<int, int>>> non(n0);
  size_t total = 1 + n0;
  for (size_t a = 0; a < n0; ++a) {
    non[a] = unordered_nonedges(*pm.find(static_cast<int>(1 + a), P), n);
    total += non[a].size();
  }
  world_budget(total);
  Structure s;
  new_frame(s, Kind::Int, pm.elems);
  int w0 = s.add_world("w0");
  std::vector<int> w1;
  for (size_t a = 0; a < n0; ++a) {
    w1.push_back(s.add_world("w" + sib.elems[a]));
    s.add_edge(w0, w1.back());
  }
  std::vector<std::vector<int>> ua(n0);
  for (size_t a = 0; a < n0; ++a)
    for (auto [b, c] : non[a]) {
      int u = s.add_world("u" + sib.elems[a] + ":" + pm.elems[b] + "," + pm.elems[c]);
      s.add_edge(w1[a], u);
      ua[a].push_back(u);
    }
  s.set_constant_domain();
  auto all = unary_set(n, [](int) { return true; });
  auto grid = unary_set(n, [&](int a) { return a < static_cast<int>(n0); });
  auto full = std::make_shared<Rel>(2, n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) full->add(static_cast<int>(a), static_cast<int>(b));
  s.share(G, all);
  s.share(P, full);
  s.share(Q, std::make_shared<Rel>(1, n));
  s.interp[w0][G] = grid;
  s.interp[w0][P] = pm.interp[0].at(P);
  for (size_t a = 0; a < n0; ++a) {
    s.interp[w1[a]][G] = grid;
    s.interp[w1[a]][P] = pm.interp[1 + a].at(P);
    for (size_t i = 0; i < ua[a].size(); ++i) {
      auto [b, c] = non[a][i];
      s.interp[ua[a][i]][Q] = unary_set(n, [&](int d) { return d == b || d == c; });
    }
  }
  tag(s, "int-two-layer", "root, one world per grid element, pair worlds above each",
      {"P(c,e) iff (Q(c) and Q(e) -> all Q) or all G, at every world",
       "tile'^+ indices reproduce the tile, direction and C letters"});
  s.meta["n0"] = n0;
  s.meta["k"] = k;
  s.finalize();
  return s;
}

// ---------------------------------------------------------------- F_0

const std::vector<std::string>& f0_worlds() {
  static const std::vector<std::string> w{"d1",  "d2",  "d2'", "d3",  "a0_1", "a0_2", "b0_1", "b0_2", "a1_1",
                                          "a1_2", "a1_3", "b1_1", "b1_2", "b1_3", "a2_1", "a2_2", "b2_1", "b2_2"};
  return w;
}

std::vector<std::pair<int, int>> f0_pairs() {
  const auto& w = f0_worlds();
  auto id = [&](const std::string& s) {
    return static_cast<int>(std::find(w.begin(), w.end(), s) - w.begin());
  };
  static const std::vector<std::pair<std::string, std::string>> raw{
      {"a0_1", "d1"},  {"a0_1", "d3"},  {"a0_2", "d1"},  {"a0_2", "d2"},  {"a0_2", "d2'"}, {"b0_1", "d2"},
      {"b0_1", "d2'"}, {"b0_1", "d3"},  {"b0_2", "d1"},  {"b0_2", "d2"},  {"b0_2", "d2'"}, {"b0_2", "d3"},
      {"b1_1", "a0_1"}, {"b1_1", "b0_2"}, {"a1_1", "b0_1"}, {"a1_1", "b0_2"}, {"a1_2", "a0_2"}, {"a1_2", "b0_2"},
      {"a1_3", "a0_2"}, {"a1_3", "b0_1"}, {"b1_2", "a0_1"}, {"b1_2", "b0_1"}, {"b1_3", "a0_1"}, {"b1_3", "a0_2"},
      {"a2_1", "b1_1"}, {"a2_1", "a1_2"}, {"a2_1", "b1_2"}, {"a2_2", "b1_1"}, {"a2_2", "a1_2"}, {"a2_2", "b1_3"},
      {"b2_1", "a1_1"}, {"b2_1", "b1_2"}, {"b2_1", "a1_2"}, {"b2_2", "a1_1"}, {"b2_2", "b1_2"}, {"b2_2", "a1_3"}};
  std::vector<std::pair<int, int>> out;
  for (auto& [a, b] : raw) out.push_back({id(a), id(b)});
  return out;
}

Structure f0_frame() {
  Structure s;
  new_frame(s, Kind::Int, {"d"});
  for (auto& w : f0_worlds()) s.add_world(w);
  for (auto [a, b] : f0_pairs()) s.add_edge(a, b);
  s.set_constant_domain();
  tag(s, "f0-frame", "eighteen-world frame for the P' simulation", {});
  s.finalize();
  return s;
}

namespace {

bool suitable_pprime(const std::string& w, int b, int a, int a2) {
  if (w == "d2") return b != a;
  if (w == "d2'" || w == "b0_1") return b == a2;
  if (w == "d3") return b == a || b == a2;
  return false;
}

}  // namespace

Structure a_suitable_model(size_t domain, size_t a, size_t a2) {
  if (domain < 3) throw std::invalid_argument("a-suitable models need at least 3 elements");
  if (a == a2 || a >= domain || a2 >= domain) throw std::invalid_argument("need distinct a, a' in the domain");
  std::vector<std::string> el;
  for (size_t i = 0; i < domain; ++i) el.push_back("d" + std::to_string(i));
  Structure s;
  new_frame(s, Kind::Int, el);
  for (auto& w : f0_worlds()) s.add_world(w);
  for (auto [x, y] : f0_pairs()) s.add_edge(x, y);
  s.set_constant_domain();
  int pp = letter("P'", 1);
  for (size_t w = 0; w < s.W(); ++w)
    s.interp[w][pp] = unary_set(domain, [&](int b) {
      return suitable_pprime(s.worlds[w], b, static_cast<int>(a), static_cast<int>(a2));
    });
  tag(s, "a-suitable", "F_0 with the a-suitable valuation of P'",
      {"w refutes A^k_m(a) iff w sees alpha^k_m", "w refutes B^k_m(a) iff w sees beta^k_m",
       "level-2 formulas forced everywhere for b != a"});
  s.meta["a"] = a;
  s.meta["a_prime"] = a2;
  s.finalize();
  return s;
}

Structure attach_f0(const Structure& base) {
  if (base.kind != Kind::Int) throw std::invalid_argument("attach_f0 needs an intuitionistic model");
  size_t n = base.N(), W = base.W();
  if (n < 3) throw std::invalid_argument("attach_f0 needs at least 3 elements");
  world_budget(W + 18 * n);
  int Q = letter("Q", 1), G = letter("G", 1), pp = letter("P'", 1);
  const auto& fw = f0_worlds();
  auto fid = [&](const std::string& s) { return static_cast<int>(std::find(fw.begin(), fw.end(), s) - fw.begin()); };
  Structure s;
  new_frame(s, Kind::Int, base.elems);
  for (auto& w : base.worlds) s.add_world(w);
  for (size_t a = 0; a < n; ++a)
    for (auto& w : fw) s.add_world(w + "@" + base.elems[a]);
  auto copy = [&](size_t a, int f) { return static_cast<int>(W + a * 18 + f); };
  for (size_t w = 0; w < W; ++w)
    for (int v : base.rel_edges[w]) s.add_edge(static_cast<int>(w), v);
  for (size_t a = 0; a < n; ++a)
    for (auto [x, y] : f0_pairs()) s.add_edge(copy(a, x), copy(a, y));
  for (size_t w = 0; w < W; ++w) {
    const Rel* q = base.find(static_cast<int>(w), Q);
    const Rel* g = base.find(static_cast<int>(w), G);
    for (size_t a = 0; a < n; ++a) {
      if (!base.dom[w].get(a)) continue;
      if (!q || !q->has(static_cast<int>(a))) {
        s.add_edge(static_cast<int>(w), copy(a, fid("a2_1")));
        s.add_edge(static_cast<int>(w), copy(a, fid("b2_1")));
      }
      if (!g || !g->has(static_cast<int>(a))) {
        s.add_edge(static_cast<int>(w), copy(a, fid("a2_2")));
        s.add_edge(static_cast<int>(w), copy(a, fid("b2_2")));
      }
      s.add_edge(static_cast<int>(w), copy(a, fid("a1_1")));
      s.add_edge(static_cast<int>(w), copy(a, fid("b1_1")));
    }
  }
  s.fit();
  for (size_t w = 0; w < W; ++w) s.dom[w] = base.dom[w];
  for (size_t w = W; w < s.W(); ++w)
    for (size_t e = 0; e < n; ++e) s.dom[w].set(e);
  std::set<int> ls;
  for (auto& m : base.interp)
    for (auto& [l, r] : m) ls.insert(l);
  for (size_t w = 0; w < W; ++w) {
    for (auto& [l, r] : base.interp[w]) s.interp[w][l] = r;
    s.interp[w][pp] = std::make_shared<Rel>(1, n);
  }
  for (int l : ls) {
    auto r = std::make_shared<Rel>(letter_arity(l), n);
    r->prop = true;
    for (size_t i = 0; i < r->bits.n; ++i) r->bits.set(i);
    for (size_t w = W; w < s.W(); ++w) s.interp[w][l] = r;
  }
  for (size_t a = 0; a < n; ++a) {
    int a2 = static_cast<int>((a + 1) % n);
    for (int f = 0; f < 18; ++f)
      s.interp[copy(a, f)][pp] =
          unary_set(n, [&](int b) { return suitable_pprime(fw[f], b, static_cast<int>(a), a2); });
  }
  tag(s, "attach-f0", "one F_0 copy per element hung above the base",
      {"Q(a) iff A^2_1(a) or B^2_1(a) at base worlds", "G(a) iff A^2_2(a) or B^2_2(a) at base worlds"});
  s.meta["base_worlds"] = W;
  s.finalize();
  return s;
}

// ---------------------------------------------------------------- assertion audits

namespace {

struct Audits {
  std::vector<Assertion> out;
  void add(const std::string& name, bool ok, const std::string& witness = "") {
    for (auto& a : out)
      if (a.name == name) {
        if (a.holds && !ok) {
          a.holds = false;
          a.witness = witness;
        }
        return;
      }
    out.push_back({name, ok, ok ? "" : witness});
  }
};

bool holds_unary(const Structure& s, int w, int l, int a) {
  const Rel* r = s.find(w, l);
  return r && r->has(a);
}

bool holds_binary(const Structure& s, int w, int l, int a, int b) {
  const Rel* r = s.find(w, l);
  return r && r->has(a, b);
}

// sim maps a unary letter to its simulating formula in x
void tile_prime_checks(Audits& au, Evaluator& ev, const Structure& s, int w, size_t n0, int k,
                       const std::function<F(int)>& sim, const std::string& tagname) {
  Letters L = letters_for(k);
  auto tp = [&](int idx) {
    if (idx <= k) return sim(L.Pm[idx]);
    if (idx <= k + 4) return sim(L.R[idx - k - 1]);
    return sim(L.U[idx - k - 5]);
  };
  for (int m = 0; m <= k; ++m) {
    F f = tp(m);
    for (size_t a = 0; a < n0; ++a) {
      bool want = holds_unary(s, w, L.Pm[m], static_cast<int>(a));
      au.add(tagname + " P_m", ev.eval1(f, w, X, static_cast<int>(a)) == want,
             "tile'_" + std::to_string(m) + " at " + s.elems[a] + " in " + s.worlds[w]);
    }
  }
  for (int i = 1; i <= 4; ++i) {
    F fr = tp(k + i), fu = tp(k + i + 4);
    for (size_t a = 0; a < n0; ++a) {
      au.add(tagname + " R_i", ev.eval1(fr, w, X, static_cast<int>(a)) == holds_unary(s, w, L.R[i - 1], static_cast<int>(a)),
             "R_" + std::to_string(i) + " at " + s.elems[a]);
      au.add(tagname + " U_j", ev.eval1(fu, w, X, static_cast<int>(a)) == holds_unary(s, w, L.U[i - 1], static_cast<int>(a)),
             "U_" + std::to_string(i) + " at " + s.elems[a]);
    }
  }
}

std::string nm(const Structure& s, int a) { return s.elems[a]; }

}  // namespace

std::vector<Assertion> check_assertions(const Structure& s, const Structure* source) {
  Audits au;
  std::string c = s.meta.value("construction", "");
  int P = letter("P", 2), Q = letter("Q", 1), G = letter("G", 1), C = letter("C", 1);
  auto misc = misc_formulas();
  if (c == "grid" || c == "sib-grid") {
    int k = s.meta["k"].get<int>();
    Letters L = letters_for(k);
    bool has1 = s.meta["has_t1"].get<bool>();
    au.add("exists P_1 iff t_1 in window", eval_classical(s, exists(X, atom(L.Pm[1], {X}))) == has1);
    if (c == "sib-grid") {
      au.add("sib", eval_classical(s, misc["sib"]));
      au.add("bipartite", is_bipartite(s));
    }
  } else if (c == "s0-extension" || c == "s1-extension") {
    size_t n0 = s.meta["n0"].get<size_t>();
    int k = s.meta["k"].get<int>();
    Letters L = letters_for(k);
    Evaluator ev(s);
    F g = c == "s0-extension" ? grid(X) : grid_prime(X);
    for (size_t e = 0; e < s.N(); ++e)
      au.add(c == "s0-extension" ? "grid iff original element" : "grid' iff original element",
             ev.eval1(g, 0, X, static_cast<int>(e)) == (e < n0), nm(s, static_cast<int>(e)));
    if (c == "s0-extension") {
      for (int m = 0; m <= k; ++m) {
        F f = s0_subst(atom(L.Pm[m], {X}), k);
        for (size_t a = 0; a < n0; ++a)
          au.add("tile_m iff P_m on the original domain",
                 ev.eval1(f, 0, X, static_cast<int>(a)) == holds_unary(s, 0, L.Pm[m], static_cast<int>(a)),
                 "tile_" + std::to_string(m) + " at " + nm(s, static_cast<int>(a)));
      }
    } else {
      Audits tmp;
      tile_prime_checks(tmp, ev, s, 0, n0, k, [&](int l) { return s1_subst(atom(l, {X}), k); }, "tile'");
      bool ok = true;
      std::string wit;
      for (auto& a : tmp.out)
        if (!a.holds) ok = false, wit = a.witness;
      au.add("tile' indices reproduce P_m, R_i, U_j", ok, wit);
      au.add("sib", eval_classical(s, misc["sib"]));
    }
  } else if (c == "chain-extension") {
    size_t n0 = s.meta["n0"].get<size_t>();
    int k = s.meta["k"].get<int>();
    Evaluator ev(s);
    Audits tmp;
    tile_prime_checks(tmp, ev, s, 0, n0, k, [&](int l) { return s3(atom(l, {X}), k); }, "tile'");
    bool ok = true;
    std::string wit;
    for (auto& a : tmp.out)
      if (!a.holds) ok = false, wit = a.witness;
    au.add("tile' indices reproduce P_m, R_i, U_j on the original domain", ok, wit);
    au.add("sib", eval_classical(s, misc["sib"]));
  } else if (c == "star") {
    Evaluator ev(s);
    F f = box(disj(atom(Q, {X}), atom(Q, {Y})));
    size_t n = s.N();
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) {
        bool want = holds_binary(s, 0, P, static_cast<int>(a), static_cast<int>(b));
        au.add("P(a,b) iff box(Q(a) or Q(b)) at the hub",
               ev.eval2(f, 0, X, static_cast<int>(a), Y, static_cast<int>(b)) == want, nm(s, static_cast<int>(a)) + "," + nm(s, static_cast<int>(b)));
      }
  } else if (c == "s3-modal" || c == "s2s3-modal") {
    size_t n0 = s.meta["n0"].get<size_t>();
    for (size_t w = 0; w <= n0; ++w)
      for (size_t a = 0; a < s.N(); ++a)
        au.add("C(a) iff world w_a", holds_unary(s, static_cast<int>(w), C, static_cast<int>(a)) == (w >= 1 && a == w - 1),
               s.worlds[w] + " " + nm(s, static_cast<int>(a)));
    if (c == "s2s3-modal") {
      Evaluator ev(s);
      F f = box(disj(atom(Q, {X}), atom(Q, {Y})));
      for (size_t w = 0; w <= n0; ++w)
        for (size_t a = 0; a < s.N(); ++a)
          for (size_t b = 0; b < s.N(); ++b)
            au.add("P(b,c) iff box(Q(b) or Q(c)) at w0 and every w_a",
                   ev.eval2(f, static_cast<int>(w), X, static_cast<int>(a), Y, static_cast<int>(b)) ==
                       holds_binary(s, static_cast<int>(w), P, static_cast<int>(a), static_cast<int>(b)),
                   s.worlds[w] + " " + nm(s, static_cast<int>(a)) + "," + nm(s, static_cast<int>(b)));
    }
  } else if (c == "p-modal") {
    size_t n0 = s.meta["n0"].get<size_t>();
    int k = s.meta["k"].get<int>();
    Evaluator ev(s);
    F f = tile_prime(k + 9, X);
    for (size_t w = 0; w <= n0; ++w)
      for (size_t b = 0; b < n0; ++b)
        au.add("tile'_{k+9}(b) iff b = a at w_a", ev.eval1(f, static_cast<int>(w), X, static_cast<int>(b)) == (w >= 1 && b == w - 1),
               s.worlds[w] + " " + nm(s, static_cast<int>(b)));
    au.add("p everywhere", ev.truth_set(atom(letter("p", 0), {})).size() == s.W());
  } else if (c == "layer") {
    size_t n0 = s.meta["n0"].get<size_t>();
    Evaluator ev(s);
    F fq = box(imp(atom(letter("q", 0), {}), disj(atom(Q, {X}), atom(Q, {Y}))));
    F fr = box(imp(atom(letter("r", 0), {}), atom(Q, {X})));
    for (size_t w = 0; w <= n0; ++w) {
      for (size_t a = 0; a < s.N(); ++a) {
        for (size_t b = 0; b < s.N(); ++b)
          au.add("P(b,c) iff box(q -> Q(b) or Q(c)) at w0 and every w_a",
                 ev.eval2(fq, static_cast<int>(w), X, static_cast<int>(a), Y, static_cast<int>(b)) ==
                     holds_binary(s, static_cast<int>(w), P, static_cast<int>(a), static_cast<int>(b)),
                 s.worlds[w] + " " + nm(s, static_cast<int>(a)) + "," + nm(s, static_cast<int>(b)));
        au.add("G(b) iff box(r -> Q(b)) at w0 and every w_a",
               ev.eval1(fr, static_cast<int>(w), X, static_cast<int>(a)) == holds_unary(s, static_cast<int>(w), G, static_cast<int>(a)),
               s.worlds[w] + " " + nm(s, static_cast<int>(a)));
      }
    }
    std::string v = s.meta["variant"].get<std::string>();
    if (v != "plain") {
      for (const char* l : {"p", "q", "r"}) {
        F lf = atom(letter(l, 0), {});
        F sub = v == "s5_tails" ? s5(lf) : s5_prime(lf);
        auto want = ev.truth_set(lf), got = ev.truth_set(sub);
        au.add("p, q, r truth sets equal their substitutes", want == got, l);
      }
    }
  } else if (c == "int-relativized") {
    Evaluator ev(s);
    auto t1 = ev.truth_set(iff(atom(letter("p", 0), {}), s7(atom(letter("p", 0), {}))));
    auto t2 = ev.truth_set(iff(atom(letter("q", 0), {}), s7(atom(letter("q", 0), {}))));
    au.add("p <-> S_7(p) and q <-> S_7(q) everywhere", t1.size() == s.W() && t2.size() == s.W());
    if (source) {
      const Rel* sp = source->find(0, P);
      F f = s6(kolmogorov(atom(P, {X, Y})));
      f = replace_bot(f, atom(letter("p", 0), {}));
      for (size_t a = 0; a < s.N(); ++a)
        for (size_t b = 0; b < s.N(); ++b)
          au.add("w0 forces S_6(K(phi)^p) iff source satisfies phi",
                 ev.eval2(f, 0, X, static_cast<int>(a), Y, static_cast<int>(b)) == sp->has(static_cast<int>(a), static_cast<int>(b)),
                 "P(" + nm(s, static_cast<int>(a)) + "," + nm(s, static_cast<int>(b)) + ")");
    }
  } else if (c == "int-tiling") {
    for (size_t w = 0; w < s.W(); ++w)
      for (size_t a = 0; a < s.N(); ++a)
        au.add("C(a) iff world w_a", holds_unary(s, static_cast<int>(w), C, static_cast<int>(a)) == (w >= 1 && a == w - 1),
               s.worlds[w] + " " + nm(s, static_cast<int>(a)));
  } else if (c == "int-two-layer") {
    size_t n0 = s.meta["n0"].get<size_t>();
    int k = s.meta["k"].get<int>();
    Evaluator ev(s);
    F sim = disj(imp(conj(atom(Q, {X}), atom(Q, {Y})), forall(X, atom(Q, {X}))), forall(X, atom(G, {X})));
    for (size_t w = 0; w < s.W(); ++w)
      for (size_t a = 0; a < s.N(); ++a)
        for (size_t b = 0; b < s.N(); ++b)
          au.add("P(c,e) iff (Q(c) and Q(e) -> all Q) or all G, at every world",
                 ev.eval2(sim, static_cast<int>(w), X, static_cast<int>(a), Y, static_cast<int>(b)) ==
                     holds_binary(s, static_cast<int>(w), P, static_cast<int>(a), static_cast<int>(b)),
                 s.worlds[w] + " " + nm(s, static_cast<int>(a)) + "," + nm(s, static_cast<int>(b)));
    if (source) {
      // the source's unary letters at w0 and w_a, with C at w_a only
      Letters L = letters_for(k);
      F fc = positivize(tile_prime(k + 9, X));
      for (size_t w = 0; w <= n0; ++w) {
        for (int m = 0; m <= k; ++m) {
          F f = positivize(tile_prime(m, X));
          for (size_t a = 0; a < n0; ++a)
            au.add("tile'^+ indices reproduce the tile, direction and C letters",
                   ev.eval1(f, static_cast<int>(w), X, static_cast<int>(a)) == holds_unary(*source, 0, L.Pm[m], static_cast<int>(a)),
                   s.worlds[w] + " tile'_" + std::to_string(m) + " " + nm(s, static_cast<int>(a)));
        }
        for (int i = 1; i <= 4; ++i) {
          F fr = positivize(tile_prime(k + i, X)), fu = positivize(tile_prime(k + i + 4, X));
          for (size_t a = 0; a < n0; ++a) {
            au.add("tile'^+ indices reproduce the tile, direction and C letters",
                   ev.eval1(fr, static_cast<int>(w), X, static_cast<int>(a)) == holds_unary(*source, 0, L.R[i - 1], static_cast<int>(a)),
                   s.worlds[w] + " R_" + std::to_string(i) + " " + nm(s, static_cast<int>(a)));
            au.add("tile'^+ indices reproduce the tile, direction and C letters",
                   ev.eval1(fu, static_cast<int>(w), X, static_cast<int>(a)) == holds_unary(*source, 0, L.U[i - 1], static_cast<int>(a)),
                   s.worlds[w] + " U_" + std::to_string(i) + " " + nm(s, static_cast<int>(a)));
          }
        }
        for (size_t a = 0; a < n0; ++a)
          au.add("tile'^+ indices reproduce the tile, direction and C letters",
                 ev.eval1(fc, static_cast<int>(w), X, static_cast<int>(a)) == (w >= 1 && a == w - 1),
                 s.worlds[w] + " C " + nm(s, static_cast<int>(a)));
      }
    }
  } else if (c == "a-suitable") {
    int a = s.meta["a"].get<int>();
    Evaluator ev(s);
    const auto& fw = f0_worlds();
    auto sees = [&](int w, const std::string& t) {
      int ti = static_cast<int>(std::find(fw.begin(), fw.end(), t) - fw.begin());
      auto& su = s.succ[w];
      return std::find(su.begin(), su.end(), ti) != su.end();
    };
    for (int lvl = 1; lvl <= 2; ++lvl)
      for (int m = 1; m <= 2; ++m) {
        F fa = a_formula(lvl, m, X), fb = b_formula(lvl, m, X);
        std::string sfx = std::to_string(lvl) + "_" + std::to_string(m);
        for (size_t w = 0; w < s.W(); ++w) {
          au.add("w refutes A^k_m(a) iff w sees alpha^k_m", !ev.eval1(fa, static_cast<int>(w), X, a) == sees(static_cast<int>(w), "a" + sfx),
                 fw[w] + " A^" + sfx);
          au.add("w refutes B^k_m(a) iff w sees beta^k_m", !ev.eval1(fb, static_cast<int>(w), X, a) == sees(static_cast<int>(w), "b" + sfx),
                 fw[w] + " B^" + sfx);
        }
      }
    for (int m = 1; m <= 2; ++m) {
      F fa = a_formula(2, m, X), fb = b_formula(2, m, X);
      for (size_t w = 0; w < s.W(); ++w)
        for (size_t b = 0; b < s.N(); ++b) {
          if (static_cast<int>(b) == a) continue;
          au.add("level-2 formulas forced everywhere for b != a",
                 ev.eval1(fa, static_cast<int>(w), X, static_cast<int>(b)) && ev.eval1(fb, static_cast<int>(w), X, static_cast<int>(b)),
                 fw[w] + " " + nm(s, static_cast<int>(b)));
        }
    }
  } else if (c == "attach-f0") {
    size_t W = s.meta["base_worlds"].get<size_t>();
    Evaluator ev(s);
    F fq = disj(a_formula(2, 1, X), b_formula(2, 1, X));
    F fg = disj(a_formula(2, 2, X), b_formula(2, 2, X));
    for (size_t w = 0; w < W; ++w)
      for (int a : s.dom_list[w]) {
        au.add("Q(a) iff A^2_1(a) or B^2_1(a) at base worlds", ev.eval1(fq, static_cast<int>(w), X, a) == holds_unary(s, static_cast<int>(w), Q, a),
               s.worlds[w] + " " + nm(s, a));
        au.add("G(a) iff A^2_2(a) or B^2_2(a) at base worlds", ev.eval1(fg, static_cast<int>(w), X, a) == holds_unary(s, static_cast<int>(w), G, a),
               s.worlds[w] + " " + nm(s, a));
      }
  }
  return au.out;
}

}  // namespace tmred

namespace tmred {

TileSet toy_tileset() {
  TileSet t;
  t.n = 0;
  auto mk = [](const std::string& id, const std::string& h, const std::string& v) {
    TileType tt;
    tt.id = id;
    tt.left = tt.right = {h};
    tt.up = tt.down = {v};
    return tt;
  };
  t.tiles = {mk("t0", "a", "a"), mk("t1", "b", "c"), mk("t2", "d", "e")};
  return t;
}

Structure cycle_source(const TileSet& t) {
  Letters L = letters_for(t);
  Structure s = make_classical({"a0", "a1", "a2", "a3"});
  Rel& P = s.make_rel(0, L.P);
  for (int i = 0; i < 4; ++i) {
    P.add(i, (i + 1) % 4);
    P.add((i + 1) % 4, i);
  }
  for (size_t m = 0; m < t.size(); ++m) s.make_rel(0, L.Pm[m]);
  for (int i = 0; i < 4; ++i) {
    s.rel_at(0, L.Pm[0]).add(i);
    s.rel_at(0, L.R[i]).add(i);
    s.rel_at(0, L.U[i]).add(i);
  }
  s.meta["construction"] = "cycle-source";
  s.meta["anchor"] = "hand-made 4-cycle source";
  s.meta["asserted"] = nlohmann::json::array();
  s.finalize();
  return s;
}

}  // namespace tmred
