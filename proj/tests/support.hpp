#pragma once
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "tmred/formula.hpp"
#include "tmred/io.hpp"
#include "tmred/semantics.hpp"

namespace tmred::support {

inline Machine load_machine(const std::string& name) {
  return machine_from_json(read_json_file(std::string(TMRED_DATA_DIR) + "/" + name + ".json"));
}

// alphabet {_, #, |}, states q0..q<nstates-1>, hx, hy; unlisted pairs of ordinary states go to hy
inline Machine tiny_machine(int nstates, const std::vector<std::tuple<std::string, std::string, std::string, std::string, char>>& rules) {
  Machine m;
  m.sigma = {"_", "#", "|"};
  for (int i = 0; i < nstates; ++i) m.states.push_back("q" + std::to_string(i));
  m.states.push_back("hx");
  m.states.push_back("hy");
  m.q0 = "q0";
  m.halting = {"hx", "hy"};
  m.hx = "hx";
  m.hy = "hy";
  for (auto& [q, s, q2, s2, mv] : rules) m.delta[{q, s}] = Instr{q2, s2, parse_move(std::string(1, mv))};
  for (auto& q : m.states)
    for (auto& s : m.sigma)
      if (!m.delta.count({q, s})) m.delta[{q, s}] = Instr{m.is_halting(q) ? q : "hy", s, Move::S};
  return m;
}

struct FormulaSpec {
  std::vector<std::pair<int, int>> letters;  // (letter id, arity)
  std::vector<Var> vars{X, Y};
  bool box = false;
  bool bot = true;
};

inline F random_formula(std::mt19937& rng, int depth, const FormulaSpec& sp) {
  auto pick = [&](size_t n) { return static_cast<size_t>(std::uniform_int_distribution<size_t>(0, n - 1)(rng)); };
  auto leaf = [&]() -> F {
    if (sp.bot && pick(8) == 0) return bot();
    auto [l, ar] = sp.letters[pick(sp.letters.size())];
    std::vector<Var> args;
    for (int i = 0; i < ar; ++i) args.push_back(sp.vars[pick(sp.vars.size())]);
    return atom(l, args);
  };
  if (depth == 0) return leaf();
  size_t ops = sp.box ? 7 : 6;
  switch (pick(ops)) {
    case 0: return leaf();
    case 1: return conj(random_formula(rng, depth - 1, sp), random_formula(rng, depth - 1, sp));
    case 2: return disj(random_formula(rng, depth - 1, sp), random_formula(rng, depth - 1, sp));
    case 3: return imp(random_formula(rng, depth - 1, sp), random_formula(rng, depth - 1, sp));
    case 4: return forall(sp.vars[pick(sp.vars.size())], random_formula(rng, depth - 1, sp));
    case 5: return exists(sp.vars[pick(sp.vars.size())], random_formula(rng, depth - 1, sp));
    default: return box(random_formula(rng, depth - 1, sp));
  }
}

inline F close_universally(F f) {
  for (Var v = 0; v < kMaxVars; ++v)
    if (f->fv >> v & 1) f = forall(v, f);
  return f;
}

// random intuitionistic model on worlds 0..W-1 with edges only from lower to higher indices;
// domains expand and valuations are pushed upward so heredity holds
inline Structure random_int_model(std::mt19937& rng, size_t max_worlds, size_t max_elems,
                                  const std::vector<std::pair<int, int>>& letters, size_t min_elems = 1) {
  auto coin = [&](int pct) { return std::uniform_int_distribution<int>(0, 99)(rng) < pct; };
  size_t W = std::uniform_int_distribution<size_t>(1, max_worlds)(rng);
  size_t N = std::uniform_int_distribution<size_t>(min_elems, max_elems)(rng);
  Structure s;
  s.kind = Kind::Int;
  s.worlds.clear();
  for (size_t e = 0; e < N; ++e) s.add_elem("e" + std::to_string(e));
  for (size_t w = 0; w < W; ++w) s.add_world("w" + std::to_string(w));
  std::vector<std::vector<int>> pred(W);
  for (size_t u = 0; u < W; ++u)
    for (size_t v = u + 1; v < W; ++v)
      if (coin(45)) {
        s.add_edge(static_cast<int>(u), static_cast<int>(v));
        pred[v].push_back(static_cast<int>(u));
      }
  for (size_t w = 0; w < W; ++w) {
    s.dom[w] = Bits(N);
    bool any = false;
    for (size_t e = 0; e < N; ++e)
      if (coin(60)) s.dom[w].set(e), any = true;
    if (!any) s.dom[w].set(0);
    for (int p : pred[w])
      for (size_t e = 0; e < N; ++e)
        if (s.dom[p].get(e)) s.dom[w].set(e);
  }
  for (auto [l, ar] : letters)
    for (size_t w = 0; w < W; ++w) {
      Rel& r = s.make_rel(static_cast<int>(w), l);
      std::vector<int> d;
      for (size_t e = 0; e < N; ++e)
        if (s.dom[w].get(e)) d.push_back(static_cast<int>(e));
      if (ar == 0) r.prop = coin(40);
      if (ar == 1)
        for (int a : d)
          if (coin(40)) r.add(a);
      if (ar == 2)
        for (int a : d)
          for (int b : d)
            if (coin(30)) r.add(a, b);
      for (int p : pred[w]) {
        const Rel* q = s.find(p, l);
        if (ar == 0) r.prop = r.prop || q->prop;
        for (size_t i = 0; i < q->bits.n; ++i)
          if (q->bits.get(i)) r.bits.set(i);
      }
    }
  s.finalize();
  return s;
}

}  // namespace tmred::support

namespace tmred::support {

// symmetric w x h grid graph over P, no other letters
inline Structure grid_graph(size_t w, size_t h) {
  std::vector<std::string> names;
  for (size_t j = 0; j < h; ++j)
    for (size_t i = 0; i < w; ++i) names.push_back(std::to_string(i) + "." + std::to_string(j));
  Structure s = make_classical(names);
  Rel& P = s.make_rel(0, letter("P", 2));
  auto id = [&](size_t i, size_t j) { return static_cast<int>(j * w + i); };
  for (size_t j = 0; j < h; ++j)
    for (size_t i = 0; i < w; ++i) {
      if (i + 1 < w) P.add(id(i, j), id(i + 1, j)), P.add(id(i + 1, j), id(i, j));
      if (j + 1 < h) P.add(id(i, j), id(i, j + 1)), P.add(id(i, j + 1), id(i, j));
    }
  s.finalize();
  return s;
}

}  // namespace tmred::support
