#include "tmred/generators.hpp"

#include <stdexcept>
#include <unordered_map>

namespace tmred {

namespace {

F P(Var a, Var b) { return atom(letter("P", 2), {a, b}); }
F G(Var a) { return atom(letter("G", 1), {a}); }
F Q(Var a) { return atom(letter("Q", 1), {a}); }
F C(Var a) { return atom(letter("C", 1), {a}); }
F Pp(Var a) { return atom(letter("P'", 1), {a}); }
F prop(const char* name) { return atom(letter(name, 0), {}); }
F un(int l, Var a) { return atom(l, {a}); }

// the variable paired with v when only one bound variable is needed
Var other(Var v) { return v == X ? Y : X; }

F conj3(F a, F b, F c) { return conj(conj(a, b), c); }

// exactly one of the letters holds at v
F exactly_one(const std::vector<int>& ls, Var v) {
  std::vector<F> alts;
  for (size_t i = 0; i < ls.size(); ++i) {
    std::vector<F> parts{un(ls[i], v)};
    for (size_t j = 0; j < ls.size(); ++j)
      if (j != i) parts.push_back(neg(un(ls[j], v)));
    alts.push_back(big_and(parts));
  }
  return big_or(alts);
}

enum class Dir { H, V };

// P(u,v) ∧ ⋁ matching pairs
F match(const TileSet& t, const Letters& L, Dir d, Var u, Var v, bool* empty) {
  std::vector<F> alts;
  for (size_t i = 0; i < t.size(); ++i)
    for (size_t j = 0; j < t.size(); ++j) {
      bool ok = d == Dir::H ? t.tiles[i].right == t.tiles[j].left : t.tiles[i].up == t.tiles[j].down;
      if (ok) alts.push_back(conj(un(L.Pm[i], u), un(L.Pm[j], v)));
    }
  if (empty) *empty = alts.empty();
  return conj(P(u, v), big_or(alts));
}

F cyc(const std::array<int, 4>& ls, Var u, Var v) {
  std::vector<F> alts;
  for (int i = 0; i < 4; ++i) alts.push_back(conj(un(ls[i], u), un(ls[(i + 1) % 4], v)));
  return big_or(alts);
}

F commuting(const std::function<F(Var, Var)>& h, const std::function<F(Var, Var)>& v) {
  return forall(X, forall(Y, iff(exists(Z, conj(h(X, Z), v(Z, Y))), exists(Z, conj(v(X, Z), h(Z, Y))))));
}

void check_letters(F f, const std::set<std::string>& allowed, const char* stage) {
  for (auto& name : metrics(f).letters())
    if (!allowed.count(name)) throw std::invalid_argument(std::string(stage) + ": letter " + name + " outside the suite");
}

std::set<std::string> names(const Letters& L, bool directed, bool modal, bool guard) {
  std::set<std::string> s{"P"};
  for (int l : L.Pm) s.insert(letter_name(l));
  if (directed)
    for (int i = 0; i < 4; ++i) {
      s.insert(letter_name(L.R[i]));
      s.insert(letter_name(L.U[i]));
    }
  if (modal) s.insert("C");
  if (guard) s.insert("G");
  return s;
}

Template keyed(Var v, F body) { return Template{v, {v}, body}; }

std::vector<Template> variants(const std::function<F(Var)>& mk) {
  return {keyed(X, mk(X)), keyed(Y, mk(Y)), keyed(Z, mk(Z))};
}

// P_m, R_i, U_j to tile' indices m, k+i, k+j+4
Mapping directed_to_tile_prime(const Letters& L, bool plus) {
  Mapping m;
  auto put = [&](int l, int idx) {
    m[l] = variants([&](Var v) { return plus ? positivize(tile_prime(idx, v)) : tile_prime(idx, v); });
  };
  for (int i = 0; i <= L.k; ++i) put(L.Pm[i], i);
  for (int i = 1; i <= 4; ++i) put(L.R[i - 1], L.k + i);
  for (int j = 1; j <= 4; ++j) put(L.U[j - 1], L.k + j + 4);
  return m;
}

F guarded(F f, int g) { return imp(exists(X, un(g, X)), relativize(f, g)); }

}  // namespace

Letters letters_for(int k) {
  if (k < 0) throw std::invalid_argument("negative k");
  Letters L;
  L.k = k;
  L.P = letter("P", 2);
  L.G = letter("G", 1);
  L.Q = letter("Q", 1);
  L.C = letter("C", 1);
  L.p = letter("p", 0);
  L.q = letter("q", 0);
  L.r = letter("r", 0);
  L.Pp = letter("P'", 1);
  for (int i = 0; i <= k; ++i) L.Pm.push_back(letter("P_" + std::to_string(i), 1));
  for (int i = 0; i < 4; ++i) {
    L.R[i] = letter("R_" + std::to_string(i + 1), 1);
    L.U[i] = letter("U_" + std::to_string(i + 1), 1);
  }
  return L;
}

F Suite::operator[](const std::string& name) const {
  auto it = f.find(name);
  if (it == f.end()) throw std::out_of_range("no formula " + name);
  return it->second;
}

Suite classical_suite(const TileSet& t) {
  if (t.size() < 3) throw std::invalid_argument("tile set needs at least 3 tiles");
  Letters L = letters_for(t);
  Suite s;
  bool he = false, ve = false;
  auto H = [&](Var u, Var v) { return match(t, L, Dir::H, u, v, &he); };
  auto V = [&](Var u, Var v) { return match(t, L, Dir::V, u, v, &ve); };
  s.f["H"] = H(X, Y);
  s.f["V"] = V(X, Y);
  if (he) s.flags.insert("H:empty");
  if (ve) s.flags.insert("V:empty");
  s.f["TC_0"] = forall(X, exactly_one(L.Pm, X));
  s.f["TC_1"] = forall(X, exists(Y, H(X, Y)));
  s.f["TC_2"] = forall(X, exists(Y, V(X, Y)));
  s.f["TC_3"] = commuting(H, V);
  s.f["TC_4"] = exists(X, un(L.Pm[0], X));
  s.f["Tiling"] = big_and({s.f["TC_0"], s.f["TC_1"], s.f["TC_2"], s.f["TC_3"], s.f["TC_4"]});
  s.f["Tiling_X"] = imp(s.f["Tiling"], exists(X, un(L.Pm[1], X)));
  s.f["Tiling_Y"] = imp(s.f["Tiling"], exists(X, un(L.Pm[2], X)));
  return s;
}

Suite directed_suite(const TileSet& t) {
  Suite c = classical_suite(t);
  Letters L = letters_for(t);
  Suite s;
  s.flags = c.flags;
  std::vector<int> rs(L.R.begin(), L.R.end()), us(L.U.begin(), L.U.end());
  auto H = [&](Var u, Var v) { return conj(match(t, L, Dir::H, u, v, nullptr), cyc(L.R, u, v)); };
  auto V = [&](Var u, Var v) { return conj(match(t, L, Dir::V, u, v, nullptr), cyc(L.U, u, v)); };
  s.f["DSR"] = forall(X, exactly_one(rs, X));
  s.f["DSU"] = forall(X, exactly_one(us, X));
  s.f["RD"] = cyc(L.R, X, Y);
  s.f["UD"] = cyc(L.U, X, Y);
  s.f["H'"] = H(X, Y);
  s.f["V'"] = V(X, Y);
  s.f["TC'_1"] = forall(X, exists(Y, H(X, Y)));
  s.f["TC'_2"] = forall(X, exists(Y, V(X, Y)));
  s.f["TC'_3"] = commuting(H, V);
  s.f["Tiling'"] = big_and({c["TC_0"], s.f["TC'_1"], s.f["TC'_2"], s.f["TC'_3"], c["TC_4"], s.f["DSR"], s.f["DSU"]});
  s.f["MTiling_X"] = imp(s.f["Tiling'"], exists(X, un(L.Pm[1], X)));
  return s;
}

Suite modal_suite(const TileSet& t) {
  Suite c = classical_suite(t), d = directed_suite(t);
  Letters L = letters_for(t);
  Suite s;
  s.flags = c.flags;
  auto H = [&](Var u, Var v) { return conj(match(t, L, Dir::H, u, v, nullptr), cyc(L.R, u, v)); };
  auto V = [&](Var u, Var v) { return conj(match(t, L, Dir::V, u, v, nullptr), cyc(L.U, u, v)); };
  s.f["TC□_0"] = c["TC_0"];
  s.f["TC□_1"] = d["TC'_1"];
  s.f["TC□_2"] = d["TC'_2"];
  s.f["TC□_3"] = box(forall(X, forall(Y, imp(conj(V(X, Y), exists(X, conj(C(X), H(Y, X)))),
                                              forall(Y, imp(H(X, Y), forall(X, imp(C(X), V(Y, X)))))))));
  s.f["TC□_4"] = c["TC_4"];
  s.f["TC□_5"] = forall(X, dia(C(X)));
  s.f["TC□_6"] = forall(X, forall(Y, imp(V(X, Y), box(V(X, Y)))));
  s.f["TC□_7"] = forall(X, forall(Y, imp(H(X, Y), box(H(X, Y)))));
  s.f["TC□_8"] = forall(X, forall(Y, imp(dia(V(X, Y)), V(X, Y))));
  std::vector<F> parts;
  for (int i = 0; i <= 8; ++i) parts.push_back(s.f["TC□_" + std::to_string(i)]);
  parts.push_back(boxp(d["DSR"]));
  parts.push_back(boxp(d["DSU"]));
  s.f["Tiling□"] = big_and(parts);
  s.f["M□Tiling_X"] = imp(s.f["Tiling□"], exists(X, un(L.Pm[1], X)));
  s.f["M□_G"] = imp(conj(exists(X, G(X)), forall(X, imp(G(X), box(G(X))))), relativize(s.f["M□Tiling_X"], L.G));
  return s;
}

Suite int_suite(const TileSet& t) {
  Suite c = classical_suite(t), d = directed_suite(t);
  Letters L = letters_for(t);
  Suite s;
  s.flags = c.flags;
  auto H = [&](Var u, Var v) { return conj(match(t, L, Dir::H, u, v, nullptr), cyc(L.R, u, v)); };
  auto V = [&](Var u, Var v) { return conj(match(t, L, Dir::V, u, v, nullptr), cyc(L.U, u, v)); };
  s.f["TC^int_0"] = c["TC_0"];
  s.f["TC^int_1"] = d["TC'_1"];
  s.f["TC^int_2"] = d["TC'_2"];
  s.f["TC^int_3"] = forall(X, forall(Y, imp(conj(V(X, Y), exists(X, conj(C(X), H(Y, X)))),
                                            forall(Y, imp(H(X, Y), forall(X, imp(C(X), V(Y, X))))))));
  s.f["TC^int_4"] = c["TC_4"];
  s.f["TC^int_5"] = forall(X, forall(Y, disj(V(X, Y), neg(V(X, Y)))));
  std::vector<F> parts;
  for (int i = 0; i <= 5; ++i) parts.push_back(s.f["TC^int_" + std::to_string(i)]);
  parts.push_back(d["DSR"]);
  parts.push_back(d["DSU"]);
  s.f["Tiling^int"] = big_and(parts);
  s.f["M^intTiling_X"] =
      positivize(imp(s.f["Tiling^int"], disj(exists(X, un(L.Pm[1], X)), exists(X, neg(C(X))))));
  s.f["M^int_G"] = guarded(s.f["M^intTiling_X"], L.G);
  return s;
}

// ---------------------------------------------------------------- simulators

F eps(Var v, Var b) { return neg(exists(b, P(v, b))); }

F tau(int k, Var v, Var b) {
  F inner = k == 0 ? eps(b, v) : tau(k - 1, b, v);
  return exists(b, conj3(neg(G(b)), P(v, b), inner));
}

F tile(int k, Var v) { return tau(k, v, other(v)); }

F gamma(Var v, Var b) { return conj(neg(P(v, v)), exists(b, conj(P(v, b), P(b, b)))); }

F grid(Var v) { return gamma(v, other(v)); }

F pi(int k, Var v, Var b) {
  if (k == 0) return G(v);
  return exists(b, conj(P(v, b), pi(k - 1, b, v)));
}

F path(int k, Var v, Var b) {
  if (k < 2) throw std::invalid_argument("path_k needs k >= 2");
  return big_and({pi(k, v, b), neg(pi(k - 1, v, b)), neg(pi(k - 2, v, b)),
                  forall(b, imp(P(v, b), pi(k - 1, b, v)))});
}

F sigma(int k, int i, Var v, Var b) {
  if (i == 0) return path(k, v, b);
  return exists(b, conj(P(v, b), sigma(k, i - 1, b, v)));
}

F tile_prime(int k, Var v) { return sigma(k + 2, k + 2, v, other(v)); }

F triangle(Var v, Var b, Var c) { return exists(b, exists(c, conj3(P(v, b), P(b, c), P(c, v)))); }

F grid_prime(Var v) {
  if (v == X) return conj(neg(triangle(X, Y, Z)), exists(Y, conj(P(X, Y), triangle(Y, X, Z))));
  if (v == Y) return conj(neg(triangle(Y, X, Z)), exists(X, conj(P(Y, X), triangle(X, Y, Z))));
  if (v == Z) return conj(neg(triangle(Z, X, Y)), exists(X, conj(P(Z, X), triangle(X, Y, Z))));
  throw std::invalid_argument("grid' is defined for x, y, z only");
}

Suite simulators_classical(int kmax) {
  Suite s;
  for (Var v : {X, Y, Z}) {
    std::string a = "(" + var_name(v) + ")";
    Var b = other(v);
    s.f["eps" + a] = eps(v, b);
    s.f["gamma" + a] = gamma(v, b);
    s.f["grid" + a] = grid(v);
    s.f["grid'" + a] = grid_prime(v);
    s.f["triangle" + a] = v == X ? triangle(X, Y, Z) : v == Y ? triangle(Y, X, Z) : triangle(Z, X, Y);
    for (int k = 0; k <= kmax; ++k) {
      std::string i = "_" + std::to_string(k);
      s.f["tau" + i + a] = tau(k, v, b);
      s.f["tile" + i + a] = tile(k, v);
      s.f["pi" + i + a] = pi(k, v, b);
      if (k >= 2) s.f["path" + i + a] = path(k, v, b);
      s.f["tile'" + i + a] = tile_prime(k, v);
      for (int j = 0; j <= k && k >= 2; ++j) s.f["sigma_" + std::to_string(k) + "," + std::to_string(j) + a] = sigma(k, j, v, b);
    }
  }
  return s;
}

// ---------------------------------------------------------------- classical translations

F false_p() { return forall(X, forall(Y, P(X, Y))); }

F positivize(F f) { return replace_bot(f, false_p()); }

F s0_subst(F f, int k) {
  Letters L = letters_for(k);
  Mapping m1;
  for (int i = 0; i <= k; ++i) m1[L.Pm[i]] = variants([&](Var v) { return tile(i, v); });
  Mapping m2;
  m2[L.G] = variants(grid);
  return substitute(substitute(f, m1), m2);
}

F s1_subst(F f, int k) {
  Letters L = letters_for(k);
  Mapping m2;
  m2[L.G] = variants(grid_prime);
  return substitute(substitute(f, directed_to_tile_prime(L, false)), m2);
}

F s0(F f, int k) {
  Letters L = letters_for(k);
  check_letters(f, names(L, false, false, false), "S_0");
  return s0_subst(guarded(f, L.G), k);
}

F s1(F f, int k) {
  Letters L = letters_for(k);
  check_letters(f, names(L, true, false, false), "S_1");
  return s1_subst(guarded(f, L.G), k);
}

// ---------------------------------------------------------------- modal translations

F s2(F f) {
  Mapping m;
  m[letter("P", 2)] = {Template{std::nullopt, {X, Y}, box(disj(Q(X), Q(Y)))}};
  return substitute(f, m);
}

F s3(F f, int k) {
  Letters L = letters_for(k);
  check_letters(f, names(L, true, true, true), "S_3");
  return substitute(f, directed_to_tile_prime(L, false));
}

F s3_prime(F f, int k) {
  Letters L = letters_for(k);
  Mapping m;
  m[L.C] = variants([&](Var v) { return tile_prime(k + 9, v); });
  return substitute(s3(f, k), m);
}

F box_p(F f) {
  F p = prop("p");
  std::unordered_map<F, F> memo;
  auto rec = [&](auto&& self, F g) -> F {
    if (!g->has_box) return g;
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    F out = g;
    switch (g->op) {
      case Op::Box: out = box(imp(p, self(self, g->a))); break;
      case Op::Forall: out = forall(g->var, self(self, g->a)); break;
      case Op::Exists: out = exists(g->var, self(self, g->a)); break;
      case Op::And: out = conj(self(self, g->a), self(self, g->b)); break;
      case Op::Or: out = disj(self(self, g->a), self(self, g->b)); break;
      case Op::Imp: out = imp(self(self, g->a), self(self, g->b)); break;
      default: break;
    }
    memo.emplace(g, out);
    return out;
  };
  return rec(rec, f);
}

F p_relativize(F f) { return imp(prop("p"), box_p(f)); }

F s4(F f) {
  Mapping m;
  m[letter("P", 2)] = {Template{std::nullopt, {X, Y}, box(imp(prop("q"), disj(Q(X), Q(Y))))}};
  m[letter("G", 1)] = {Template{std::nullopt, {X}, box(imp(prop("r"), Q(X)))}};
  return substitute(f, m);
}

F s5(F f) {
  F allq = forall(X, Q(X)), allnq = forall(X, neg(Q(X)));
  Mapping m;
  m[letter("p", 0)] = {Template{std::nullopt, {}, conj(dia(allq), dia(allnq))}};
  m[letter("q", 0)] = {Template{std::nullopt, {}, conj3(exists(X, Q(X)), dia(allnq), neg(dia(allq)))}};
  m[letter("r", 0)] = {Template{std::nullopt, {}, conj3(exists(X, neg(Q(X))), dia(allq), neg(dia(allnq)))}};
  return substitute(f, m);
}

F s5_prime(F f) {
  Mapping m;
  m[letter("p", 0)] = {Template{std::nullopt, {}, conj(dia(dia(top())), dia(box(bot())))}};
  m[letter("q", 0)] = {Template{std::nullopt, {}, box(bot())}};
  m[letter("r", 0)] = {Template{std::nullopt, {}, conj(dia(top()), neg(dia(box(bot()))))}};
  return substitute(f, m);
}

// ---------------------------------------------------------------- intuitionistic translations

F kolmogorov(F f) {
  std::unordered_map<F, F> memo;
  auto nn = [](F g) { return neg(neg(g)); };
  auto rec = [&](auto&& self, F g) -> F {
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    F out;
    switch (g->op) {
      case Op::Bot: out = g; break;
      case Op::Atom: out = nn(g); break;
      case Op::And: out = nn(conj(self(self, g->a), self(self, g->b))); break;
      case Op::Or: out = nn(disj(self(self, g->a), self(self, g->b))); break;
      case Op::Imp: out = nn(imp(self(self, g->a), self(self, g->b))); break;
      case Op::Forall: out = nn(forall(g->var, self(self, g->a))); break;
      case Op::Exists: out = nn(exists(g->var, self(self, g->a))); break;
      case Op::Box: throw std::invalid_argument("K: modal formula");
    }
    memo.emplace(g, out);
    return out;
  };
  return rec(rec, f);
}

F p_guard(F f) {
  int pl = letter("p", 0);
  for (F a : atoms_of(f))
    if (a->letter == pl) throw std::invalid_argument("p_guard: p occurs in the formula");
  F p = atom(pl, {});
  std::unordered_map<F, F> memo;
  auto bp = [&](auto&& self, F g) -> F {
    if (!g->has_bot) return g;
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    F out = g;
    switch (g->op) {
      case Op::Bot: out = p; break;
      case Op::Box: out = box(self(self, g->a)); break;
      case Op::Forall: out = forall(g->var, self(self, g->a)); break;
      case Op::Exists: out = exists(g->var, self(self, g->a)); break;
      case Op::And: out = conj(self(self, g->a), self(self, g->b)); break;
      case Op::Or: out = disj(self(self, g->a), self(self, g->b)); break;
      case Op::Imp: out = imp(self(self, g->a), self(self, g->b)); break;
      default: break;
    }
    memo.emplace(g, out);
    return out;
  };
  std::vector<F> guards;
  for (F s : subformulas(f)) guards.push_back(imp(p, bp(bp, s)));
  return imp(forall_all({X, Y, Z}, big_and(guards)), bp(bp, f));
}

F s6(F f) {
  Mapping m;
  m[letter("P", 2)] = {Template{std::nullopt, {X, Y}, disj(imp(conj(Q(X), Q(Y)), prop("p")), prop("q"))}};
  return substitute(f, m);
}

F s7(F f) {
  Mapping m;
  m[letter("p", 0)] = {Template{std::nullopt, {}, forall(X, Q(X))}};
  m[letter("q", 0)] = {Template{std::nullopt, {}, forall(X, forall(Y, disj(imp(Q(X), Q(Y)), imp(Q(Y), Q(X)))))}};
  return substitute(f, m);
}

F s8(F f, int k) {
  Letters L = letters_for(k);
  check_letters(f, names(L, true, true, false), "S_8");
  Mapping m1 = directed_to_tile_prime(L, true);
  m1[L.C] = variants([&](Var v) { return positivize(tile_prime(k + 9, v)); });
  Mapping m2;
  m2[L.P] = {Template{std::nullopt, {X, Y}, disj(imp(conj(Q(X), Q(Y)), forall(X, Q(X))), forall(X, G(X)))}};
  return substitute(substitute(guarded(f, L.G), m1), m2);
}

F d1() { return exists(X, Pp(X)); }
F d2(Var v) { return imp(d1(), Pp(v)); }
F d3(Var v) { return imp(Pp(v), forall(X, Pp(X))); }

F a_formula(int level, int m, Var v) {
  auto A = [&](int l, int i) { return a_formula(l, i, v); };
  auto B = [&](int l, int i) { return b_formula(l, i, v); };
  switch (level * 10 + m) {
    case 1: return imp(d2(v), disj(d1(), d3(v)));
    case 2: return imp(d3(v), disj(d1(), d2(v)));
    case 11: return imp(conj(A(0, 1), A(0, 2)), disj(B(0, 1), B(0, 2)));
    case 12: return imp(conj(A(0, 1), B(0, 1)), disj(A(0, 2), B(0, 2)));
    case 13: return imp(conj(A(0, 1), B(0, 2)), disj(A(0, 2), B(0, 1)));
    case 21: return imp(A(1, 1), big_or({B(1, 1), A(1, 2), B(1, 2)}));
    case 22: return imp(A(1, 1), big_or({B(1, 1), A(1, 2), B(1, 3)}));
  }
  throw std::invalid_argument("no formula A^" + std::to_string(level) + "_" + std::to_string(m));
}

F b_formula(int level, int m, Var v) {
  auto A = [&](int l, int i) { return a_formula(l, i, v); };
  auto B = [&](int l, int i) { return b_formula(l, i, v); };
  switch (level * 10 + m) {
    case 1: return imp(d1(), disj(d2(v), d3(v)));
    case 2: return imp(big_and({A(0, 1), A(0, 2), B(0, 1)}), big_or({d1(), d2(v), d3(v)}));
    case 11: return imp(conj(A(0, 2), B(0, 1)), disj(A(0, 1), B(0, 2)));
    case 12: return imp(conj(A(0, 2), B(0, 2)), disj(A(0, 1), B(0, 1)));
    case 13: return imp(conj(B(0, 1), B(0, 2)), disj(A(0, 1), A(0, 2)));
    case 21: return imp(B(1, 1), big_or({A(1, 1), B(1, 2), A(1, 2)}));
    case 22: return imp(B(1, 1), big_or({A(1, 1), B(1, 2), A(1, 3)}));
  }
  throw std::invalid_argument("no formula B^" + std::to_string(level) + "_" + std::to_string(m));
}

Suite ab_formulas(Var v) {
  Suite s;
  std::string a = "(" + var_name(v) + ")";
  s.f["D_1"] = d1();
  s.f["D_2" + a] = d2(v);
  s.f["D_3" + a] = d3(v);
  const int counts[3] = {2, 3, 2};
  for (int l = 0; l < 3; ++l)
    for (int m = 1; m <= counts[l]; ++m) {
      std::string idx = "^" + std::to_string(l) + "_" + std::to_string(m) + a;
      s.f["A" + idx] = a_formula(l, m, v);
      s.f["B" + idx] = b_formula(l, m, v);
    }
  return s;
}

F s9(F f) {
  Mapping m;
  m[letter("Q", 1)] = variants([](Var v) { return disj(a_formula(2, 1, v), b_formula(2, 1, v)); });
  m[letter("G", 1)] = variants([](Var v) { return disj(a_formula(2, 2, v), b_formula(2, 2, v)); });
  return substitute(f, m);
}

// ---------------------------------------------------------------- misc

F st(F f) {
  int ql = letter("Q", 1);
  std::unordered_map<F, F> memo;
  auto rec = [&](auto&& self, F g) -> F {
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    F out;
    switch (g->op) {
      case Op::Bot: out = g; break;
      case Op::Atom:
        if (g->letter != ql || g->args[0] == Z) throw std::invalid_argument("ST: only Q over x, y");
        out = P(g->args[0], Z);
        break;
      case Op::And: out = conj(self(self, g->a), self(self, g->b)); break;
      case Op::Or: out = disj(self(self, g->a), self(self, g->b)); break;
      case Op::Imp: out = imp(self(self, g->a), self(self, g->b)); break;
      case Op::Box: out = forall(Z, self(self, g->a)); break;
      case Op::Forall:
      case Op::Exists:
        if (g->var == Z) throw std::invalid_argument("ST: only Q over x, y");
        out = g->op == Op::Forall ? forall(g->var, self(self, g->a)) : exists(g->var, self(self, g->a));
        break;
    }
    memo.emplace(g, out);
    return out;
  };
  return rec(rec, f);
}

Suite misc_formulas() {
  Suite s;
  s.f["InfW"] = big_and({box(exists(X, neg(Q(X)))), box(forall(X, imp(neg(Q(X)), dia(Q(X))))),
                         box(forall(X, imp(Q(X), box(Q(X)))))});
  s.f["bf"] = imp(forall(X, box(Q(X))), box(forall(X, Q(X))));
  s.f["cbf"] = imp(box(forall(X, Q(X))), forall(X, box(Q(X))));
  s.f["cd"] = imp(forall(X, disj(Q(X), prop("q"))), disj(forall(X, Q(X)), prop("q")));
  F sym = forall(X, forall(Y, imp(P(X, Y), P(Y, X))));
  s.f["sib"] = conj(sym, forall(X, neg(P(X, X))));
  s.f["srb"] = conj(sym, forall(X, P(X, X)));
  return s;
}

// ---------------------------------------------------------------- pipelines

const std::vector<std::string>& pipeline_names() {
  static const std::vector<std::string> n{"classical-S0", "classical-S1", "modal-S2", "modal-S3",
                                          "modal-S4S5",   "modal-S4S5p",  "int-S6S7", "int-S8S9"};
  return n;
}

F pipeline_formula(const std::string& name, const TileSet& t) {
  int k = static_cast<int>(t.k());
  if (name == "classical-S0") return s0(classical_suite(t)["Tiling_X"], k);
  if (name == "classical-S1") return s1(directed_suite(t)["MTiling_X"], k);
  if (name == "modal-S2") return s2(directed_suite(t)["MTiling_X"]);
  if (name == "modal-S3") return s2(s3(modal_suite(t)["M□_G"], k));
  if (name == "modal-S4S5") return s5(s4(p_relativize(s3_prime(modal_suite(t)["M□_G"], k))));
  if (name == "modal-S4S5p") return s5_prime(s4(p_relativize(s3_prime(modal_suite(t)["M□_G"], k))));
  if (name == "int-S6S7")
    return s7(s6(p_guard(kolmogorov(positivize(s1(directed_suite(t)["MTiling_X"], k))))));
  if (name == "int-S8S9") return s9(s8(int_suite(t)["M^intTiling_X"], k));
  throw std::invalid_argument("unknown pipeline " + name);
}

int pipeline_var_budget(const std::string& name) {
  if (name == "classical-S0" || name == "classical-S1" || name == "modal-S2" || name == "int-S6S7") return 3;
  if (name == "modal-S3" || name == "modal-S4S5" || name == "modal-S4S5p" || name == "int-S8S9") return 2;
  throw std::invalid_argument("unknown pipeline " + name);
}

std::set<std::string> pipeline_letters(const std::string& name, const TileSet& t) {
  Letters L = letters_for(t);
  if (name == "classical-S0" || name == "classical-S1") return {"P"};
  if (name == "modal-S2") {
    auto s = names(L, true, false, false);
    s.erase("P");
    s.insert("Q");
    return s;
  }
  if (name == "modal-S3") return {"Q", "G", "C"};
  if (name == "modal-S4S5" || name == "modal-S4S5p" || name == "int-S6S7") return {"Q"};
  if (name == "int-S8S9") return {"P'"};
  throw std::invalid_argument("unknown pipeline " + name);
}

}  // namespace tmred
