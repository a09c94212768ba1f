#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"
#include "tmred/generators.hpp"
#include "tmred/tiles.hpp"

using namespace tmred;

namespace {

TileSet tiles_a() { return tile_set(support::load_machine("M_A"), 1); }

bool contains(F whole, F part) {
  auto subs = subformulas(whole);
  return std::find(subs.begin(), subs.end(), part) != subs.end();
}

int Pl() { return letter("P", 2); }
F P(Var a, Var b) { return atom(Pl(), {a, b}); }
F un(int l, Var v) { return atom(l, {v}); }

// G replaced by grid (or grid') as the substitutions do
F with_grid(F f, bool prime) {
  Mapping m;
  for (Var v : {X, Y, Z}) m[letter("G", 1)].push_back(Template{v, {v}, prime ? grid_prime(v) : grid(v)});
  return substitute(f, m);
}

}  // namespace

TEST(Generators, ClassicalSuite) {
  TileSet t = tiles_a();
  Letters L = letters_for(t);
  Suite s = classical_suite(t);
  EXPECT_EQ(s["TC_4"], exists(X, un(L.Pm[0], X)));
  Metrics m = metrics(s["Tiling_X"]);
  EXPECT_EQ(m.nvars(), 3u);
  std::set<std::string> want{"P"};
  for (size_t i = 0; i <= t.k(); ++i) want.insert("P_" + std::to_string(i));
  EXPECT_EQ(m.letters(), want);
  EXPECT_TRUE(s.flags.empty());
}

TEST(Generators, DegenerateHorizontalMatchIsFlagged) {
  TileSet t;
  t.tiles = {{"a", {"1"}, {"2"}, {"u"}, {"u"}}, {"b", {"3"}, {"4"}, {"u"}, {"u"}}, {"c", {"5"}, {"6"}, {"u"}, {"u"}}};
  Suite s = classical_suite(t);
  EXPECT_TRUE(s.flags.count("H:empty"));
  EXPECT_EQ(s["H"], conj(P(X, Y), bot()));
}

TEST(Generators, DirectedSuite) {
  TileSet t = tiles_a();
  Letters L = letters_for(t);
  Suite d = directed_suite(t);
  Suite c = classical_suite(t);
  std::vector<F> alts;
  for (int i = 0; i < 4; ++i) alts.push_back(conj(un(L.R[i], X), un(L.R[(i + 1) % 4], Y)));
  EXPECT_EQ(d["RD"], big_or(alts));
  EXPECT_TRUE(contains(d["RD"], conj(un(L.R[0], X), un(L.R[1], Y))));
  EXPECT_EQ(d["H'"], conj(c["H"], d["RD"]));
  EXPECT_EQ(d["V'"], conj(c["V"], d["UD"]));
  for (auto n : {"TC'_1", "TC'_2", "TC'_3", "DSR", "DSU"}) EXPECT_TRUE(contains(d["Tiling'"], d[n])) << n;
  for (auto n : {"TC_0", "TC_4"}) EXPECT_TRUE(contains(d["Tiling'"], c[n])) << n;
  EXPECT_FALSE(contains(d["Tiling'"], c["TC_1"]));
  EXPECT_LE(metrics(d["MTiling_X"]).nvars(), 3u);
}

TEST(Generators, Simulators) {
  EXPECT_EQ(eps(X, Y), neg(exists(Y, P(X, Y))));
  EXPECT_EQ(triangle(X, Y, Z), exists(Y, exists(Z, conj(conj(P(X, Y), P(Y, Z)), P(Z, X)))));
  for (int k = 2; k < 6; ++k)
    EXPECT_EQ(path(k, X, Y), big_and({pi(k, X, Y), neg(pi(k - 1, X, Y)), neg(pi(k - 2, X, Y)),
                                       forall(Y, imp(P(X, Y), pi(k - 1, Y, X)))}))
        << k;
  for (int k = 0; k < 5; ++k) EXPECT_EQ(tile_prime(k, X), sigma(k + 2, k + 2, X, Y));
  Suite sims = simulators_classical(6);
  for (auto& [name, f] : sims.f) {
    Metrics m = metrics(f);
    for (auto& l : m.letters()) EXPECT_TRUE(l == "P" || l == "G") << name;
    EXPECT_LE(m.nvars(), 3u) << name;
  }
}

TEST(Generators, S0S1) {
  TileSet t = tiles_a();
  int k = static_cast<int>(t.k());
  Letters L = letters_for(t);
  EXPECT_EQ(s0_subst(un(L.Pm[0], X), k), with_grid(tile(0, X), false));
  for (int j = 1; j <= 4; ++j) EXPECT_EQ(s1_subst(un(L.U[j - 1], X), k), with_grid(tile_prime(k + j + 4, X), true));
  for (int i = 1; i <= 4; ++i) EXPECT_EQ(s1_subst(un(L.R[i - 1], Y), k), with_grid(tile_prime(k + i, Y), true));
  F f = s1(directed_suite(t)["MTiling_X"], k);
  Metrics m = metrics(f);
  EXPECT_EQ(m.letters(), std::set<std::string>{"P"});
  EXPECT_EQ(m.vars, (std::set<Var>{X, Y, Z}));
  EXPECT_EQ(metrics(s0(classical_suite(t)["Tiling_X"], k)).letters(), std::set<std::string>{"P"});
}

TEST(Generators, Positivize) {
  EXPECT_EQ(positivize(bot()), forall(X, forall(Y, P(X, Y))));
  EXPECT_EQ(false_p(), forall(X, forall(Y, P(X, Y))));
  F pos = exists(X, P(X, X));
  EXPECT_EQ(positivize(pos), pos);
  F nn = neg(neg(P(X, X)));
  EXPECT_EQ(positivize(nn), imp(imp(P(X, X), false_p()), false_p()));
  EXPECT_TRUE(metrics(positivize(nn)).positive);
}

TEST(Generators, ModalSuite) {
  TileSet t = tiles_a();
  Letters L = letters_for(t);
  Suite m = modal_suite(t);
  Suite d = directed_suite(t);
  EXPECT_EQ(m["TC□_5"], forall(X, dia(un(L.C, X))));
  EXPECT_EQ(m["TC□_8"], forall(X, forall(Y, imp(dia(d["V'"]), d["V'"]))));
  EXPECT_EQ(metrics(m["M□Tiling_X"]).nvars(), 2u);
  EXPECT_EQ(metrics(m["M□_G"]).nvars(), 2u);
}

TEST(Generators, ModalTranslations) {
  int p = letter("p", 0);
  F psi = exists(X, P(X, X));
  EXPECT_EQ(box_p(box(psi)), box(imp(atom(p, {}), box_p(psi))));
  EXPECT_EQ(s5_prime(atom(letter("q", 0), {})), box(bot()));
  TileSet t = tiles_a();
  F f = pipeline_formula("modal-S4S5", t);
  EXPECT_EQ(metrics(f).letters(), std::set<std::string>{"Q"});
  EXPECT_EQ(metrics(f).nvars(), 2u);
  EXPECT_EQ(metrics(s2(P(X, Y))).letters(), std::set<std::string>{"Q"});
}

TEST(Generators, Kolmogorov) {
  EXPECT_EQ(kolmogorov(P(X, Y)), neg(neg(P(X, Y))));
  EXPECT_EQ(kolmogorov(bot()), bot());
  F phi = P(X, X);
  EXPECT_EQ(kolmogorov(forall(X, phi)), neg(neg(forall(X, kolmogorov(phi)))));
}

TEST(Generators, PGuard) {
  int p = letter("p", 0);
  F pa = atom(p, {});
  EXPECT_EQ(p_guard(bot()), imp(forall(X, forall(Y, forall(Z, imp(pa, pa)))), pa));
  TileSet t = tiles_a();
  F f = p_guard(classical_suite(t)["Tiling_X"]);
  EXPECT_TRUE(metrics(f).positive);
  EXPECT_THROW(p_guard(pa), std::invalid_argument);
}

TEST(Generators, IntFamily) {
  int Pp = letter("P'", 1);
  EXPECT_EQ(d3(X), imp(un(Pp, X), forall(X, un(Pp, X))));
  EXPECT_EQ(d1(), exists(X, un(Pp, X)));
  EXPECT_EQ(a_formula(1, 1, X),
            imp(conj(a_formula(0, 1, X), a_formula(0, 2, X)), disj(b_formula(0, 1, X), b_formula(0, 2, X))));
  TileSet t = tiles_a();
  F f = pipeline_formula("int-S8S9", t);
  Metrics m = metrics(f);
  EXPECT_TRUE(m.positive);
  EXPECT_EQ(m.letters(), std::set<std::string>{"P'"});
  EXPECT_EQ(m.nvars(), 2u);
}

TEST(Generators, StAndMisc) {
  int Q = letter("Q", 1);
  EXPECT_EQ(st(box(un(Q, X))), forall(Z, P(X, Z)));
  EXPECT_EQ(st(un(Q, Y)), P(Y, Z));
  Suite m = misc_formulas();
  EXPECT_EQ(m["sib"], conj(forall(X, forall(Y, imp(P(X, Y), P(Y, X)))), forall(X, neg(P(X, X)))));
  EXPECT_TRUE(contains(m["InfW"], box(forall(X, imp(un(Q, X), box(un(Q, X)))))));
}

TEST(Generators, PipelineBudgets) {
  TileSet t = tiles_a();
  for (auto& name : pipeline_names()) {
    F f = pipeline_formula(name, t);
    Metrics m = metrics(f);
    EXPECT_LE(static_cast<int>(m.nvars()), pipeline_var_budget(name)) << name;
    auto allowed = pipeline_letters(name, t);
    for (auto& l : m.letters()) EXPECT_TRUE(allowed.count(l)) << name << " " << l;
  }
  EXPECT_THROW(pipeline_formula("nope", t), std::invalid_argument);
}
