#include <gtest/gtest.h>

#include "support.hpp"
#include "tmred/countermodels.hpp"
#include "tmred/generators.hpp"

using namespace tmred;

namespace {

void expect_all_hold(const std::vector<Assertion>& as) {
  EXPECT_FALSE(as.empty());
  for (auto& a : as) EXPECT_TRUE(a.holds) << a.name << ": " << a.witness;
}

const Assertion* find_assertion(const std::vector<Assertion>& as, const std::string& needle) {
  for (auto& a : as)
    if (a.name.find(needle) != std::string::npos) return &a;
  return nullptr;
}

}  // namespace

TEST(Countermodels, GridSpecRows) {
  GridSpec g = grid_spec(support::load_machine("M_F"), 0);
  EXPECT_EQ(g.m, 2u);
  EXPECT_EQ(g.r, 2u);
  EXPECT_EQ(g.halted_in, "hy");
  GridSpec a = grid_spec(support::load_machine("M_A"), 0);
  EXPECT_EQ(a.m, 3u);
  EXPECT_EQ(a.halted_in, "hx");
  EXPECT_EQ(grid_spec(support::load_machine("M_F"), 2).r, 3u);
  EXPECT_THROW(grid_spec(support::load_machine("M_C"), 0), std::runtime_error);
}

TEST(Countermodels, GridModel) {
  GridSpec g = grid_spec(support::load_machine("M_F"), 0);
  Structure s = grid_model(g);
  EXPECT_EQ(s.N(), (g.r + 3) * (g.r + 3));
  Suite c = classical_suite(g.tiles);
  for (auto n : {"TC_0", "TC_1", "TC_2", "TC_4"}) EXPECT_TRUE(eval_classical(s, c[n])) << n;
  EXPECT_FALSE(eval_classical(s, exists(X, atom(letters_for(g.tiles).Pm[1], {X}))));
  EXPECT_THROW(grid_model(g, 1), std::length_error);
}

TEST(Countermodels, SibGridModel) {
  GridSpec g = grid_spec(support::load_machine("M_F"), 0);
  Structure s = sib_grid_model(g);
  EXPECT_EQ(s.N(), (g.r + 5) * (g.r + 5));
  EXPECT_TRUE(eval_classical(s, misc_formulas()["sib"]));
  EXPECT_TRUE(is_bipartite(s));
  Letters L = letters_for(g.tiles);
  const Rel* r1 = s.find(0, L.R[0]);
  size_t side = g.r + 5;
  for (size_t j = 0; j < side; ++j)
    for (size_t i = 0; i < side; ++i) EXPECT_EQ(r1->has(static_cast<int>(j * side + i)), i % 4 == 0);
  EXPECT_FALSE(eval_classical(s, directed_suite(g.tiles)["MTiling_X"]));
}

TEST(Countermodels, CompactSibRefutes) {
  GridSpec g = grid_spec(support::load_machine("M_F"), 0);
  Structure s = compact_sib_grid_model(g);
  EXPECT_EQ(s.N(), 36u);
  expect_all_hold(check_assertions(s));
  EXPECT_FALSE(eval_classical(s, directed_suite(g.tiles)["MTiling_X"]));
}

TEST(Countermodels, S0Extension) {
  GridSpec g = grid_spec(support::load_machine("M_F"), 0);
  Structure grid = grid_model(g);
  Structure x = s0_extension(grid, g.tiles.k());
  expect_all_hold(check_assertions(x));
  // every element gets a chain e_0..e_m plus e_* (m its tile index), so d + sum (m_a + 2)
  Letters L = letters_for(g.tiles);
  size_t want = grid.N();
  for (size_t a = 0; a < grid.N(); ++a)
    for (size_t t = 0; t < g.tiles.size(); ++t)
      if (grid.find(0, L.Pm[t])->has(static_cast<int>(a))) want += t + 2;
  EXPECT_EQ(x.N(), want);
}

TEST(Countermodels, S1Extension) {
  GridSpec g = grid_spec(support::load_machine("M_F"), 0);
  Structure sib = compact_sib_grid_model(g);
  Structure x = s1_extension(sib, g.tiles.k());
  auto as = check_assertions(x);
  expect_all_hold(as);
  EXPECT_TRUE(eval_classical(x, misc_formulas()["sib"]));
  Evaluator ev(x);
  int c0 = x.elem_index("c0@" + sib.elems[0]);
  if (c0 >= 0) EXPECT_FALSE(ev.eval1(grid_prime(X), 0, X, c0));
}

TEST(Countermodels, StarOnFourByFour) {
  Structure c = support::grid_graph(4, 4);
  Structure s = star_modal_model(c, 1);
  EXPECT_EQ(s.W(), 258u);
  expect_all_hold(check_assertions(s, &c));
  Structure r = star_modal_model(c, 0, true);
  expect_all_hold(check_assertions(r, &c));
  // irreflexive source: some leaf refutes Q(a) for each (a, a)
  Evaluator ev(s);
  int Q = letter("Q", 1);
  for (int a = 0; a < 16; ++a) EXPECT_FALSE(ev.eval1(box(atom(Q, {X})), 0, X, a));
}

TEST(Countermodels, LayerVariants) {
  TileSet t = toy_tileset();
  Structure src = cycle_source(t);
  for (auto [v, d] : {std::pair{LayerVariant::Plain, 3u}, {LayerVariant::S5Tails, 4u}, {LayerVariant::S5pLoop, 3u}}) {
    Structure m = gl_grz_layer_model(src, t.k(), v, false);
    EXPECT_EQ(frame_report(m).depth, d);
  }
  EXPECT_THROW(gl_grz_layer_model(src, t.k(), LayerVariant::S5pLoop, true), std::invalid_argument);
}

TEST(Countermodels, IntRelativizedBasics) {
  Structure c = support::grid_graph(3, 2);
  Structure s = int_relativized_model(c);
  EXPECT_TRUE(audit_structure(s).ok);
  EXPECT_FALSE(eval_int(s, 0, atom(letter("q", 0), {})));
  auto as = check_assertions(s, &c);
  const Assertion* real = find_assertion(as, "S_7");
  ASSERT_NE(real, nullptr);
  EXPECT_TRUE(real->holds) << real->witness;
}

TEST(Countermodels, IntTilingAndTwoLayer) {
  TileSet t = toy_tileset();
  Structure src = cycle_source(t);
  Structure it = int_tiling_model(src);
  expect_all_hold(check_assertions(it, &src));
  Structure two = int_two_layer_model(src, t.k());
  EXPECT_TRUE(audit_structure(two).ok);
  expect_all_hold(check_assertions(two, &src));
}

TEST(Countermodels, F0) {
  EXPECT_EQ(f0_worlds().size(), 18u);
  EXPECT_TRUE(frame_report(f0_frame()).is_partial_order);
  for (size_t d = 3; d <= 4; ++d) expect_all_hold(check_assertions(a_suitable_model(d, 0, 1)));
  EXPECT_THROW(a_suitable_model(3, 1, 1), std::invalid_argument);
  Structure s = a_suitable_model(3, 0, 2);
  Evaluator ev(s);
  F b22 = b_formula(2, 2, X);
  int beta = s.world_index("b2_2");
  for (size_t w = 0; w < s.W(); ++w) {
    bool sees = std::binary_search(s.succ[w].begin(), s.succ[w].end(), beta);
    EXPECT_EQ(!ev.eval1(b22, static_cast<int>(w), X, 0), sees) << s.worlds[w];
  }
}

TEST(Countermodels, JsonCarriesMeta) {
  GridSpec g = grid_spec(support::load_machine("M_F"), 0);
  Structure s = compact_sib_grid_model(g);
  auto j = model_to_json(s);
  EXPECT_EQ(j["meta"]["construction"], "sib-grid");
  Structure back = model_from_json(j);
  expect_all_hold(check_assertions(back));
}
