#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tmred/countermodels.hpp"
#include "tmred/generators.hpp"
#include "tmred/semantics.hpp"

using namespace tmred;

namespace {

int P() { return letter("P", 2); }
int Q() { return letter("Q", 1); }
int Pp() { return letter("P'", 1); }
F Pxy(Var a, Var b) { return atom(P(), {a, b}); }
F Qx(Var v) { return atom(Q(), {v}); }

Structure two_cycle() {
  Structure s = make_classical({"a", "b"});
  Rel& r = s.make_rel(0, P());
  r.add(0, 1);
  r.add(1, 0);
  s.finalize();
  return s;
}

// worlds w -> v over elements {a, b}
Structure two_worlds(Kind kind, bool expanding) {
  Structure s;
  s.kind = kind;
  s.worlds = {"w", "v"};
  s.add_elem("a");
  s.add_elem("b");
  s.fit();
  s.add_edge(0, 1);
  s.set_constant_domain();
  if (expanding) s.dom[0] = Bits(2), s.dom[0].set(0);
  return s;
}

Structure chain(size_t n, bool reflexive) {
  Structure s;
  s.kind = Kind::Modal;
  s.worlds.clear();
  s.add_elem("a");
  for (size_t i = 0; i < n; ++i) s.add_world("w" + std::to_string(i));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + !reflexive; j < n; ++j) s.add_edge(static_cast<int>(i), static_cast<int>(j));
  s.set_constant_domain();
  s.finalize();
  return s;
}

}  // namespace

TEST(Semantics, ClassicalExamples) {
  Structure one = make_classical({"a"});
  one.make_rel(0, P());
  one.finalize();
  EXPECT_FALSE(eval_classical(one, exists(X, Pxy(X, X))));
  Structure c = two_cycle();
  EXPECT_TRUE(eval_classical(c, misc_formulas()["sib"]));
  EXPECT_FALSE(eval_classical(c, forall(X, forall(Y, Pxy(X, Y)))));
  Evaluator ev(c);
  EXPECT_FALSE(ev.valid_at(Pxy(X, Y), 0));
  EXPECT_TRUE(ev.valid_at(top(), 0));
}

TEST(Semantics, ModalExamples) {
  Structure r = chain(1, true);
  r.make_rel(0, Q());
  r.finalize();
  Evaluator er(r);
  EXPECT_EQ(er.eval(box(exists(X, Qx(X))), 0), er.eval(exists(X, Qx(X)), 0));

  Structure s = two_worlds(Kind::Modal, false);
  s.make_rel(0, Q());
  s.make_rel(1, Q()).add(0);
  s.finalize();
  EXPECT_TRUE(eval_modal(s, 0, box(Qx(X)), {0}));
  EXPECT_FALSE(eval_modal(s, 0, Qx(X), {0}));
}

TEST(Semantics, BarcanOnDomains) {
  F bf = misc_formulas()["bf"];
  Structure c = two_worlds(Kind::Modal, false);
  c.make_rel(0, Q());
  c.make_rel(1, Q()).add(0);
  c.finalize();
  EXPECT_TRUE(eval_modal(c, 0, bf));
  Structure e = two_worlds(Kind::Modal, true);
  e.make_rel(0, Q());
  e.make_rel(1, Q()).add(0);
  e.finalize();
  EXPECT_FALSE(eval_modal(e, 0, bf));
}

TEST(Semantics, IntExamples) {
  std::mt19937 rng(2);
  support::FormulaSpec sp{{{P(), 2}}, {X, Y}, false};
  for (int i = 0; i < 100; ++i) {
    F f = support::close_universally(support::random_formula(rng, 4, sp));
    Structure c = two_cycle();
    c.kind = Kind::Int;
    c.finalize();
    ASSERT_EQ(eval_int(c, 0, f), eval_classical(two_cycle(), f)) << render(f);
  }
  Structure s = two_worlds(Kind::Int, false);
  s.make_rel(0, Pp());
  s.make_rel(1, Pp()).add(0);
  s.finalize();
  F pa = atom(Pp(), {X});
  EXPECT_FALSE(eval_int(s, 0, disj(pa, neg(pa)), {0}));
  EXPECT_TRUE(eval_int(s, 1, disj(pa, neg(pa)), {0}));
}

TEST(Semantics, HeredityViolationRejected) {
  Structure s = two_worlds(Kind::Int, false);
  s.make_rel(0, Pp()).add(0);
  s.make_rel(1, Pp());
  EXPECT_THROW(s.finalize(), std::invalid_argument);
  Structure d = two_worlds(Kind::Int, false);
  d.dom[1] = Bits(2);
  d.dom[1].set(1);
  EXPECT_FALSE(audit_structure(d).ok);
}

// forcing is upward closed on random intuitionistic models
TEST(Semantics, IntMonotonicity) {
  std::mt19937 rng(17);
  std::vector<std::pair<int, int>> ls{{P(), 2}, {Q(), 1}, {letter("p", 0), 0}};
  support::FormulaSpec sp{ls, {X, Y}, false};
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Structure s = support::random_int_model(rng, 4, 3, ls);
    ASSERT_TRUE(audit_structure(s).ok);
    F f = support::random_formula(rng, 4, sp);
    Evaluator ev(s);
    for (size_t w = 0; w < s.W(); ++w)
      for (int a : s.dom_list[w])
        for (int b : s.dom_list[w]) {
          std::vector<int> env(kMaxVars, -1);
          env[X] = a;
          env[Y] = b;
          if (!ev.eval(f, static_cast<int>(w), env)) continue;
          for (int v : s.succ[w]) ASSERT_TRUE(ev.eval(f, v, env)) << render(f);
          ++checked;
        }
  }
  EXPECT_GT(checked, 100);
}

TEST(Semantics, BoundedValidity) {
  F em = disj(forall(X, Pxy(X, X)), exists(X, neg(Pxy(X, X))));
  Verdict v = bounded_validity_classical(em, 2);
  EXPECT_TRUE(v.valid);
  EXPECT_FALSE(v.budget_exceeded);
  Verdict c = bounded_validity_classical(exists(X, Pxy(X, X)), 1);
  ASSERT_FALSE(c.valid);
  ASSERT_TRUE(c.countermodel.has_value());
  EXPECT_EQ(c.countermodel->find(0, P())->bits.count(), 0u);
}

TEST(Semantics, StandardTranslation) {
  Structure c = two_cycle();
  auto [l, r] = st_correspondence(c, 0, Qx(X), {1});
  EXPECT_EQ(l, r);
  EXPECT_TRUE(l);  // P(b, a)
  EXPECT_EQ(st(box(Qx(X))), forall(Z, Pxy(X, Z)));
  auto [l2, r2] = st_correspondence(c, 0, box(exists(X, Qx(X))));
  EXPECT_EQ(l2, r2);
  std::mt19937 rng(23);
  support::FormulaSpec sp{{{Q(), 1}}, {X, Y}, true, true};
  for (int i = 0; i < 200; ++i) {
    F f = support::random_formula(rng, 4, sp);
    Structure m = make_classical({"a", "b", "c"});
    Rel& rp = m.make_rel(0, P());
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (rng() % 2) rp.add(a, b);
    m.finalize();
    auto [x, y] = st_correspondence(m, static_cast<int>(rng() % 3), f, {static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)});
    ASSERT_EQ(x, y) << render(f);
  }
}

TEST(Semantics, FrameReports) {
  Structure c3 = chain(3, true);
  FrameReport r = frame_report(c3);
  EXPECT_EQ(r.depth, 3u);
  EXPECT_EQ(r.max_antichain, 1u);
  EXPECT_TRUE(r.is_partial_order);

  Structure star;
  star.kind = Kind::Modal;
  star.worlds.clear();
  star.add_elem("a");
  star.add_world("hub");
  for (int i = 0; i < 5; ++i) star.add_edge(0, star.add_world("l" + std::to_string(i)));
  star.set_constant_domain();
  star.finalize();
  EXPECT_EQ(frame_report(star).max_successors, 5u);
  star.add_edge(0, 0);
  star.finalized = false;
  star.finalize();
  EXPECT_EQ(frame_report(star).max_successors, 6u);

  EXPECT_TRUE(frame_report(f0_frame()).is_partial_order);
}

TEST(Semantics, ModelJsonRoundTrip) {
  std::mt19937 rng(4);
  std::vector<std::pair<int, int>> ls{{P(), 2}, {Q(), 1}, {letter("p", 0), 0}};
  for (int i = 0; i < 20; ++i) {
    Structure s = support::random_int_model(rng, 4, 3, ls);
    Structure t = model_from_json(model_to_json(s));
    EXPECT_EQ(model_to_json(t), model_to_json(s));
    support::FormulaSpec sp{ls, {X, Y}, false};
    F f = support::close_universally(support::random_formula(rng, 4, sp));
    EXPECT_EQ(Evaluator(s).truth_set(f), Evaluator(t).truth_set(f));
  }
}

TEST(Semantics, QuotientMatchesExhaustiveSmall) {
  std::mt19937 rng(31);
  support::FormulaSpec sp{{{Q(), 1}}, {X, Y}, true, true};
  std::vector<std::pair<int, int>> edges{{0, 0}, {0, 1}, {1, 1}};
  for (int i = 0; i < 5; ++i) {
    F f = support::close_universally(support::random_formula(rng, 3, sp));
    Verdict a = exhaustive_over_frame(f, Q(), edges, 2, 4, true);
    Verdict b = quotient_over_frame(f, Q(), edges, 2, true);
    ASSERT_FALSE(a.budget_exceeded);
    EXPECT_EQ(a.valid, b.valid) << render(f);
  }
}
