#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tmred/formula.hpp"
#include "tmred/semantics.hpp"

using namespace tmred;

namespace {

int P() { return letter("P", 2); }
int Q() { return letter("Q", 1); }
int G() { return letter("G", 1); }
F Pxy(Var a, Var b) { return atom(P(), {a, b}); }

size_t walk_count(F f, std::set<F>& seen) {
  if (!f || !seen.insert(f).second) return 0;
  return 1 + walk_count(f->a, seen) + walk_count(f->b, seen);
}

}  // namespace

TEST(Formula, Metrics) {
  Metrics m = metrics(forall(X, forall(Y, Pxy(X, Y))));
  EXPECT_EQ(m.nvars(), 2u);
  EXPECT_TRUE(m.positive);
  EXPECT_TRUE(m.modality_free);
  EXPECT_TRUE(m.free_vars.empty());
  // alternating binders reuse x
  F phi = exists(X, conj(Pxy(X, X), exists(Y, conj(Pxy(X, Y), exists(X, Pxy(Y, X))))));
  EXPECT_EQ(metrics(phi).nvars(), 2u);
  Metrics n = metrics(box(imp(Pxy(X, Y), bot())));
  EXPECT_FALSE(n.positive);
  EXPECT_FALSE(n.modality_free);
  EXPECT_EQ(n.modal_depth, 1);
  EXPECT_EQ(n.free_vars, (std::set<Var>{X, Y}));
}

TEST(Formula, SubstituteBoxTemplate) {
  Mapping m;
  m[P()] = {Template{std::nullopt, {X, Y}, box(disj(atom(Q(), {X}), atom(Q(), {Y})))}};
  F got = substitute(forall(X, exists(Y, Pxy(X, Y))), m);
  EXPECT_EQ(got, forall(X, exists(Y, box(disj(atom(Q(), {X}), atom(Q(), {Y}))))));
  F phi = forall(X, Pxy(X, X));
  EXPECT_EQ(substitute(phi, Mapping{}), phi);
  Mapping tilde;
  tilde[P()] = {Template{std::nullopt, {X, Y}, neg(Pxy(X, Y))}};
  EXPECT_EQ(substitute(phi, tilde), forall(X, neg(Pxy(X, X))));
}

TEST(Formula, Relativize) {
  EXPECT_EQ(relativize(exists(X, Pxy(X, X)), G()), exists(X, conj(atom(G(), {X}), Pxy(X, X))));
  EXPECT_EQ(relativize(Pxy(X, Y), G()), Pxy(X, Y));
  int H = letter("H", 1);
  F f = forall(X, Pxy(X, X));
  EXPECT_EQ(relativize(relativize(f, G()), H),
            forall(X, imp(atom(H, {X}), imp(atom(G(), {X}), Pxy(X, X)))));
}

TEST(Formula, ReplaceBot) {
  F fls = forall(X, forall(Y, Pxy(X, Y)));
  EXPECT_EQ(replace_bot(neg(Pxy(X, X)), fls), imp(Pxy(X, X), fls));
  int p = letter("p", 0);
  EXPECT_EQ(replace_bot(bot(), atom(p, {})), atom(p, {}));
  F pos = exists(X, Pxy(X, X));
  EXPECT_EQ(replace_bot(pos, fls), pos);
  F any = imp(neg(Pxy(X, Y)), bot());
  EXPECT_EQ(replace_bot(any, bot()), any);
  EXPECT_TRUE(metrics(replace_bot(any, fls)).positive);
}

TEST(Formula, Codec) {
  EXPECT_EQ(render(forall(X, imp(atom(G(), {X}), bot()))), "(forall x (imp (atom G x) (bot)))");
  EXPECT_EQ(parse("(not (atom P x x))"), imp(Pxy(X, X), bot()));
  EXPECT_EQ(parse("(dia (top))"), dia(top()));
  EXPECT_THROW(parse("(and (bot)"), ParseError);
  EXPECT_THROW(parse("(atom P x)"), std::exception);
}

TEST(Formula, RoundTripRandom) {
  std::mt19937 rng(11);
  support::FormulaSpec sp{{{P(), 2}, {Q(), 1}, {letter("p", 0), 0}}, {X, Y, Z}, true};
  for (int i = 0; i < 1000; ++i) {
    F f = support::random_formula(rng, 5, sp);
    ASSERT_EQ(parse(render(f)), f) << render(f);
  }
}

TEST(Formula, SubformulasMatchWalker) {
  std::mt19937 rng(3);
  support::FormulaSpec sp{{{P(), 2}, {Q(), 1}}, {X, Y}, true};
  for (int i = 0; i < 200; ++i) {
    F f = support::random_formula(rng, 5, sp);
    std::set<F> seen;
    EXPECT_EQ(subformulas(f).size(), walk_count(f, seen));
  }
}

// G interpreted as the whole domain makes relativization invisible
TEST(Formula, RelativizeFullGuardExhaustive) {
  std::mt19937 rng(5);
  support::FormulaSpec sp{{{P(), 2}, {Q(), 1}}, {X, Y}, false};
  for (int i = 0; i < 60; ++i) {
    F f = support::close_universally(support::random_formula(rng, 4, sp));
    F g = relativize(f, G());
    for (size_t n = 1; n <= 3; ++n)
      for (unsigned code = 0; code < (1u << (n * n + n)); code += 1 + (n == 3) * 13) {
        std::vector<std::string> d;
        for (size_t e = 0; e < n; ++e) d.push_back("e" + std::to_string(e));
        Structure s = make_classical(d);
        Rel& rp = s.make_rel(0, P());
        Rel& rq = s.make_rel(0, Q());
        Rel& rg = s.make_rel(0, G());
        size_t b = 0;
        for (size_t a = 0; a < n; ++a)
          for (size_t c = 0; c < n; ++c)
            if (code >> b++ & 1) rp.add(static_cast<int>(a), static_cast<int>(c));
        for (size_t a = 0; a < n; ++a) {
          if (code >> b++ & 1) rq.add(static_cast<int>(a));
          rg.add(static_cast<int>(a));
        }
        s.finalize();
        ASSERT_EQ(eval_classical(s, f), eval_classical(s, g));
      }
  }
}

TEST(Formula, SubstitutionSoundness) {
  // P realized pointwise by the template Q(x) ∧ Q(y)
  std::mt19937 rng(9);
  support::FormulaSpec sp{{{P(), 2}}, {X, Y}, false};
  Mapping m;
  m[P()] = {Template{std::nullopt, {X, Y}, conj(atom(Q(), {X}), atom(Q(), {Y}))}};
  for (int i = 0; i < 300; ++i) {
    F f = support::close_universally(support::random_formula(rng, 4, sp));
    F g = substitute(f, m);
    size_t n = 1 + rng() % 3;
    std::vector<std::string> d;
    for (size_t e = 0; e < n; ++e) d.push_back("e" + std::to_string(e));
    Structure s = make_classical(d);
    Rel& rq = s.make_rel(0, Q());
    Rel& rp = s.make_rel(0, P());
    for (size_t a = 0; a < n; ++a)
      if (rng() % 2) rq.add(static_cast<int>(a));
    for (size_t a = 0; a < n; ++a)
      for (size_t c = 0; c < n; ++c)
        if (rq.has(static_cast<int>(a)) && rq.has(static_cast<int>(c))) rp.add(static_cast<int>(a), static_cast<int>(c));
    s.finalize();
    ASSERT_EQ(eval_classical(s, f), eval_classical(s, g)) << render(f);
  }
}
