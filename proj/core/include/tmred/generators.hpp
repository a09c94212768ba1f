#pragma once
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tmred/formula.hpp"
#include "tmred/tiles.hpp"

namespace tmred {

// letter ids for a tile set with tiles t_0..t_k
struct Letters {
  int k = 0;
  int P, G, Q, C, p, q, r, Pp;
  std::vector<int> Pm;
  std::array<int, 4> R, U;
};
Letters letters_for(int k);
inline Letters letters_for(const TileSet& t) { return letters_for(static_cast<int>(t.k())); }

struct Suite {
  std::map<std::string, F> f;
  std::set<std::string> flags;  // degenerate-input findings, e.g. "H:empty"
  F operator[](const std::string& name) const;
  bool has(const std::string& name) const { return f.count(name) != 0; }
};

Suite classical_suite(const TileSet& t);
Suite directed_suite(const TileSet& t);
Suite modal_suite(const TileSet& t);
Suite int_suite(const TileSet& t);

// simulating formulas; v is the free variable, b (and c) the bound ones
F eps(Var v, Var b);
F tau(int k, Var v, Var b);
F tile(int k, Var v);
F gamma(Var v, Var b);
F grid(Var v);
F pi(int k, Var v, Var b);
F path(int k, Var v, Var b);
F sigma(int k, int i, Var v, Var b);
F tile_prime(int k, Var v);
F triangle(Var v, Var b, Var c);
F grid_prime(Var v);
// keys like "tile'_3(y)"; indices 0..kmax
Suite simulators_classical(int kmax);

F positivize(F f);
F false_p();

// substitution steps without the G-guard
F s0_subst(F f, int k);
F s1_subst(F f, int k);
// ∃xG(x) → f_G, then the substitution
F s0(F f, int k);
F s1(F f, int k);

F s2(F f);
F s3(F f, int k);
F s3_prime(F f, int k);
F box_p(F f);
// p → (f)_p
F p_relativize(F f);
F s4(F f);
F s5(F f);
F s5_prime(F f);

F kolmogorov(F f);
F p_guard(F f);
F s6(F f);
F s7(F f);
F s8(F f, int k);
F s9(F f);

F d1();
F d2(Var v);
F d3(Var v);
// level 0..2, index from 1
F a_formula(int level, int m, Var v);
F b_formula(int level, int m, Var v);
Suite ab_formulas(Var v = X);

F st(F f);
Suite misc_formulas();

const std::vector<std::string>& pipeline_names();
// final formula of a pipeline; throws std::invalid_argument for unknown names
F pipeline_formula(const std::string& pipeline, const TileSet& t);
int pipeline_var_budget(const std::string& pipeline);
std::set<std::string> pipeline_letters(const std::string& pipeline, const TileSet& t);

}  // namespace tmred
