#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tmred {

enum class Op : uint8_t { Bot, Atom, And, Or, Imp, Box, Forall, Exists };

using Var = uint8_t;
constexpr int kMaxVars = 32;

struct Node;
using F = const Node*;

// Interned, immutable. Equal pointers iff structurally equal.
struct Node {
  Op op;
  int letter = -1;
  std::vector<Var> args;
  F a = nullptr, b = nullptr;
  Var var = 0;
  uint32_t id = 0;
  uint32_t fv = 0;       // free variable mask
  uint32_t vars = 0;     // every variable occurring, bound or free
  bool has_bot = false;
  bool has_box = false;
  int mdepth = 0;
  uint64_t size = 1;     // tree size, saturating
};

// letters and variables are process-global
int letter(const std::string& name, int arity);
int find_letter(const std::string& name);
const std::string& letter_name(int id);
int letter_arity(int id);
Var var(const std::string& name);
const std::string& var_name(Var v);
inline const Var X = 0, Y = 1, Z = 2;

F bot();
F atom(int letter, std::vector<Var> args);
F atom(const std::string& name, std::vector<Var> args);
F conj(F a, F b);
F disj(F a, F b);
F imp(F a, F b);
F box(F a);
F forall(Var v, F a);
F exists(Var v, F a);

F neg(F a);
F top();
F iff(F a, F b);
F dia(F a);
F boxp(F a);
// balanced; empty conjunction is top, empty disjunction is bot
F big_and(const std::vector<F>& fs);
F big_or(const std::vector<F>& fs);
F forall_all(std::vector<Var> vs, F a);

struct Metrics {
  std::set<Var> free_vars;
  std::set<Var> vars;
  std::map<int, std::set<std::string>> letters_by_arity;
  bool positive = true;
  bool modality_free = true;
  int modal_depth = 0;
  size_t nvars() const { return vars.size(); }
  std::set<std::string> letters() const;
};
Metrics metrics(F f);

struct Template {
  std::optional<Var> key;   // chosen when the atom's first argument is key
  std::vector<Var> params;
  F body;
};
using Mapping = std::map<int, std::vector<Template>>;

class CaptureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// simultaneous variable renaming, binders renamed within pool when needed
F rename(F f, const std::map<Var, Var>& sigma, const std::vector<Var>& pool = {X, Y, Z});
F substitute(F f, const Mapping& m, const std::vector<Var>& pool = {X, Y, Z});
F relativize(F f, int guard);
F replace_bot(F f, F repl);
// post-order, deduplicated
std::vector<F> subformulas(F f);
std::vector<F> atoms_of(F f);

std::string render(F f);
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, size_t pos);
  size_t pos;
};
F parse(const std::string& text);

// pretty infix, for humans only
std::string pretty(F f);

}  // namespace tmred
