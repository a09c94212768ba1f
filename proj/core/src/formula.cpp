#include "tmred/formula.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <unordered_set>

namespace tmred {

namespace {

struct Key {
  Op op;
  int letter;
  std::vector<Var> args;
  uint32_t a, b;
  Var var;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  size_t operator()(const Key& k) const {
    uint64_t h = static_cast<uint64_t>(k.op) * 0x9E3779B97F4A7C15ull;
    auto mix = [&](uint64_t v) { h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2); };
    mix(static_cast<uint64_t>(k.letter + 1));
    for (Var v : k.args) mix(v);
    mix(k.a);
    mix(k.b);
    mix(k.var);
    return h;
  }
};

struct Registry {
  std::mutex mu;
  std::deque<Node> nodes;
  std::unordered_map<Key, const Node*, KeyHash> table;
  std::deque<std::string> letter_names;
  std::vector<int> letter_arities;
  std::unordered_map<std::string, int> letter_ids;
  std::deque<std::string> var_names;
  std::unordered_map<std::string, Var> var_ids;

  Registry() {
    for (auto n : {"x", "y", "z"}) {
      var_ids[n] = static_cast<Var>(var_names.size());
      var_names.push_back(n);
    }
  }
};

Registry& reg() {
  static Registry r;
  return r;
}

uint64_t sat_add(uint64_t a, uint64_t b) {
  uint64_t c = a + b;
  return c < a || c > (1ull << 62) ? (1ull << 62) : c;
}

F make(Op op, int letter, std::vector<Var> args, F a, F b, Var v) {
  Registry& r = reg();
  Key key{op, letter, args, a ? a->id : 0u, b ? b->id : 0u, v};
  std::lock_guard lock(r.mu);
  if (auto it = r.table.find(key); it != r.table.end()) return it->second;
  Node& n = r.nodes.emplace_back();
  n.op = op;
  n.letter = letter;
  n.args = std::move(args);
  n.a = a;
  n.b = b;
  n.var = v;
  n.id = static_cast<uint32_t>(r.nodes.size());
  switch (op) {
    case Op::Bot: n.has_bot = true; break;
    case Op::Atom:
      for (Var x : n.args) n.fv |= 1u << x;
      n.vars = n.fv;
      break;
    case Op::And:
    case Op::Or:
    case Op::Imp:
      n.fv = a->fv | b->fv;
      n.vars = a->vars | b->vars;
      n.has_bot = a->has_bot || b->has_bot;
      n.has_box = a->has_box || b->has_box;
      n.mdepth = std::max(a->mdepth, b->mdepth);
      n.size = sat_add(sat_add(a->size, b->size), 1);
      break;
    case Op::Box:
      n.fv = a->fv;
      n.vars = a->vars;
      n.has_bot = a->has_bot;
      n.has_box = true;
      n.mdepth = a->mdepth + 1;
      n.size = sat_add(a->size, 1);
      break;
    case Op::Forall:
    case Op::Exists:
      n.fv = a->fv & ~(1u << v);
      n.vars = a->vars | (1u << v);
      n.has_bot = a->has_bot;
      n.has_box = a->has_box;
      n.mdepth = a->mdepth;
      n.size = sat_add(a->size, 1);
      break;
  }
  r.table.emplace(std::move(key), &n);
  return &n;
}

}  // namespace

int letter(const std::string& name, int arity) {
  Registry& r = reg();
  std::lock_guard lock(r.mu);
  if (auto it = r.letter_ids.find(name); it != r.letter_ids.end()) {
    if (r.letter_arities[it->second] != arity)
      throw std::invalid_argument("letter " + name + " used with arity " + std::to_string(arity) + " and " +
                                  std::to_string(r.letter_arities[it->second]));
    return it->second;
  }
  if (arity < 0 || arity > 2) throw std::invalid_argument("arity must be 0, 1 or 2");
  int id = static_cast<int>(r.letter_names.size());
  r.letter_names.push_back(name);
  r.letter_arities.push_back(arity);
  r.letter_ids[name] = id;
  return id;
}

int find_letter(const std::string& name) {
  Registry& r = reg();
  std::lock_guard lock(r.mu);
  auto it = r.letter_ids.find(name);
  return it == r.letter_ids.end() ? -1 : it->second;
}

const std::string& letter_name(int id) {
  Registry& r = reg();
  std::lock_guard lock(r.mu);
  return r.letter_names.at(id);
}

int letter_arity(int id) {
  Registry& r = reg();
  std::lock_guard lock(r.mu);
  return r.letter_arities.at(id);
}

Var var(const std::string& name) {
  Registry& r = reg();
  std::lock_guard lock(r.mu);
  if (auto it = r.var_ids.find(name); it != r.var_ids.end()) return it->second;
  if (r.var_names.size() >= kMaxVars) throw std::invalid_argument("too many variables");
  Var v = static_cast<Var>(r.var_names.size());
  r.var_names.push_back(name);
  r.var_ids[name] = v;
  return v;
}

const std::string& var_name(Var v) {
  Registry& r = reg();
  std::lock_guard lock(r.mu);
  return r.var_names.at(v);
}

F bot() { return make(Op::Bot, -1, {}, nullptr, nullptr, 0); }
F atom(int l, std::vector<Var> args) {
  if (static_cast<int>(args.size()) != letter_arity(l))
    throw std::invalid_argument("arity mismatch for " + letter_name(l));
  return make(Op::Atom, l, std::move(args), nullptr, nullptr, 0);
}
F atom(const std::string& name, std::vector<Var> args) {
  int ar = static_cast<int>(args.size());
  return atom(letter(name, ar), std::move(args));
}
F conj(F a, F b) { return make(Op::And, -1, {}, a, b, 0); }
F disj(F a, F b) { return make(Op::Or, -1, {}, a, b, 0); }
F imp(F a, F b) { return make(Op::Imp, -1, {}, a, b, 0); }
F box(F a) { return make(Op::Box, -1, {}, a, nullptr, 0); }
F forall(Var v, F a) { return make(Op::Forall, -1, {}, a, nullptr, v); }
F exists(Var v, F a) { return make(Op::Exists, -1, {}, a, nullptr, v); }

F neg(F a) { return imp(a, bot()); }
F top() { return neg(bot()); }
F iff(F a, F b) { return conj(imp(a, b), imp(b, a)); }
F dia(F a) { return neg(box(neg(a))); }
F boxp(F a) { return conj(a, box(a)); }

namespace {
F balanced(const std::vector<F>& fs, size_t lo, size_t hi, bool is_and) {
  if (hi - lo == 1) return fs[lo];
  size_t mid = lo + (hi - lo) / 2;
  F l = balanced(fs, lo, mid, is_and), r = balanced(fs, mid, hi, is_and);
  return is_and ? conj(l, r) : disj(l, r);
}
}  // namespace

F big_and(const std::vector<F>& fs) { return fs.empty() ? top() : balanced(fs, 0, fs.size(), true); }
F big_or(const std::vector<F>& fs) { return fs.empty() ? bot() : balanced(fs, 0, fs.size(), false); }

F forall_all(std::vector<Var> vs, F a) {
  for (size_t i = vs.size(); i-- > 0;) a = forall(vs[i], a);
  return a;
}

std::set<std::string> Metrics::letters() const {
  std::set<std::string> out;
  for (auto& [ar, s] : letters_by_arity) out.insert(s.begin(), s.end());
  return out;
}

namespace {
template <class Fn>
void visit_dag(F f, Fn&& fn) {
  std::unordered_set<F> seen;
  std::vector<F> stack{f};
  while (!stack.empty()) {
    F g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    fn(g);
    if (g->a) stack.push_back(g->a);
    if (g->b) stack.push_back(g->b);
  }
}
}  // namespace

Metrics metrics(F f) {
  Metrics m;
  for (int v = 0; v < kMaxVars; ++v) {
    if (f->fv >> v & 1) m.free_vars.insert(static_cast<Var>(v));
    if (f->vars >> v & 1) m.vars.insert(static_cast<Var>(v));
  }
  visit_dag(f, [&](F g) {
    if (g->op == Op::Atom) m.letters_by_arity[letter_arity(g->letter)].insert(letter_name(g->letter));
  });
  m.positive = !f->has_bot;
  m.modality_free = !f->has_box;
  m.modal_depth = f->mdepth;
  return m;
}

namespace {

F rebuild(F f, F a, F b, Var v) {
  switch (f->op) {
    case Op::And: return conj(a, b);
    case Op::Or: return disj(a, b);
    case Op::Imp: return imp(a, b);
    case Op::Box: return box(a);
    case Op::Forall: return forall(v, a);
    case Op::Exists: return exists(v, a);
    default: return f;
  }
}

struct Renamer {
  const std::vector<Var>& pool;
  std::map<std::pair<F, std::vector<std::pair<Var, Var>>>, F> memo;

  F run(F f, std::map<Var, Var> sigma) {
    // keep only nontrivial entries on free variables
    for (auto it = sigma.begin(); it != sigma.end();)
      it = (it->first == it->second || !(f->fv >> it->first & 1)) ? sigma.erase(it) : std::next(it);
    if (sigma.empty()) return f;
    std::vector<std::pair<Var, Var>> key(sigma.begin(), sigma.end());
    auto mk = std::make_pair(f, key);
    if (auto it = memo.find(mk); it != memo.end()) return it->second;
    F out = f;
    switch (f->op) {
      case Op::Bot: break;
      case Op::Atom: {
        auto args = f->args;
        for (auto& x : args)
          if (auto it = sigma.find(x); it != sigma.end()) x = it->second;
        out = atom(f->letter, args);
        break;
      }
      case Op::And:
      case Op::Or:
      case Op::Imp: out = rebuild(f, run(f->a, sigma), run(f->b, sigma), 0); break;
      case Op::Box: out = box(run(f->a, sigma)); break;
      case Op::Forall:
      case Op::Exists: {
        Var v = f->var;
        sigma.erase(v);
        uint32_t image = 0;
        for (int u = 0; u < kMaxVars; ++u) {
          if (!(f->fv >> u & 1)) continue;
          auto it = sigma.find(static_cast<Var>(u));
          image |= 1u << (it == sigma.end() ? u : it->second);
        }
        if (image >> v & 1) {
          Var fresh = 255;
          for (Var c : pool)
            if (!(image >> c & 1)) {
              fresh = c;
              break;
            }
          if (fresh == 255) throw CaptureError("capture of " + var_name(v) + " unavoidable within the pool");
          sigma[v] = fresh;
          out = rebuild(f, run(f->a, sigma), nullptr, fresh);
        } else {
          out = rebuild(f, run(f->a, sigma), nullptr, v);
        }
        break;
      }
    }
    memo.emplace(mk, out);
    return out;
  }
};

}  // namespace

F rename(F f, const std::map<Var, Var>& sigma, const std::vector<Var>& pool) {
  Renamer r{pool, {}};
  return r.run(f, sigma);
}

F substitute(F f, const Mapping& m, const std::vector<Var>& pool) {
  Renamer ren{pool, {}};
  std::unordered_map<F, F> memo;
  auto rec = [&](auto&& self, F g) -> F {
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    F out = g;
    switch (g->op) {
      case Op::Bot: break;
      case Op::Atom: {
        auto it = m.find(g->letter);
        if (it == m.end() || it->second.empty()) break;
        const Template* t = nullptr;
        for (auto& c : it->second)
          if (c.key && !g->args.empty() && *c.key == g->args[0]) t = &c;
        if (!t)
          for (auto& c : it->second)
            if (!c.key) t = &c;
        if (!t) t = &it->second.front();
        if (t->params.size() != g->args.size()) throw std::invalid_argument("template arity mismatch");
        std::map<Var, Var> sigma;
        for (size_t i = 0; i < g->args.size(); ++i) sigma[t->params[i]] = g->args[i];
        out = ren.run(t->body, sigma);
        break;
      }
      case Op::Box: out = box(self(self, g->a)); break;
      case Op::Forall:
      case Op::Exists: out = rebuild(g, self(self, g->a), nullptr, g->var); break;
      default: out = rebuild(g, self(self, g->a), self(self, g->b), 0);
    }
    memo.emplace(g, out);
    return out;
  };
  return rec(rec, f);
}

F relativize(F f, int guard) {
  std::unordered_map<F, F> memo;
  auto rec = [&](auto&& self, F g) -> F {
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    F out = g;
    switch (g->op) {
      case Op::Bot:
      case Op::Atom: break;
      case Op::Box: out = box(self(self, g->a)); break;
      case Op::Forall: out = forall(g->var, imp(atom(guard, {g->var}), self(self, g->a))); break;
      case Op::Exists: out = exists(g->var, conj(atom(guard, {g->var}), self(self, g->a))); break;
      default: out = rebuild(g, self(self, g->a), self(self, g->b), 0);
    }
    memo.emplace(g, out);
    return out;
  };
  return rec(rec, f);
}

F replace_bot(F f, F repl) {
  std::unordered_map<F, F> memo;
  auto rec = [&](auto&& self, F g) -> F {
    if (!g->has_bot) return g;
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    F out = g;
    switch (g->op) {
      case Op::Bot: out = repl; break;
      case Op::Atom: break;
      case Op::Box: out = box(self(self, g->a)); break;
      case Op::Forall:
      case Op::Exists: out = rebuild(g, self(self, g->a), nullptr, g->var); break;
      default: out = rebuild(g, self(self, g->a), self(self, g->b), 0);
    }
    memo.emplace(g, out);
    return out;
  };
  return rec(rec, f);
}

std::vector<F> subformulas(F f) {
  std::vector<F> out;
  std::unordered_set<F> seen;
  auto rec = [&](auto&& self, F g) -> void {
    if (seen.count(g)) return;
    if (g->a) self(self, g->a);
    if (g->b) self(self, g->b);
    if (seen.insert(g).second) out.push_back(g);
  };
  rec(rec, f);
  return out;
}

std::vector<F> atoms_of(F f) {
  std::vector<F> out;
  for (F g : subformulas(f))
    if (g->op == Op::Atom) out.push_back(g);
  return out;
}

std::string render(F f) {
  std::string s;
  auto rec = [&](auto&& self, F g) -> void {
    switch (g->op) {
      case Op::Bot: s += "(bot)"; return;
      case Op::Atom:
        s += "(atom " + letter_name(g->letter);
        for (Var v : g->args) s += " " + var_name(v);
        s += ")";
        return;
      case Op::And: s += "(and "; break;
      case Op::Or: s += "(or "; break;
      case Op::Imp: s += "(imp "; break;
      case Op::Box: s += "(box "; break;
      case Op::Forall: s += "(forall " + var_name(g->var) + " "; break;
      case Op::Exists: s += "(exists " + var_name(g->var) + " "; break;
    }
    self(self, g->a);
    if (g->b) {
      s += " ";
      self(self, g->b);
    }
    s += ")";
  };
  rec(rec, f);
  return s;
}

ParseError::ParseError(const std::string& msg, size_t p)
    : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}

namespace {

struct Parser {
  const std::string& t;
  size_t i = 0;

  void ws() {
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
  }
  bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
  std::string name() {
    ws();
    size_t s = i;
    while (i < t.size() && is_name_char(t[i])) ++i;
    if (s == i) throw ParseError("expected a name", i);
    return t.substr(s, i - s);
  }
  void expect(char c) {
    ws();
    if (i >= t.size() || t[i] != c) throw ParseError(std::string("expected '") + c + "'", i);
    ++i;
  }
  F formula() {
    expect('(');
    size_t at = i;
    std::string head = name();
    F out = nullptr;
    if (head == "bot") out = bot();
    else if (head == "top") out = top();
    else if (head == "atom") {
      std::string l = name();
      std::vector<Var> args;
      ws();
      while (i < t.size() && t[i] != ')') {
        args.push_back(var(name()));
        ws();
      }
      try {
        out = atom(l, args);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), at);
      }
    } else if (head == "and" || head == "or" || head == "imp" || head == "iff") {
      F a = formula(), b = formula();
      out = head == "and" ? conj(a, b) : head == "or" ? disj(a, b) : head == "imp" ? imp(a, b) : iff(a, b);
    } else if (head == "not" || head == "box" || head == "dia" || head == "boxp") {
      F a = formula();
      out = head == "not" ? neg(a) : head == "box" ? box(a) : head == "dia" ? dia(a) : boxp(a);
    } else if (head == "forall" || head == "exists") {
      Var v = var(name());
      F a = formula();
      out = head == "forall" ? forall(v, a) : exists(v, a);
    } else {
      throw ParseError("unknown constructor '" + head + "'", at);
    }
    expect(')');
    return out;
  }
};

}  // namespace

F parse(const std::string& text) {
  Parser p{text};
  F f = p.formula();
  p.ws();
  if (p.i != text.size()) throw ParseError("trailing input", p.i);
  return f;
}

std::string pretty(F f) {
  auto rec = [&](auto&& self, F g) -> std::string {
    switch (g->op) {
      case Op::Bot: return "⊥";
      case Op::Atom: {
        std::string s = letter_name(g->letter);
        if (!g->args.empty()) {
          s += "(";
          for (size_t i = 0; i < g->args.size(); ++i) s += (i ? "," : "") + var_name(g->args[i]);
          s += ")";
        }
        return s;
      }
      case Op::And: return "(" + self(self, g->a) + " ∧ " + self(self, g->b) + ")";
      case Op::Or: return "(" + self(self, g->a) + " ∨ " + self(self, g->b) + ")";
      case Op::Imp:
        if (g->b->op == Op::Bot) return "¬" + self(self, g->a);
        return "(" + self(self, g->a) + " → " + self(self, g->b) + ")";
      case Op::Box: return "□" + self(self, g->a);
      case Op::Forall: return "∀" + var_name(g->var) + " " + self(self, g->a);
      case Op::Exists: return "∃" + var_name(g->var) + " " + self(self, g->a);
    }
    return "";
  };
  return rec(rec, f);
}

}  // namespace tmred
