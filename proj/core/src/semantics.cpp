#include "tmred/semantics.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "tmred/generators.hpp"

namespace tmred {

size_t Bits::count() const {
  size_t c = 0;
  for (auto x : w) c += std::popcount(x);
  return c;
}

bool Bits::subset_of(const Bits& o) const {
  for (size_t i = 0; i < w.size(); ++i)
    if (w[i] & ~(i < o.w.size() ? o.w[i] : 0)) return false;
  return true;
}

Rel::Rel(int arity_, size_t n_) : arity(arity_), bits(arity_ == 0 ? 1 : arity_ == 1 ? n_ : n_ * n_), n(n_) {}

void Rel::index() {
  if (arity != 2) return;
  out.assign(n, {});
  in.assign(n, {});
  for (size_t wi = 0; wi < bits.w.size(); ++wi) {
    uint64_t x = bits.w[wi];
    while (x) {
      size_t i = wi * 64 + std::countr_zero(x);
      x &= x - 1;
      out[i / n].push_back(static_cast<int>(i % n));
      in[i % n].push_back(static_cast<int>(i / n));
    }
  }
}

bool Rel::subset_of(const Rel& o) const {
  if (arity == 0) return !prop || o.prop;
  return bits.subset_of(o.bits);
}

int Structure::add_elem(const std::string& name) {
  if (!interp.empty() && std::any_of(interp.begin(), interp.end(), [](auto& m) { return !m.empty(); }))
    throw std::logic_error("add elements before relations");
  elems.push_back(name);
  for (auto& d : dom) {
    Bits nb(elems.size());
    for (size_t i = 0; i + 1 < elems.size(); ++i) nb.set(i, d.get(i));
    d = nb;
  }
  return static_cast<int>(elems.size()) - 1;
}

int Structure::add_world(const std::string& name) {
  worlds.push_back(name);
  fit();
  return static_cast<int>(worlds.size()) - 1;
}

void Structure::fit() {
  if (interp.size() < W()) interp.resize(W());
  if (rel_edges.size() < W()) rel_edges.resize(W());
  if (dom.size() < W()) dom.resize(W(), Bits(N()));
}

void Structure::add_edge(int u, int v) {
  fit();
  rel_edges[u].push_back(v);
}

Rel& Structure::make_rel(int w, int l) {
  fit();
  auto r = std::make_shared<Rel>(letter_arity(l), N());
  interp[w][l] = r;
  return *r;
}

Rel& Structure::rel_at(int w, int l) {
  fit();
  auto it = interp[w].find(l);
  if (it == interp[w].end()) return make_rel(w, l);
  if (it->second.use_count() > 1) it->second = std::make_shared<Rel>(*it->second);
  return *it->second;
}

void Structure::share(int l, const RelPtr& r) {
  fit();
  for (auto& m : interp) m[l] = r;
}

const Rel* Structure::find(int w, int l) const {
  auto it = interp[w].find(l);
  return it == interp[w].end() ? nullptr : it->second.get();
}

void Structure::set_constant_domain() {
  fit();
  for (auto& d : dom) {
    d = Bits(N());
    for (size_t i = 0; i < N(); ++i) d.set(i);
  }
}

int Structure::elem_index(const std::string& name) const {
  for (size_t i = 0; i < elems.size(); ++i)
    if (elems[i] == name) return static_cast<int>(i);
  return -1;
}

int Structure::world_index(const std::string& name) const {
  for (size_t i = 0; i < worlds.size(); ++i)
    if (worlds[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

std::vector<std::vector<int>> closure(const std::vector<std::vector<int>>& edges, bool reflexive) {
  size_t W = edges.size();
  std::vector<std::vector<int>> out(W);
  std::vector<int> mark(W, -1);
  for (size_t w = 0; w < W; ++w) {
    std::vector<int> stack;
    if (reflexive) {
      mark[w] = static_cast<int>(w);
      out[w].push_back(static_cast<int>(w));
    }
    stack.push_back(static_cast<int>(w));
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : edges[u])
        if (mark[v] != static_cast<int>(w)) {
          mark[v] = static_cast<int>(w);
          out[w].push_back(v);
          stack.push_back(v);
        }
    }
    std::sort(out[w].begin(), out[w].end());
  }
  return out;
}

}  // namespace

Audit audit_structure(const Structure& s) {
  Audit a;
  auto fail = [&](std::string m) {
    a.ok = false;
    if (a.problems.size() < 20) a.problems.push_back(std::move(m));
  };
  size_t W = s.W();
  if (s.dom.size() != W || s.interp.size() != W || s.rel_edges.size() != W) {
    fail("world tables have inconsistent sizes");
    return a;
  }
  for (size_t w = 0; w < W; ++w) {
    if (s.dom[w].count() == 0) fail("empty domain at " + s.worlds[w]);
    for (auto& [l, r] : s.interp[w]) {
      if (r->arity == 1 && !r->bits.subset_of(s.dom[w])) fail(letter_name(l) + " leaves the domain at " + s.worlds[w]);
      if (r->arity == 2) {
        for (size_t wi = 0; wi < r->bits.w.size(); ++wi) {
          uint64_t x = r->bits.w[wi];
          while (x) {
            size_t i = wi * 64 + std::countr_zero(x);
            x &= x - 1;
            if (!s.dom[w].get(i / s.N()) || !s.dom[w].get(i % s.N())) {
              fail(letter_name(l) + " leaves the domain at " + s.worlds[w]);
              wi = r->bits.w.size();
              break;
            }
          }
        }
      }
    }
  }
  if (s.kind == Kind::Classical) return a;
  for (size_t u = 0; u < W; ++u)
    for (int v : s.rel_edges[u])
      if (!s.dom[u].subset_of(s.dom[v])) fail("expanding domains fail on " + s.worlds[u] + "->" + s.worlds[v]);
  if (s.kind == Kind::Int) {
    auto cl = closure(s.rel_edges, true);
    for (size_t u = 0; u < W; ++u)
      for (int v : cl[u])
        if (v != static_cast<int>(u) && std::binary_search(cl[v].begin(), cl[v].end(), static_cast<int>(u)))
          fail("not antisymmetric: " + s.worlds[u] + " and " + s.worlds[v]);
    for (size_t u = 0; u < W; ++u)
      for (int v : s.rel_edges[u])
        for (auto& [l, r] : s.interp[u]) {
          const Rel* rv = s.find(v, l);
          bool ok = rv ? r->subset_of(*rv) : (r->arity == 0 ? !r->prop : r->bits.count() == 0);
          if (!ok) fail("heredity fails for " + letter_name(l) + " on " + s.worlds[u] + "->" + s.worlds[v]);
        }
  }
  return a;
}

void Structure::finalize() {
  if (kind == Kind::Classical) {
    if (worlds.size() != 1) throw std::invalid_argument("classical model needs exactly one world");
  }
  dom.resize(W(), Bits(N()));
  interp.resize(W());
  rel_edges.resize(W());
  for (auto& e : rel_edges) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  if (kind == Kind::Classical && dom[0].count() == 0) set_constant_domain();
  Audit a = audit_structure(*this);
  if (!a.ok) throw std::invalid_argument("model audit failed: " + a.problems.front());
  succ = kind == Kind::Int ? closure(rel_edges, true) : rel_edges;
  dom_list.assign(W(), {});
  for (size_t w = 0; w < W(); ++w)
    for (size_t i = 0; i < N(); ++i)
      if (dom[w].get(i)) dom_list[w].push_back(static_cast<int>(i));
  std::set<Rel*> done;
  for (auto& m : interp)
    for (auto& [l, r] : m)
      if (done.insert(r.get()).second) r->index();
  finalized = true;
}

Structure make_classical(const std::vector<std::string>& domain) {
  Structure s;
  s.kind = Kind::Classical;
  s.worlds = {"w"};
  s.dom.assign(1, Bits(0));
  s.interp.assign(1, {});
  s.rel_edges.assign(1, {});
  for (auto& d : domain) s.add_elem(d);
  s.set_constant_domain();
  return s;
}

// ---------------------------------------------------------------- evaluator

Evaluator::Evaluator(const Structure& s, size_t dense_budget) : s_(s), dense_left_(dense_budget) {
  if (!s.finalized) throw std::logic_error("structure not finalized");
  std::fill(std::begin(env_), std::end(env_), -1);
}

Evaluator::Memo& Evaluator::memo_for(F f) {
  auto [it, fresh] = memo_.try_emplace(f);
  Memo& m = it->second;
  if (fresh) {
    int k = 0;
    for (int v = 0; v < kMaxVars; ++v)
      if (f->fv >> v & 1) m.v[k++] = static_cast<Var>(v);
    m.k = k;
    size_t size = s_.W();
    for (int i = 0; i < k; ++i) size *= s_.N();
    if (size <= dense_left_ && size <= (size_t(1) << 26)) {
      m.dense.assign(size, 0);
      dense_left_ -= size;
    }
  }
  return m;
}

const Evaluator::Guard& Evaluator::guard_for(F f) {
  auto [it, fresh] = guards_.try_emplace(f);
  if (!fresh) return it->second;
  Guard g;
  Var v = f->var;
  F scope = nullptr;
  if (f->op == Op::Exists) scope = f->a;
  else if (s_.kind != Kind::Int && f->a->op == Op::Imp) scope = f->a->a;
  if (scope) {
    std::vector<F> atoms;
    std::vector<F> stack{scope};
    while (!stack.empty()) {
      F c = stack.back();
      stack.pop_back();
      if (c->op == Op::And) {
        stack.push_back(c->b);
        stack.push_back(c->a);
      } else if (c->op == Op::Atom) {
        atoms.push_back(c);
      }
    }
    for (F a : atoms) {
      if (a->args.size() != 2) continue;
      if (a->args[0] == v && a->args[1] != v) g = {2, a->letter, a->args[1]};
      else if (a->args[1] == v && a->args[0] != v) g = {1, a->letter, a->args[0]};
      if (g.kind) break;
    }
    if (!g.kind)
      for (F a : atoms)
        if (a->args.size() == 1 && a->args[0] == v) {
          g = {3, a->letter, 0};
          break;
        }
  }
  it->second = g;
  return it->second;
}

bool Evaluator::quant(F f, int w) {
  Var v = f->var;
  int saved = env_[v];
  bool is_ex = f->op == Op::Exists;
  bool result = !is_ex;
  if (!is_ex && s_.kind == Kind::Int) {
    for (int u : s_.succ[w]) {
      for (int e : s_.dom_list[u]) {
        env_[v] = e;
        if (!ev(f->a, u)) {
          result = false;
          goto done;
        }
      }
    }
    goto done;
  }
  {
    const Guard& g = guard_for(f);
    const Bits& D = s_.dom[w];
    auto test = [&](int e) {
      env_[v] = e;
      bool r = ev(f->a, w);
      return is_ex ? r : !r;
    };
    if (g.kind == 1 || g.kind == 2) {
      const Rel* r = rel(w, g.letter);
      if (r) {
        const auto& lst = g.kind == 1 ? r->out[env_[g.other]] : r->in[env_[g.other]];
        for (int e : lst)
          if (D.get(e) && test(e)) {
            result = is_ex;
            break;
          }
      }
    } else if (g.kind == 3) {
      const Rel* r = rel(w, g.letter);
      if (r) {
        for (size_t wi = 0; wi < r->bits.w.size() && result != is_ex; ++wi) {
          uint64_t x = r->bits.w[wi] & D.w[wi];
          while (x) {
            int e = static_cast<int>(wi * 64 + std::countr_zero(x));
            x &= x - 1;
            if (test(e)) {
              result = is_ex;
              break;
            }
          }
        }
      }
    } else {
      for (int e : s_.dom_list[w])
        if (test(e)) {
          result = is_ex;
          break;
        }
    }
  }
done:
  env_[v] = saved;
  return result;
}

bool Evaluator::ev(F f, int w) {
  bool cacheable = (f->op == Op::Forall || f->op == Op::Exists || f->op == Op::Box ||
                    (f->op == Op::Imp && s_.kind == Kind::Int)) &&
                   std::popcount(f->fv) <= 2;
  if (!cacheable) return ev_uncached(f, w);
  Memo& m = memo_for(f);
  uint64_t idx = static_cast<uint64_t>(w);
  for (int i = 0; i < m.k; ++i) idx = idx * s_.N() + static_cast<uint64_t>(env_[m.v[i]]);
  if (!m.dense.empty()) {
    uint8_t& c = m.dense[idx];
    if (c) return c == 2;
    bool r = ev_uncached(f, w);
    // the reference may be stale only if the vector was resized, which never happens
    m.dense[idx] = r ? 2 : 1;
    return r;
  }
  if (auto it = m.sparse.find(idx); it != m.sparse.end()) return it->second == 2;
  bool r = ev_uncached(f, w);
  memo_[f].sparse[idx] = r ? 2 : 1;
  return r;
}

bool Evaluator::ev_uncached(F f, int w) {
  switch (f->op) {
    case Op::Bot: return false;
    case Op::Atom: {
      const Rel* r = rel(w, f->letter);
      if (!r) return false;
      if (r->arity == 0) return r->prop;
      if (r->arity == 1) return r->has(env_[f->args[0]]);
      return r->has(env_[f->args[0]], env_[f->args[1]]);
    }
    case Op::And: return ev(f->a, w) && ev(f->b, w);
    case Op::Or: return ev(f->a, w) || ev(f->b, w);
    case Op::Imp:
      if (s_.kind != Kind::Int) return !ev(f->a, w) || ev(f->b, w);
      if (f->b->op == Op::Bot) {
        for (int u : s_.succ[w])
          if (ev(f->a, u)) return false;
        return true;
      }
      for (int u : s_.succ[w])
        if (ev(f->a, u) && !ev(f->b, u)) return false;
      return true;
    case Op::Box:
      if (s_.kind != Kind::Modal) throw std::invalid_argument("modal operator outside a modal model");
      for (int u : s_.succ[w])
        if (!ev(f->a, u)) return false;
      return true;
    case Op::Forall:
    case Op::Exists: return quant(f, w);
  }
  return false;
}

bool Evaluator::eval(F f, int world, const std::vector<int>& env) {
  std::fill(std::begin(env_), std::end(env_), -1);
  for (size_t i = 0; i < env.size() && i < kMaxVars; ++i) env_[i] = env[i];
  for (int v = 0; v < kMaxVars; ++v)
    if ((f->fv >> v & 1) && (env_[v] < 0 || env_[v] >= static_cast<int>(s_.N())))
      throw std::invalid_argument("unassigned free variable " + var_name(static_cast<Var>(v)));
  if (world < 0 || world >= static_cast<int>(s_.W())) throw std::invalid_argument("no such world");
  return ev(f, world);
}

bool Evaluator::eval1(F f, int world, Var v, int a) {
  std::vector<int> env(kMaxVars, -1);
  env[v] = a;
  return eval(f, world, env);
}

bool Evaluator::eval2(F f, int world, Var v1, int a, Var v2, int b) {
  std::vector<int> env(kMaxVars, -1);
  env[v1] = a;
  env[v2] = b;
  return eval(f, world, env);
}

bool Evaluator::valid_at(F f, int world) {
  std::vector<Var> fv;
  for (int v = 0; v < kMaxVars; ++v)
    if (f->fv >> v & 1) fv.push_back(static_cast<Var>(v));
  std::vector<int> env(kMaxVars, -1);
  const auto& D = s_.dom_list[world];
  std::function<bool(size_t)> rec = [&](size_t i) {
    if (i == fv.size()) return eval(f, world, env);
    for (int e : D) {
      env[fv[i]] = e;
      if (!rec(i + 1)) return false;
    }
    return true;
  };
  return rec(0);
}

bool Evaluator::valid(F f) {
  for (size_t w = 0; w < s_.W(); ++w)
    if (!valid_at(f, static_cast<int>(w))) return false;
  return true;
}

std::vector<int> Evaluator::truth_set(F f) {
  std::vector<int> out;
  for (size_t w = 0; w < s_.W(); ++w)
    if (eval(f, static_cast<int>(w))) out.push_back(static_cast<int>(w));
  return out;
}

bool eval_classical(const Structure& m, F f, const std::vector<int>& env) {
  if (f->has_box) throw std::invalid_argument("modal operator in a classical formula");
  Evaluator e(m);
  return e.eval(f, 0, env);
}

bool valid_in_model(const Structure& m, F f) {
  if (f->has_box) throw std::invalid_argument("modal operator in a classical formula");
  Evaluator e(m);
  return e.valid_at(f, 0);
}

bool eval_modal(const Structure& k, int world, F f, const std::vector<int>& env) {
  if (k.kind != Kind::Modal) throw std::invalid_argument("not a modal model");
  Evaluator e(k);
  return e.eval(f, world, env);
}

bool eval_int(const Structure& k, int world, F f, const std::vector<int>& env) {
  if (k.kind != Kind::Int) throw std::invalid_argument("not an intuitionistic model");
  Evaluator e(k);
  return e.eval(f, world, env);
}

// ---------------------------------------------------------------- frames

namespace {

// iterative Tarjan; returns component id per node, components in reverse topological order
std::vector<int> scc(const std::vector<std::vector<int>>& g, int& ncomp) {
  int n = static_cast<int>(g.size()), idx = 0;
  std::vector<int> index(n, -1), low(n), comp(n, -1), stack;
  std::vector<char> on(n, 0);
  ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (index[s] >= 0) continue;
    std::vector<std::pair<int, size_t>> call{{s, 0}};
    index[s] = low[s] = idx++;
    stack.push_back(s);
    on[s] = 1;
    while (!call.empty()) {
      auto& [u, i] = call.back();
      if (i < g[u].size()) {
        int v = g[u][i++];
        if (index[v] < 0) {
          index[v] = low[v] = idx++;
          stack.push_back(v);
          on[v] = 1;
          call.push_back({v, 0});
        } else if (on[v]) {
          low[u] = std::min(low[u], index[v]);
        }
      } else {
        if (low[u] == index[u]) {
          int v;
          do {
            v = stack.back();
            stack.pop_back();
            on[v] = 0;
            comp[v] = ncomp;
          } while (v != u);
          ++ncomp;
        }
        int done = u;
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      }
    }
  }
  return comp;
}

size_t hopcroft_karp(size_t n, const std::vector<std::vector<int>>& adj) {
  std::vector<int> mu(n, -1), mv(n, -1), dist(n);
  size_t matching = 0;
  auto bfs = [&]() {
    std::queue<int> q;
    bool found = false;
    for (size_t u = 0; u < n; ++u) {
      if (mu[u] < 0) {
        dist[u] = 0;
        q.push(static_cast<int>(u));
      } else {
        dist[u] = -1;
      }
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        int w = mv[v];
        if (w < 0) found = true;
        else if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };
  std::function<bool(int)> dfs = [&](int u) {
    for (int v : adj[u]) {
      int w = mv[v];
      if (w < 0 || (dist[w] == dist[u] + 1 && dfs(w))) {
        mu[u] = v;
        mv[v] = u;
        return true;
      }
    }
    dist[u] = -1;
    return false;
  };
  while (bfs())
    for (size_t u = 0; u < n; ++u)
      if (mu[u] < 0 && dfs(static_cast<int>(u))) ++matching;
  return matching;
}

}  // namespace

nlohmann::json FrameReport::to_json() const {
  return {{"is_partial_order", is_partial_order}, {"reflexive", reflexive},        {"transitive", transitive},
          {"depth", depth},                       {"max_successors", max_successors}, {"max_antichain", max_antichain},
          {"antichain_exact", antichain_exact},   {"wkkz", wkkz},                  {"swkkz", swkkz},
          {"kkz_exact", kkz_exact}};
}

FrameReport frame_report(const Structure& k, size_t exact_budget) {
  FrameReport rep;
  const auto& R = k.finalized ? k.succ : k.rel_edges;
  size_t W = R.size();
  auto has = [&](int u, int v) { return std::binary_search(R[u].begin(), R[u].end(), v); };
  rep.reflexive = true;
  for (size_t w = 0; w < W; ++w)
    if (!has(static_cast<int>(w), static_cast<int>(w))) rep.reflexive = false;
  auto cl = closure(R, false);
  rep.transitive = true;
  for (size_t w = 0; w < W && rep.transitive; ++w)
    for (int v : cl[w])
      if (!has(static_cast<int>(w), v)) {
        rep.transitive = false;
        break;
      }
  int ncomp = 0;
  auto comp = scc(R, ncomp);
  bool antisym = ncomp == static_cast<int>(W);
  rep.is_partial_order = rep.reflexive && rep.transitive && antisym;
  for (size_t w = 0; w < W; ++w) rep.max_successors = std::max(rep.max_successors, R[w].size());

  // condensation DAG, longest chain counted in components
  std::vector<std::vector<int>> dag(ncomp);
  for (size_t u = 0; u < W; ++u)
    for (int v : R[u])
      if (comp[u] != comp[v]) dag[comp[u]].push_back(comp[v]);
  for (auto& e : dag) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  // Tarjan numbers components in reverse topological order: successors have smaller ids
  std::vector<size_t> height(ncomp, 1);
  for (int c = 0; c < ncomp; ++c)
    for (int d : dag[c]) height[c] = std::max(height[c], height[d] + 1);
  for (int c = 0; c < ncomp; ++c) rep.depth = std::max(rep.depth, height[c]);

  // antichains inside R(w): enough to look at components with no incoming edges
  std::vector<char> has_in(ncomp, 0);
  for (int c = 0; c < ncomp; ++c)
    for (int d : dag[c]) has_in[d] = 1;
  auto dag_cl = closure(dag, false);
  for (int root = 0; root < ncomp; ++root) {
    if (has_in[root]) continue;
    std::vector<int> nodes = dag_cl[root];
    nodes.push_back(root);
    std::sort(nodes.begin(), nodes.end());
    size_t best;
    if (nodes.size() <= exact_budget) {
      std::unordered_map<int, int> pos;
      for (size_t i = 0; i < nodes.size(); ++i) pos[nodes[i]] = static_cast<int>(i);
      std::vector<std::vector<int>> adj(nodes.size());
      for (size_t i = 0; i < nodes.size(); ++i)
        for (int d : dag_cl[nodes[i]]) adj[i].push_back(pos[d]);
      best = nodes.size() - hopcroft_karp(nodes.size(), adj);
    } else {
      rep.antichain_exact = false;
      // nodes of equal height are pairwise incomparable
      std::map<size_t, size_t> layer;
      for (int c : nodes) ++layer[height[c]];
      best = 0;
      for (auto& [h, c] : layer) best = std::max(best, c);
    }
    rep.max_antichain = std::max(rep.max_antichain, best);
  }

  // greedy two-layer witnesses on strict successors one component down
  rep.kkz_exact = false;
  auto layer1 = [&](int w) {
    std::vector<int> out;
    size_t hw = height[comp[w]];
    for (int v : R[w])
      if (comp[v] != comp[w] && height[comp[v]] + 1 == hw) out.push_back(v);
    return out;
  };
  auto incomparable = [&](int a, int b) {
    return a != b && !std::binary_search(cl[a].begin(), cl[a].end(), b) &&
           !std::binary_search(cl[b].begin(), cl[b].end(), a);
  };
  if (W <= 20000) {
    for (size_t w = 0; w < W; ++w) {
      if (R[w].size() < 2) continue;
      auto V = layer1(static_cast<int>(w));
      if (V.empty()) continue;
      std::vector<char> inV(W, 0);
      for (int v : V) inV[v] = 1;
      size_t m = V.size();
      for (int v : V) {
        size_t c = 0;
        for (int u : R[v])
          if (!inV[u]) ++c;
        m = std::min(m, c);
      }
      rep.wkkz = std::max(rep.wkkz, m);
      std::vector<int> A;
      for (int v : V)
        if (std::all_of(A.begin(), A.end(), [&](int a) { return incomparable(a, v); })) A.push_back(v);
      size_t sm = A.size();
      std::vector<int> used;
      for (int v : A) {
        std::vector<int> B;
        for (int u : layer1(v)) {
          if (!std::all_of(B.begin(), B.end(), [&](int b) { return incomparable(b, u); })) continue;
          if (!std::all_of(used.begin(), used.end(), [&](int b) { return incomparable(b, u); })) continue;
          B.push_back(u);
        }
        sm = std::min(sm, B.size());
        used.insert(used.end(), B.begin(), B.end());
      }
      rep.swkkz = std::max(rep.swkkz, sm);
    }
  }
  return rep;
}

// ---------------------------------------------------------------- bounded search

namespace {

struct LetterSlot {
  int letter, arity;
};

std::vector<LetterSlot> letters_in(F f) {
  std::set<int> ls;
  for (F a : atoms_of(f)) ls.insert(a->letter);
  std::vector<LetterSlot> out;
  for (int l : ls) out.push_back({l, letter_arity(l)});
  return out;
}

std::vector<std::string> names(size_t n, const std::string& prefix) {
  std::vector<std::string> v;
  for (size_t i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
  return v;
}

}  // namespace

Verdict bounded_validity_classical(F f, size_t bound, size_t budget) {
  Verdict v;
  auto ls = letters_in(f);
  for (size_t d = 1; d <= bound; ++d) {
    size_t bits = 0;
    for (auto& l : ls) bits += l.arity == 0 ? 1 : l.arity == 1 ? d : d * d;
    if (bits >= 63 || (uint64_t(1) << bits) + v.models_checked > budget) {
      v.budget_exceeded = true;
      return v;
    }
    for (uint64_t code = 0; code < (uint64_t(1) << bits); ++code) {
      Structure s = make_classical(names(d, "e"));
      size_t b = 0;
      for (auto& l : ls) {
        Rel& r = s.make_rel(0, l.letter);
        if (l.arity == 0) r.prop = code >> b++ & 1;
        else if (l.arity == 1)
          for (size_t i = 0; i < d; ++i) {
            if (code >> b++ & 1) r.add(static_cast<int>(i));
          }
        else
          for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
              if (code >> b++ & 1) r.add(static_cast<int>(i), static_cast<int>(j));
      }
      s.finalize();
      ++v.models_checked;
      Evaluator e(s);
      if (!e.valid_at(f, 0)) {
        v.valid = false;
        v.countermodel = std::move(s);
        return v;
      }
    }
  }
  return v;
}

std::vector<std::vector<std::pair<int, int>>> enumerate_frames(size_t n, bool reflexive, bool transitive) {
  std::vector<std::vector<std::pair<int, int>>> out;
  size_t bits = n * n;
  for (uint64_t code = 0; code < (uint64_t(1) << bits); ++code) {
    auto has = [&](size_t u, size_t v) { return code >> (u * n + v) & 1; };
    bool ok = true;
    if (reflexive)
      for (size_t u = 0; u < n; ++u) ok = ok && has(u, u);
    if (ok && transitive)
      for (size_t u = 0; u < n && ok; ++u)
        for (size_t v = 0; v < n && ok; ++v)
          for (size_t w = 0; w < n && ok; ++w)
            if (has(u, v) && has(v, w) && !has(u, w)) ok = false;
    if (!ok) continue;
    std::vector<std::pair<int, int>> e;
    for (size_t u = 0; u < n; ++u)
      for (size_t v = 0; v < n; ++v)
        if (has(u, v)) e.push_back({static_cast<int>(u), static_cast<int>(v)});
    out.push_back(e);
  }
  return out;
}

namespace {

Structure kripke_shell(Kind kind, size_t nw, size_t ne, const std::vector<std::pair<int, int>>& edges) {
  Structure s;
  s.kind = kind;
  s.worlds.clear();
  for (size_t e = 0; e < ne; ++e) s.elems.push_back("e" + std::to_string(e));
  for (size_t w = 0; w < nw; ++w) s.worlds.push_back("w" + std::to_string(w));
  s.rel_edges.assign(nw, {});
  s.dom.assign(nw, Bits(ne));
  s.interp.assign(nw, {});
  for (auto [u, v] : edges) s.rel_edges[u].push_back(v);
  return s;
}

bool upward_closed(uint32_t set, size_t nw, const std::vector<std::pair<int, int>>& edges) {
  for (auto [u, v] : edges)
    if ((set >> u & 1) && !(set >> v & 1)) return false;
  (void)nw;
  return true;
}

}  // namespace

Verdict bounded_validity_kripke(F f, const KripkeFamily& fam, size_t budget) {
  Verdict v;
  auto ls = letters_in(f);
  size_t U = fam.universe;
  for (size_t nw = 1; nw <= fam.max_worlds; ++nw) {
    for (auto& edges : enumerate_frames(nw, fam.reflexive, fam.transitive)) {
      // existence set per element: bitmask over worlds
      std::vector<uint32_t> ex_options;
      for (uint32_t m = 1; m < (1u << nw); ++m)
        if (!fam.expanding ? m == (1u << nw) - 1 : upward_closed(m, nw, edges)) ex_options.push_back(m);
      ex_options.insert(ex_options.begin(), 0);  // element absent everywhere
      std::vector<size_t> ex(U, 0);
      std::function<bool(size_t)> over_ex = [&](size_t i) -> bool {
        if (i < U) {
          for (size_t o = 0; o < ex_options.size(); ++o) {
            ex[i] = o;
            if (!over_ex(i + 1)) return false;
          }
          return true;
        }
        std::vector<std::vector<int>> D(nw);
        for (size_t e = 0; e < U; ++e)
          for (size_t w = 0; w < nw; ++w)
            if (ex_options[ex[e]] >> w & 1) D[w].push_back(static_cast<int>(e));
        for (auto& d : D)
          if (d.empty()) return true;
        if (!fam.expanding)
          for (size_t e = 0; e < U; ++e)
            if (ex[e] == 0) return true;  // constant domain uses the whole universe
        size_t bits = 0;
        for (auto& l : ls)
          for (size_t w = 0; w < nw; ++w) {
            size_t d = D[w].size();
            bits += l.arity == 0 ? 1 : l.arity == 1 ? d : d * d;
          }
        if (bits >= 40 || v.models_checked + (uint64_t(1) << bits) > budget) {
          v.budget_exceeded = true;
          return false;
        }
        for (uint64_t code = 0; code < (uint64_t(1) << bits); ++code) {
          Structure s = kripke_shell(fam.kind, nw, U, edges);
          for (size_t w = 0; w < nw; ++w)
            for (int e : D[w]) s.dom[w].set(e);
          size_t b = 0;
          for (auto& l : ls)
            for (size_t w = 0; w < nw; ++w) {
              Rel& r = s.make_rel(static_cast<int>(w), l.letter);
              if (l.arity == 0) r.prop = code >> b++ & 1;
              else if (l.arity == 1)
                for (int e : D[w]) {
                  if (code >> b++ & 1) r.add(e);
                }
              else
                for (int e1 : D[w])
                  for (int e2 : D[w])
                    if (code >> b++ & 1) r.add(e1, e2);
            }
          ++v.models_checked;
          if (fam.kind == Kind::Int && !audit_structure(s).ok) continue;
          s.finalize();
          Evaluator ev(s);
          for (size_t w = 0; w < nw; ++w)
            if (!ev.valid_at(f, static_cast<int>(w))) {
              v.valid = false;
              v.world = static_cast<int>(w);
              v.countermodel = std::move(s);
              return false;
            }
        }
        return true;
      };
      over_ex(0);
      if (!v.valid || v.budget_exceeded) return v;
    }
  }
  return v;
}

namespace {

struct TypeSpec {
  uint32_t exists, q;
};

std::vector<TypeSpec> monadic_types(size_t nw, const std::vector<std::pair<int, int>>& edges, bool expanding) {
  std::vector<TypeSpec> out;
  uint32_t full = (1u << nw) - 1;
  for (uint32_t e = 1; e <= full; ++e) {
    if (!expanding && e != full) continue;
    if (!upward_closed(e, nw, edges)) continue;
    for (uint32_t q = 0; q <= full; ++q)
      if ((q & ~e) == 0) out.push_back({e, q});
  }
  return out;
}

bool check_types(F f, int q, const std::vector<std::pair<int, int>>& edges, size_t nw,
                 const std::vector<TypeSpec>& types, const std::vector<int>& pick, Verdict& v) {
  Structure s = kripke_shell(Kind::Modal, nw, pick.size(), edges);
  for (size_t w = 0; w < nw; ++w) s.make_rel(static_cast<int>(w), q);
  for (size_t i = 0; i < pick.size(); ++i) {
    const TypeSpec& t = types[pick[i]];
    for (size_t w = 0; w < nw; ++w) {
      if (t.exists >> w & 1) s.dom[w].set(i);
      if (t.q >> w & 1) s.rel_at(static_cast<int>(w), q).add(static_cast<int>(i));
    }
  }
  for (auto& d : s.dom)
    if (d.count() == 0) return true;
  s.finalize();
  ++v.models_checked;
  Evaluator ev(s);
  for (size_t w = 0; w < nw; ++w)
    if (!ev.valid_at(f, static_cast<int>(w))) {
      v.valid = false;
      v.world = static_cast<int>(w);
      v.countermodel = std::move(s);
      return false;
    }
  return true;
}

}  // namespace

Verdict exhaustive_over_frame(F f, int q, const std::vector<std::pair<int, int>>& edges, size_t nw,
                              size_t max_size, bool expanding) {
  // elements are interchangeable, so multisets of types cover every model up to isomorphism
  Verdict v;
  auto types = monadic_types(nw, edges, expanding);
  std::vector<int> pick;
  std::function<bool(size_t, int)> rec = [&](size_t left, int from) -> bool {
    if (!pick.empty() && !check_types(f, q, edges, nw, types, pick, v)) return false;
    if (left == 0) return true;
    for (int t = from; t < static_cast<int>(types.size()); ++t) {
      pick.push_back(t);
      bool ok = rec(left - 1, t);
      pick.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  rec(max_size, 0);
  return v;
}

Verdict quotient_over_frame(F f, int q, const std::vector<std::pair<int, int>>& edges, size_t nw, bool expanding) {
  Verdict v;
  auto types = monadic_types(nw, edges, expanding);
  if (types.size() > 20) {
    v.budget_exceeded = true;
    return v;
  }
  for (uint32_t m = 1; m < (1u << types.size()); ++m) {
    std::vector<int> pick;
    for (size_t t = 0; t < types.size(); ++t)
      if (m >> t & 1) pick.push_back(static_cast<int>(t));
    if (!check_types(f, q, edges, nw, types, pick, v)) return v;
  }
  return v;
}

// ---------------------------------------------------------------- standard translation

Structure st_model(const Structure& c, int p, int q) {
  Structure s;
  s.kind = Kind::Modal;
  s.worlds.clear();
  s.elems = c.elems;
  size_t n = c.N();
  for (size_t w = 0; w < n; ++w) s.worlds.push_back(c.elems[w]);
  s.rel_edges.assign(n, {});
  s.dom.assign(n, Bits(n));
  s.interp.assign(n, {});
  s.set_constant_domain();
  for (size_t u = 0; u < n; ++u)
    for (size_t v = 0; v < n; ++v) s.rel_edges[u].push_back(static_cast<int>(v));
  const Rel* P = c.find(0, p);
  for (size_t e = 0; e < n; ++e) {
    Rel& r = s.make_rel(static_cast<int>(e), q);
    for (size_t d = 0; d < n; ++d)
      if (P && P->has(static_cast<int>(d), static_cast<int>(e))) r.add(static_cast<int>(d));
  }
  s.finalize();
  return s;
}

std::pair<bool, bool> st_correspondence(const Structure& c, int w, F phi, const std::vector<int>& env) {
  int p = letter("P", 2), q = letter("Q", 1);
  Structure k = st_model(c, p, q);
  Evaluator em(k), ec(c);
  std::vector<int> e2(kMaxVars, -1);
  for (size_t i = 0; i < env.size() && i < kMaxVars; ++i) e2[i] = env[i];
  bool lhs = em.eval(phi, w, e2);
  e2[Z] = w;
  bool rhs = ec.eval(st(phi), 0, e2);
  return {lhs, rhs};
}

// ---------------------------------------------------------------- json

nlohmann::json model_to_json(const Structure& s) {
  using nlohmann::json;
  auto tuples = [&](const Rel& r, int w) {
    json arr = json::array();
    if (r.arity == 0) {
      if (r.prop) arr.push_back(json::array());
    } else if (r.arity == 1) {
      for (size_t i = 0; i < s.N(); ++i)
        if (r.has(static_cast<int>(i))) arr.push_back(json::array({s.elems[i]}));
    } else {
      for (size_t i = 0; i < s.N(); ++i)
        for (size_t j = 0; j < s.N(); ++j)
          if (r.has(static_cast<int>(i), static_cast<int>(j))) arr.push_back(json::array({s.elems[i], s.elems[j]}));
    }
    (void)w;
    return arr;
  };
  auto interp_of = [&](int w) {
    std::map<std::string, const Rel*> sorted;
    for (auto& [l, r] : s.interp[w]) sorted[letter_name(l)] = r.get();
    json o = json::object();
    for (auto& [n, r] : sorted) o[n] = tuples(*r, w);
    return o;
  };
  json j;
  if (s.kind == Kind::Classical) {
    j["domain"] = s.elems;
    j["interp"] = interp_of(0);
  } else {
    j["kind"] = s.kind == Kind::Modal ? "modal" : "int";
    j["worlds"] = s.worlds;
    j["elements"] = s.elems;
    json rel = json::array();
    for (size_t u = 0; u < s.W(); ++u)
      for (int v : s.rel_edges[u]) rel.push_back(json::array({s.worlds[u], s.worlds[v]}));
    j["rel"] = rel;
    json doms = json::object(), in = json::object();
    for (size_t w = 0; w < s.W(); ++w) {
      json d = json::array();
      for (size_t i = 0; i < s.N(); ++i)
        if (s.dom[w].get(i)) d.push_back(s.elems[i]);
      doms[s.worlds[w]] = d;
      in[s.worlds[w]] = interp_of(static_cast<int>(w));
    }
    j["domains"] = doms;
    j["interp"] = in;
  }
  if (!s.meta.is_null()) j["meta"] = s.meta;
  return j;
}

Structure model_from_json(const nlohmann::json& j) {
  auto read_interp = [](Structure& s, int w, const nlohmann::json& o) {
    for (auto& [name, arr] : o.items()) {
      if (!arr.is_array()) throw std::invalid_argument("interp of " + name + " must be an array");
      int arity = -1;
      for (auto& t : arr) {
        if (arity < 0) arity = static_cast<int>(t.size());
        else if (arity != static_cast<int>(t.size())) throw std::invalid_argument("mixed arity for " + name);
      }
      int l = find_letter(name);
      if (l >= 0) arity = letter_arity(l);
      else l = letter(name, arity < 0 ? 1 : arity);
      Rel& r = s.make_rel(w, l);
      for (auto& t : arr) {
        std::vector<int> idx;
        for (auto& e : t) {
          int i = s.elem_index(e.get<std::string>());
          if (i < 0) throw std::invalid_argument("unknown element " + e.get<std::string>());
          idx.push_back(i);
        }
        if (r.arity == 0) r.prop = true;
        else if (r.arity == 1) r.add(idx.at(0));
        else r.add(idx.at(0), idx.at(1));
      }
    }
  };
  Structure s;
  if (!j.contains("kind")) {
    s = make_classical(j.at("domain").get<std::vector<std::string>>());
    if (j.contains("interp")) read_interp(s, 0, j["interp"]);
  } else {
    std::string k = j.at("kind");
    if (k != "modal" && k != "int") throw std::invalid_argument("kind must be modal or int");
    s.kind = k == "modal" ? Kind::Modal : Kind::Int;
    s.worlds = j.at("worlds").get<std::vector<std::string>>();
    std::set<std::string> el;
    for (auto& [w, d] : j.at("domains").items())
      for (auto& e : d) el.insert(e.get<std::string>());
    std::vector<std::string> elems;
    // keep first-seen order across worlds for readability
    for (auto& w : s.worlds)
      if (j["domains"].contains(w))
        for (auto& e : j["domains"][w]) {
          std::string n = e.get<std::string>();
          if (std::find(elems.begin(), elems.end(), n) == elems.end()) elems.push_back(n);
        }
    s.elems = j.contains("elements") ? j["elements"].get<std::vector<std::string>>() : elems;
    for (auto& e : el)
      if (s.elem_index(e) < 0) throw std::invalid_argument("domain names an unlisted element " + e);
    s.rel_edges.assign(s.W(), {});
    s.dom.assign(s.W(), Bits(s.N()));
    s.interp.assign(s.W(), {});
    for (auto& p : j.at("rel")) {
      int u = s.world_index(p.at(0)), v = s.world_index(p.at(1));
      if (u < 0 || v < 0) throw std::invalid_argument("rel names an unknown world");
      s.rel_edges[u].push_back(v);
    }
    for (size_t w = 0; w < s.W(); ++w) {
      if (!j["domains"].contains(s.worlds[w])) throw std::invalid_argument("no domain for " + s.worlds[w]);
      for (auto& e : j["domains"][s.worlds[w]]) s.dom[w].set(s.elem_index(e.get<std::string>()));
      if (j.contains("interp") && j["interp"].contains(s.worlds[w]))
        read_interp(s, static_cast<int>(w), j["interp"][s.worlds[w]]);
    }
  }
  if (j.contains("meta")) s.meta = j["meta"];
  s.finalize();
  return s;
}

}  // namespace tmred
