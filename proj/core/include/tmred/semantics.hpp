#pragma once
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "tmred/formula.hpp"

namespace tmred {

enum class Kind { Classical, Modal, Int };

struct Bits {
  std::vector<uint64_t> w;
  size_t n = 0;
  explicit Bits(size_t n_ = 0) : w((n_ + 63) / 64), n(n_) {}
  bool get(size_t i) const { return w[i >> 6] >> (i & 63) & 1; }
  void set(size_t i, bool v = true) {
    if (v) w[i >> 6] |= 1ull << (i & 63);
    else w[i >> 6] &= ~(1ull << (i & 63));
  }
  size_t count() const;
  bool subset_of(const Bits& o) const;
  bool operator==(const Bits&) const = default;
};

struct Rel {
  int arity = 0;
  bool prop = false;
  Bits bits;                              // N bits (unary) or N*N bits (binary)
  std::vector<std::vector<int>> out, in;  // binary adjacency, filled by index()
  size_t n = 0;

  Rel(int arity_, size_t n_);
  bool has(int a) const { return bits.get(a); }
  bool has(int a, int b) const { return bits.get(static_cast<size_t>(a) * n + b); }
  void add(int a) { bits.set(a); }
  void add(int a, int b) { bits.set(static_cast<size_t>(a) * n + b); }
  void index();
  bool subset_of(const Rel& o) const;
};

using RelPtr = std::shared_ptr<Rel>;

// finite first-order structure over worlds; a classical model is the one-world case
struct Structure {
  Kind kind = Kind::Classical;
  std::vector<std::string> worlds{"w"};
  std::vector<std::string> elems;
  std::vector<std::vector<int>> rel_edges;  // R as given
  std::vector<Bits> dom;
  std::vector<std::unordered_map<int, RelPtr>> interp;
  nlohmann::json meta;

  // derived by finalize()
  std::vector<std::vector<int>> succ;  // modal: R(w); int: reflexive-transitive closure
  std::vector<std::vector<int>> dom_list;
  bool finalized = false;

  size_t W() const { return worlds.size(); }
  size_t N() const { return elems.size(); }
  int add_elem(const std::string& name);
  int add_world(const std::string& name);
  void fit();  // size per-world tables to the world list
  void add_edge(int u, int v);
  // fresh relation at a world (replaces any previous)
  Rel& make_rel(int w, int letter);
  Rel& rel_at(int w, int letter);
  void share(int letter, const RelPtr& r);  // same relation object at every world
  const Rel* find(int w, int letter) const;
  void set_constant_domain();
  // validates, builds adjacency, closure; throws std::invalid_argument on audit failure
  void finalize();
  int elem_index(const std::string& name) const;
  int world_index(const std::string& name) const;
};

struct Audit {
  bool ok = true;
  std::vector<std::string> problems;
};
Audit audit_structure(const Structure& s);

Structure make_classical(const std::vector<std::string>& domain);

class Evaluator {
 public:
  explicit Evaluator(const Structure& s, size_t dense_budget = size_t(1) << 29);
  // env maps variable id -> element, -1 unassigned
  bool eval(F f, int world, const std::vector<int>& env = {});
  bool eval1(F f, int world, Var v, int a);
  bool eval2(F f, int world, Var v1, int a, Var v2, int b);
  // all assignments of the free variables from the world's domain
  bool valid_at(F f, int world);
  bool valid(F f);
  std::vector<int> truth_set(F f);  // worlds where the closed formula holds
  const Structure& structure() const { return s_; }

 private:
  struct Memo {
    int k = 0;
    Var v[2] = {0, 0};
    std::vector<uint8_t> dense;
    std::unordered_map<uint64_t, uint8_t> sparse;
  };
  struct Guard {
    int kind = 0;  // 0 none, 1 binary out, 2 binary in, 3 unary
    int letter = -1;
    Var other = 0;
  };
  const Structure& s_;
  size_t dense_left_;
  std::unordered_map<F, Memo> memo_;
  std::unordered_map<F, Guard> guards_;
  int env_[kMaxVars];

  bool ev(F f, int w);
  bool ev_uncached(F f, int w);
  Memo& memo_for(F f);
  const Guard& guard_for(F f);
  bool quant(F f, int w);
  const Rel* rel(int w, int letter) const { return s_.find(w, letter); }
};

bool eval_classical(const Structure& m, F f, const std::vector<int>& env = {});
bool valid_in_model(const Structure& m, F f);
bool eval_modal(const Structure& k, int world, F f, const std::vector<int>& env = {});
bool eval_int(const Structure& k, int world, F f, const std::vector<int>& env = {});

struct FrameReport {
  bool is_partial_order = false;
  bool reflexive = false, transitive = false;
  size_t depth = 0;
  size_t max_successors = 0;
  size_t max_antichain = 0;
  bool antichain_exact = true;
  size_t wkkz = 0, swkkz = 0;
  bool kkz_exact = true;
  nlohmann::json to_json() const;
};
FrameReport frame_report(const Structure& k, size_t exact_budget = 2000);

struct Verdict {
  bool valid = true;
  bool budget_exceeded = false;
  std::optional<Structure> countermodel;
  int world = 0;
  size_t models_checked = 0;
};

// classical structures over the letters of f, sizes 1..bound
Verdict bounded_validity_classical(F f, size_t bound, size_t budget = 10'000'000);

struct KripkeFamily {
  Kind kind = Kind::Modal;
  size_t max_worlds = 3;
  size_t universe = 2;   // elements available for domains
  bool reflexive = true, transitive = true;
  bool expanding = true;  // else constant domains
};
Verdict bounded_validity_kripke(F f, const KripkeFamily& fam, size_t budget = 50'000'000);

// all reflexive/transitive relations on n labelled worlds satisfying the flags
std::vector<std::vector<std::pair<int, int>>> enumerate_frames(size_t n, bool reflexive, bool transitive);

// monadic letter Q over a fixed frame: labelled models with domain sizes 1..max_size
Verdict exhaustive_over_frame(F f, int q, const std::vector<std::pair<int, int>>& edges, size_t nworlds,
                              size_t max_size, bool expanding);
// one element per type, every type set; expanding types carry an upward-closed existence set
Verdict quotient_over_frame(F f, int q, const std::vector<std::pair<int, int>>& edges, size_t nworlds,
                            bool expanding);

// S5 model on c's domain with universal access and Q(d) at e iff P(d,e)
Structure st_model(const Structure& c, int p, int q);
std::pair<bool, bool> st_correspondence(const Structure& c, int world_elem, F phi, const std::vector<int>& env = {});

nlohmann::json model_to_json(const Structure& s);
Structure model_from_json(const nlohmann::json& j);

}  // namespace tmred
