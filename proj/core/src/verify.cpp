#include "tmred/verify.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "tmred/generators.hpp"
#include "tmred/tiles.hpp"

namespace tmred {

std::string result_name(Result r) {
  switch (r) {
    case Result::Pass: return "pass";
    case Result::Fail: return "fail";
    case Result::BudgetExceeded: return "budget-exceeded";
  }
  return "fail";
}

void Outcome::add(const std::string& name, bool holds, const std::string& witness) {
  details.push_back({name, holds, holds ? "" : witness});
}

void Outcome::settle() {
  bool failed = false;
  for (auto& d : details) failed = failed || !d.holds;
  if (failed) result = Result::Fail;
  else if (result != Result::BudgetExceeded) result = Result::Pass;
}

nlohmann::json Outcome::to_json() const {
  nlohmann::json j;
  j["result"] = result_name(result);
  j["details"] = nlohmann::json::array();
  for (auto& d : details) {
    nlohmann::json e{{"name", d.name}, {"holds", d.holds}};
    if (!d.witness.empty()) e["witness"] = d.witness;
    j["details"].push_back(e);
  }
  j["artifacts"] = artifacts;
  for (auto& d : details)
    if (!d.holds) {
      j["witness"] = d.name + (d.witness.empty() ? "" : ": " + d.witness);
      break;
    }
  return j;
}

Outcome from_assertions(const std::vector<Assertion>& as) {
  Outcome o;
  o.details = as;
  o.settle();
  return o;
}

namespace {

// memo entries times the fan-out of each node
double eval_cost(F f, const Structure& s) {
  double W = static_cast<double>(s.W()), N = static_cast<double>(std::max<size_t>(s.N(), 1));
  double total = 0;
  for (F g : subformulas(f)) {
    double c = W * std::pow(N, __builtin_popcount(g->fv));
    if (g->op == Op::Forall || g->op == Op::Exists) c *= N;
    if (g->op == Op::Box || (s.kind == Kind::Int && g->op == Op::Imp)) c *= W;
    total += c;
  }
  return total;
}

struct Run {
  Outcome& out;
  const VerifyOptions& opt;
  bool expect;  // hx: the final formula is forced; hy: refuted

  void audits(const std::string& prefix, const Structure& s, const Structure* src = nullptr) {
    for (auto& a : check_assertions(s, src)) out.add(prefix + ": " + a.name, a.holds, a.witness);
  }

  // evaluates f at world w unless the estimate is over budget
  void root(const std::string& name, const Structure& s, F f, int w = 0, std::optional<bool> want = std::nullopt) {
    bool target = want.value_or(expect);
    double cost = eval_cost(f, s);
    if (cost > opt.budget) {
      out.result = Result::BudgetExceeded;
      out.details.push_back({name + " (skipped, estimated cost " + std::to_string(static_cast<long long>(cost)) + ")", true, ""});
      return;
    }
    Evaluator ev(s);
    bool got = ev.valid_at(f, w);
    out.add(name, got == target, std::string("root ") + (got ? "forces" : "refutes") + " the formula");
  }

  // runs a construction; length_error means the model would be over budget
  bool build(const std::string& what, const std::function<void()>& fn) {
    try {
      fn();
      return true;
    } catch (const std::length_error& e) {
      out.result = Result::BudgetExceeded;
      out.details.push_back({what + " (skipped: " + e.what() + ")", true, ""});
      return false;
    }
  }
};

void check_budgets(Outcome& out, const std::string& pipeline, F f, const TileSet& t) {
  Metrics mt = metrics(f);
  int vb = pipeline_var_budget(pipeline);
  out.add("variable budget <= " + std::to_string(vb), static_cast<int>(mt.nvars()) <= vb,
          std::to_string(mt.nvars()) + " variables");
  auto want = pipeline_letters(pipeline, t);
  auto got = mt.letters();
  bool ok = std::includes(want.begin(), want.end(), got.begin(), got.end());
  std::string extra;
  for (auto& l : got)
    if (!want.count(l)) extra += l + " ";
  out.add("letters within the pipeline alphabet", ok, extra);
}

}  // namespace

Outcome verify_reduction(const Machine& m, size_t n, const std::string& pipeline, const VerifyOptions& opt) {
  Outcome out;
  auto& names = pipeline_names();
  if (std::find(names.begin(), names.end(), pipeline) == names.end())
    throw std::invalid_argument("unknown pipeline " + pipeline);
  auto errs = validate_machine(m);
  if (!errs.empty()) {
    for (auto& e : errs) out.add("machine valid", false, e);
    out.settle();
    return out;
  }
  RunTrace tr = run_trace(m, n, opt.max_steps);
  if (tr.status != RunStatus::Halted) {
    out.add("machine halts within " + std::to_string(opt.max_steps) + " steps", false, tr.describe());
    out.settle();
    return out;
  }
  out.add("machine halts", true);
  bool hx = tr.halt_state == m.hx;
  GridSpec g;
  try {
    g = grid_spec(m, n);
  } catch (const std::runtime_error& e) {
    out.add("halting tile in column 0", false, e.what());
    out.settle();
    return out;
  }
  int k = static_cast<int>(g.tiles.k());
  F f = pipeline_formula(pipeline, g.tiles);
  out.files["sexp"] = render(f);
  check_budgets(out, pipeline, f, g.tiles);

  Run run{out, opt, hx};
  const std::string verdict_name = hx ? "countermodel shape forces the final formula" : "countermodel refutes the final formula";
  Structure main;
  bool have_main = false;

  auto body = [&] {
    if (pipeline == "classical-S0") {
      Structure grid;
      if (!run.build("grid model", [&] { grid = grid_model(g, opt.max_r); })) return;
      run.audits("grid", grid);
      run.root("grid satisfies Tiling", grid, classical_suite(g.tiles)["Tiling"], 0, true);
      main = s0_extension(grid, k);
      run.audits("s0 extension", main);
      run.root(verdict_name, main, f);
      have_main = true;
      return;
    }
    Structure sib;
    if (!run.build("sib grid model", [&] { sib = sib_grid_model(g, opt.max_r); })) return;
    run.audits("sib grid", sib);
    run.root("sib grid satisfies Tiling'", sib, directed_suite(g.tiles)["Tiling'"], 0, true);
    if (pipeline == "classical-S1") {
      main = s1_extension(sib, k);
      run.audits("s1 extension", main);
      run.root(verdict_name, main, f);
      have_main = true;
    } else if (pipeline == "modal-S2") {
      if (!run.build("star model", [&] { main = star_modal_model(sib); })) return;
      run.audits("star", main);
      run.root(verdict_name, main, f);
      have_main = true;
    } else if (pipeline == "modal-S3") {
      Structure s3m = s3_modal_model(sib, k);
      run.audits("s3 model", s3m);
      run.root("hub model decides S_3 of the guarded formula", s3m, s3(modal_suite(g.tiles)["M□_G"], k));
      if (!run.build("two-layer model", [&] { main = s2s3_modal_model(sib, k); })) return;
      run.audits("two-layer", main);
      run.root(verdict_name, main, f);
      have_main = true;
    } else if (pipeline == "modal-S4S5" || pipeline == "modal-S4S5p") {
      auto v = pipeline == "modal-S4S5" ? LayerVariant::S5Tails : LayerVariant::S5pLoop;
      std::vector<bool> kinds{false};
      if (v == LayerVariant::S5Tails) kinds.push_back(true);
      for (bool grz : kinds) {
        std::string tag = grz ? "reflexive layers" : "irreflexive layers";
        Structure lm;
        if (!run.build(tag, [&] { lm = gl_grz_layer_model(sib, k, v, grz); })) return;
        run.audits(tag, lm);
        run.root(verdict_name + " (" + tag + ")", lm, f);
        if (!grz) {
          main = lm;
          have_main = true;
        }
      }
    } else if (pipeline == "int-S6S7") {
      Structure base = s1_extension(sib, k);
      double cells = static_cast<double>(base.N()) * base.N() * (base.N() + 1) / 2;
      if (cells > opt.max_cells) {
        out.result = Result::BudgetExceeded;
        out.details.push_back({"relativized model (skipped: " + std::to_string(base.N()) + " elements need an antichain of " +
                                   std::to_string(base.N() * (base.N() + 1) / 2) + " worlds)",
                               true, ""});
        return;
      }
      if (!run.build("relativized model", [&] { main = int_relativized_model(base); })) return;
      run.audits("relativized", main);
      run.root(verdict_name, main, f);
      have_main = true;
    } else if (pipeline == "int-S8S9") {
      Structure two;
      if (!run.build("two-layer model", [&] { two = int_two_layer_model(sib, k); })) return;
      run.audits("two-layer", two, &sib);
      if (!run.build("F_0 attachment", [&] { main = attach_f0(two); })) return;
      run.audits("attached", main);
      run.root(verdict_name, main, f);
      have_main = true;
    }
  };
  body();
  if (have_main && main.W() * main.N() <= 200'000) out.files["model.json"] = model_to_json(main).dump(2);
  out.settle();
  return out;
}

}  // namespace tmred
