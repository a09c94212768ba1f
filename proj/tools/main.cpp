#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tmred/countermodels.hpp"
#include "tmred/generators.hpp"
#include "tmred/io.hpp"
#include "tmred/semantics.hpp"
#include "tmred/tiles.hpp"
#include "tmred/turing.hpp"
#include "tmred/verify.hpp"

using namespace tmred;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Session {
  std::string command;  // e.g. "tiling-gen"
  std::string key;      // argv plus the contents of every file it names
  bool as_json = false;
  std::string out_dir;
  Outcome out;
  std::string text;  // human output printed before the verdict

  int finish() {
    out.settle();
    if (!out_dir.empty() && !out.files.empty()) {
      fs::create_directories(out_dir);
      std::string h = content_hash(key);
      for (auto& [ext, content] : out.files) {
        fs::path p = fs::path(out_dir) / (command + "-" + h + "." + ext);
        std::ofstream(p, std::ios::binary) << content;
        out.artifacts.push_back(p.string());
      }
    }
    if (as_json) {
      std::cout << canonical(out.to_json());
    } else {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << "\n";
      for (auto& d : out.details)
        if (!d.holds) std::cout << "failed: " << d.name << (d.witness.empty() ? "" : " [" + d.witness + "]") << "\n";
      for (auto& a : out.artifacts) std::cout << "wrote " << a << "\n";
      std::cout << "result: " << result_name(out.result) << "\n";
    }
    return out.result == Result::Pass ? 0 : 1;
  }
};

Session S;

std::string input_key(int argc, char** argv) {
  std::string k;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--out") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0) continue;
    std::error_code ec;
    k += (fs::is_regular_file(a, ec) ? read_text_file(a) : a) + '\0';
  }
  return k;
}

// a path to an existing file, or literal S-expression text
F read_formula(const std::string& arg) {
  std::error_code ec;
  std::string text = fs::is_regular_file(arg, ec) ? read_text_file(arg) : arg;
  return parse(text);
}

Machine read_machine(const std::string& path) { return machine_from_json(read_json_file(path)); }

TileSet read_tiles(const std::string& machine, size_t n, const std::string& tileset) {
  if (!tileset.empty()) return tileset_from_json(read_json_file(tileset));
  if (machine.empty()) throw std::invalid_argument("need --machine or --tileset");
  return tile_set(read_machine(machine), n);
}

std::optional<F> lookup_family(const std::string& name, const std::optional<TileSet>& t) {
  std::vector<Suite> suites{misc_formulas(), ab_formulas()};
  if (t) {
    suites.push_back(classical_suite(*t));
    suites.push_back(directed_suite(*t));
    suites.push_back(modal_suite(*t));
    suites.push_back(int_suite(*t));
    suites.push_back(simulators_classical(static_cast<int>(t->k()) + 12));
    auto& p = pipeline_names();
    if (std::find(p.begin(), p.end(), name) != p.end()) return pipeline_formula(name, *t);
  }
  for (auto& s : suites)
    if (s.has(name)) return s[name];
  return std::nullopt;
}

F translate(const std::string& name, F f, int k) {
  if (name == "s0") return s0(f, k);
  if (name == "s1") return s1(f, k);
  if (name == "s2") return s2(f);
  if (name == "s3") return s3(f, k);
  if (name == "s3p") return s3_prime(f, k);
  if (name == "boxp") return box_p(f);
  if (name == "s4") return s4(f);
  if (name == "s5") return s5(f);
  if (name == "s5p") return s5_prime(f);
  if (name == "k") return kolmogorov(f);
  if (name == "pguard") return p_guard(f);
  if (name == "s6") return s6(f);
  if (name == "s7") return s7(f);
  if (name == "s8") return s8(f, k);
  if (name == "s9") return s9(f);
  if (name == "st") return st(f);
  if (name == "positivize") return positivize(f);
  throw std::invalid_argument("unknown translation " + name);
}

void emit_model(const Structure& m, const Structure* source) {
  std::string body = canonical(model_to_json(m));
  S.out.files["json"] = body;
  S.text = body;
  for (auto& a : check_assertions(m, source)) S.out.add(a.name, a.holds, a.witness);
}

int world_arg(const Structure& m, const std::string& w) {
  int i = m.world_index(w);
  if (i >= 0) return i;
  try {
    size_t pos = 0;
    int v = std::stoi(w, &pos);
    if (pos == w.size() && v >= 0 && static_cast<size_t>(v) < m.W()) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("unknown world " + w);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tmred: tilings, formula families and countermodels for undecidability reductions"};
  app.require_subcommand(1);
  app.add_flag("--json", S.as_json, "print the verdict as JSON");
  app.add_option("--out", S.out_dir, "directory for artifacts");
  double budget = -1;
  app.add_option("--budget", budget, "evaluation or search budget");

  std::string machine, tileset, model_file, formula_arg, name, world = "0", source_file, variant = "plain", kind = "classical";
  size_t n = 0, w = 8, h = 8, row = 0, max_steps = 10000, bound = 2, worlds = 2, domain = 3, a = 0, a2 = 1, extra = 0;
  int k = -1;
  bool cycles = false, grz = false, compact = false, reflexive = false, transitive = false, constant = false;

  // tm
  auto* tm = app.add_subcommand("tm", "Turing machine files");
  tm->require_subcommand(1);
  auto* tm_validate = tm->add_subcommand("validate", "list violations of the machine conditions");
  tm_validate->add_option("machine", machine)->required()->check(CLI::ExistingFile);
  auto* tm_run = tm->add_subcommand("run", "print the trace on input n");
  tm_run->add_option("machine", machine)->required()->check(CLI::ExistingFile);
  tm_run->add_option("--n", n, "input numeral");
  tm_run->add_option("--max-steps", max_steps);
  tm_run->add_flag("--detect-cycles", cycles);

  // tiles / tiling
  auto* tiles = app.add_subcommand("tiles", "tile types");
  tiles->require_subcommand(1);
  auto* tiles_compile = tiles->add_subcommand("compile", "tile types of a machine (T_M, or T_n with --n)");
  tiles_compile->add_option("machine", machine)->required()->check(CLI::ExistingFile);
  auto* tiles_n = tiles_compile->add_option("--n", n, "add the input tiles for n");

  auto* tiling = app.add_subcommand("tiling", "special tilings");
  tiling->require_subcommand(1);
  auto* tiling_gen = tiling->add_subcommand("gen", "render the special tiling window");
  auto* tiling_oracle = tiling->add_subcommand("oracle", "brute-force all tilings of a window seeded with t_0");
  auto* tiling_row = tiling->add_subcommand("row", "configuration read off a row");
  for (auto* c : {tiling_gen, tiling_oracle, tiling_row}) {
    c->set_help_flag("--help", "print this help message and exit");
    c->add_option("machine", machine)->required()->check(CLI::ExistingFile);
    c->add_option("--n", n);
    c->add_option("--w", w);
    c->add_option("--h", h);
  }
  tiling_row->add_option("--row", row);

  // formulas
  auto* formula = app.add_subcommand("formula", "formula families");
  formula->require_subcommand(1);
  auto* formula_gen = formula->add_subcommand("gen", "emit a named formula as an S-expression");
  formula_gen->add_option("family", name)->required();
  formula_gen->add_option("--machine", machine)->check(CLI::ExistingFile);
  formula_gen->add_option("--n", n);
  formula_gen->add_option("--tileset", tileset)->check(CLI::ExistingFile);

  auto* tr = app.add_subcommand("translate", "apply a translation or substitution");
  tr->add_option("name", name, "s0 s1 s2 s3 s3p boxp s4 s5 s5p k pguard s6 s7 s8 s9 st positivize")->required();
  tr->add_option("formula", formula_arg, "file or S-expression")->required();
  tr->add_option("--k", k, "k_n for the tile-indexed steps");

  // models
  auto* model = app.add_subcommand("model", "countermodel constructions");
  model->require_subcommand(1);
  auto* model_gen = model->add_subcommand("gen", "build a construction and audit it");
  model_gen->add_option("construction", name)->required();
  model_gen->add_option("--machine", machine)->check(CLI::ExistingFile);
  model_gen->add_option("--n", n);
  model_gen->add_option("--source", source_file, "classical source model instead of a machine")->check(CLI::ExistingFile);
  model_gen->add_option("--k", k);
  model_gen->add_flag("--compact", compact, "use the compact sib grid as source");
  model_gen->add_option("--variant", variant, "layer variant: plain, tails, loop");
  model_gen->add_flag("--grz", grz, "reflexive layers");
  model_gen->add_option("--extra-leaves", extra);
  model_gen->add_option("--domain", domain);
  model_gen->add_option("--a", a);
  model_gen->add_option("--a2", a2);

  auto* frame = app.add_subcommand("frame", "frame properties");
  frame->require_subcommand(1);
  auto* frame_rep = frame->add_subcommand("report", "partial order, depth, antichains");
  frame_rep->add_option("model", model_file)->required()->check(CLI::ExistingFile);

  auto* check = app.add_subcommand("check", "evaluate a formula in a model");
  check->add_option("model", model_file)->required()->check(CLI::ExistingFile);
  check->add_option("formula", formula_arg)->required();
  check->add_option("--world", world, "name or index");

  auto* search = app.add_subcommand("search", "bounded validity search");
  search->add_option("formula", formula_arg)->required();
  search->add_option("--bound", bound, "domain bound (universe size for Kripke search)");
  search->add_option("--kind", kind, "classical, modal or int");
  search->add_option("--worlds", worlds);
  search->add_flag("--reflexive", reflexive);
  search->add_flag("--transitive", transitive);
  search->add_flag("--constant", constant, "constant domains");

  auto* verify = app.add_subcommand("verify", "run a reduction pipeline end to end");
  verify->add_option("pipeline", name)->required();
  verify->add_option("machine", machine)->required()->check(CLI::ExistingFile);
  verify->add_option("--n", n);
  verify->add_option("--max-steps", max_steps);

  CLI11_PARSE(app, argc, argv);
  S.key = input_key(argc, argv);

  try {
    if (tm_validate->parsed()) {
      S.command = "tm-validate";
      auto errs = validate_machine(read_machine(machine));
      S.out.add("machine valid", errs.empty(), errs.empty() ? "" : errs.front());
      for (size_t i = 1; i < errs.size(); ++i) S.out.add("machine valid", false, errs[i]);
      S.text = errs.empty() ? "ok" : "";
    } else if (tm_run->parsed()) {
      S.command = "tm-run";
      Machine m = read_machine(machine);
      RunTrace t = run_trace(m, n, max_steps, cycles);
      json j;
      j["status"] = t.describe();
      j["configs"] = json::array();
      for (auto& c : t.configs) j["configs"].push_back(join_word(c.word(m.blank)));
      S.out.files["json"] = canonical(j);
      std::ostringstream o;
      for (size_t i = 0; i < t.configs.size(); ++i) o << i << " " << join_word(t.configs[i].word(m.blank)) << "\n";
      o << t.describe() << "\n";
      S.text = o.str();
      S.out.add("machine halts", t.status == RunStatus::Halted, t.describe());
    } else if (tiles_compile->parsed()) {
      S.command = "tiles-compile";
      Machine m = read_machine(machine);
      TileSet t;
      if (tiles_n->count()) {
        t = tile_set(m, n);
      } else {
        t.tiles = machine_tiles(m);
      }
      json j = tileset_to_json(t);
      if (!tiles_n->count()) j.erase("n");
      S.out.files["json"] = canonical(j);
      std::ostringstream o;
      for (size_t i = 0; i < t.size(); ++i) {
        auto& tt = t.tiles[i];
        o << i << " " << tt.id << "  left " << mark_str(tt.left) << "  right " << mark_str(tt.right) << "  up "
          << mark_str(tt.up) << "  down " << mark_str(tt.down) << "\n";
      }
      S.text = o.str();
    } else if (tiling_gen->parsed() || tiling_row->parsed()) {
      Machine m = read_machine(machine);
      TileSet t = tile_set(m, n);
      Tiling f = special_window(m, n, w, h);
      S.out.add("adjacency", adjacency_ok(t, f));
      if (tiling_gen->parsed()) {
        S.command = "tiling-gen";
        S.text = render_tiling(f, t);
        S.out.files["txt"] = S.text;
        S.out.files["json"] = canonical(tiling_to_json(f, t));
      } else {
        S.command = "tiling-row";
        if (row >= h) throw std::invalid_argument("row outside the window");
        S.text = join_word(row_to_configuration(t, f, row, m.blank));
        S.out.files["txt"] = S.text + "\n";
      }
    } else if (tiling_oracle->parsed()) {
      S.command = "tiling-oracle";
      Machine m = read_machine(machine);
      TileSet t = tile_set(m, n);
      size_t b = budget > 0 ? static_cast<size_t>(budget) : 50'000'000;
      try {
        auto all = brute_force_tilings(t, w, h, SeedCell{0, 0, 0}, b);
        S.out.add("exactly one tiling", all.size() == 1, std::to_string(all.size()) + " tilings");
        if (!all.empty()) S.out.add("it is the special tiling", all[0] == special_window(m, n, w, h));
        json j = json::array();
        for (auto& f : all) j.push_back(tiling_to_json(f, t));
        S.out.files["json"] = canonical(j);
        S.text = std::to_string(all.size()) + " tilings";
      } catch (const std::length_error& e) {
        S.out.result = Result::BudgetExceeded;
        S.text = e.what();
      }
    } else if (formula_gen->parsed()) {
      S.command = "formula-gen";
      std::optional<TileSet> t;
      if (!machine.empty() || !tileset.empty()) t = read_tiles(machine, n, tileset);
      auto f = lookup_family(name, t);
      if (!f) throw std::invalid_argument("unknown family " + name + (t ? "" : " (tile families need --machine or --tileset)"));
      S.text = render(*f);
      S.out.files["sexp"] = S.text + "\n";
      Metrics mt = metrics(*f);
      std::ostringstream o;
      o << mt.nvars() << " variables, letters";
      for (auto& l : mt.letters()) o << " " << l;
      S.text += "\n; " + o.str();
    } else if (tr->parsed()) {
      S.command = "translate-" + name;
      F f = translate(name, read_formula(formula_arg), k);
      S.text = render(f);
      S.out.files["sexp"] = S.text + "\n";
    } else if (model_gen->parsed()) {
      S.command = "model-gen-" + name;
      std::optional<GridSpec> g;
      if (!machine.empty()) g = grid_spec(read_machine(machine), n);
      int kk = k >= 0 ? k : g ? static_cast<int>(g->tiles.k()) : -1;
      auto source = [&]() -> Structure {
        if (!source_file.empty()) return model_from_json(read_json_file(source_file));
        if (!g) throw std::invalid_argument(name + " needs --machine or --source");
        return compact ? compact_sib_grid_model(*g) : sib_grid_model(*g);
      };
      auto need_k = [&] {
        if (kk < 0) throw std::invalid_argument(name + " needs --k or --machine");
        return static_cast<size_t>(kk);
      };
      if (name == "grid") {
        if (!g) throw std::invalid_argument("grid needs --machine");
        emit_model(grid_model(*g), nullptr);
      } else if (name == "sib-grid") {
        emit_model(source(), nullptr);
      } else if (name == "cycle-source") {
        emit_model(cycle_source(toy_tileset()), nullptr);
      } else if (name == "s0-extension") {
        Structure base = !source_file.empty() ? model_from_json(read_json_file(source_file)) : grid_model(*g);
        emit_model(s0_extension(base, need_k()), nullptr);
      } else if (name == "s1-extension") {
        emit_model(s1_extension(source(), need_k()), nullptr);
      } else if (name == "chain-extension") {
        emit_model(chain_extension(source(), need_k(), grz), nullptr);
      } else if (name == "star") {
        Structure src = source();
        emit_model(star_modal_model(src, extra, grz), &src);
      } else if (name == "s3-modal") {
        Structure src = source();
        emit_model(s3_modal_model(src, need_k()), &src);
      } else if (name == "s2s3-modal") {
        Structure src = source();
        emit_model(s2s3_modal_model(src, need_k()), &src);
      } else if (name == "p-modal") {
        Structure src = source();
        emit_model(p_modal_model(src, need_k()), &src);
      } else if (name == "layer") {
        Structure src = source();
        LayerVariant v = variant == "plain" ? LayerVariant::Plain
                         : variant == "tails" ? LayerVariant::S5Tails
                         : variant == "loop" ? LayerVariant::S5pLoop
                                             : throw std::invalid_argument("variant must be plain, tails or loop");
        emit_model(gl_grz_layer_model(src, need_k(), v, grz), &src);
      } else if (name == "int-relativized") {
        Structure src = source();
        emit_model(int_relativized_model(src), &src);
      } else if (name == "int-tiling") {
        Structure src = source();
        emit_model(int_tiling_model(src), &src);
      } else if (name == "int-two-layer") {
        Structure src = source();
        emit_model(int_two_layer_model(src, need_k()), &src);
      } else if (name == "f0-frame") {
        emit_model(f0_frame(), nullptr);
      } else if (name == "a-suitable") {
        emit_model(a_suitable_model(domain, a, a2), nullptr);
      } else if (name == "attach-f0") {
        if (source_file.empty()) throw std::invalid_argument("attach-f0 needs --source with an intuitionistic model");
        emit_model(attach_f0(model_from_json(read_json_file(source_file))), nullptr);
      } else {
        throw std::invalid_argument("unknown construction " + name);
      }
    } else if (frame_rep->parsed()) {
      S.command = "frame-report";
      Structure m = model_from_json(read_json_file(model_file));
      json j = frame_report(m).to_json();
      S.text = canonical(j);
      S.out.files["json"] = S.text;
    } else if (check->parsed()) {
      S.command = "check";
      Structure m = model_from_json(read_json_file(model_file));
      F f = read_formula(formula_arg);
      int wi = world_arg(m, world);
      Evaluator ev(m);
      bool ok = ev.valid_at(f, wi);
      S.out.add("formula holds at " + m.worlds[wi] + " under every assignment", ok);
      S.text = ok ? "holds" : "does not hold";
    } else if (search->parsed()) {
      S.command = "search";
      F f = read_formula(formula_arg);
      Verdict v;
      if (kind == "classical") {
        v = budget > 0 ? bounded_validity_classical(f, bound, static_cast<size_t>(budget)) : bounded_validity_classical(f, bound);
      } else if (kind == "modal" || kind == "int") {
        KripkeFamily fam;
        fam.kind = kind == "modal" ? Kind::Modal : Kind::Int;
        fam.max_worlds = worlds;
        fam.universe = bound;
        fam.reflexive = reflexive || kind == "int";
        fam.transitive = transitive || kind == "int";
        fam.expanding = !constant;
        v = budget > 0 ? bounded_validity_kripke(f, fam, static_cast<size_t>(budget)) : bounded_validity_kripke(f, fam);
      } else {
        throw std::invalid_argument("kind must be classical, modal or int");
      }
      std::ostringstream o;
      o << v.models_checked << " models checked";
      if (v.budget_exceeded) {
        S.out.result = Result::BudgetExceeded;
        o << ", budget exceeded";
      } else {
        S.out.add("valid up to the bound", v.valid, v.countermodel ? "countermodel at world " + std::to_string(v.world) : "");
      }
      if (v.countermodel) S.out.files["json"] = canonical(model_to_json(*v.countermodel));
      S.text = o.str();
    } else if (verify->parsed()) {
      S.command = "verify-" + name;
      VerifyOptions opt;
      opt.max_steps = max_steps;
      if (budget > 0) opt.budget = budget;
      S.out = verify_reduction(read_machine(machine), n, name, opt);
      std::ostringstream o;
      for (auto& d : S.out.details) o << (d.holds ? "ok   " : "FAIL ") << d.name << "\n";
      S.text = o.str();
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.pos << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return S.finish();
}
