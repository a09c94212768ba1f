#pragma once
#include <string>
#include <vector>

#include "tmred/semantics.hpp"
#include "tmred/tiles.hpp"
#include "tmred/turing.hpp"

namespace tmred {

struct GridSpec {
  Machine machine;
  size_t n = 0;
  size_t m = 0;  // first row with t_1 or t_2 in column 0
  size_t r = 0;  // max(m, n+1)
  std::string halted_in;
  TileSet tiles;
};
// throws std::runtime_error when no halting tile appears within max_rows
GridSpec grid_spec(const Machine& machine, size_t n, size_t max_rows = 200);

// models carry meta {"construction", "anchor", "asserted": [...]}
struct Assertion {
  std::string name;
  bool holds = false;
  std::string witness;
};

Structure grid_model(const GridSpec& g, size_t max_r = 32);
Structure sib_grid_model(const GridSpec& g, size_t max_r = 32);
// same shape, but the 4-cycles start at the first settled column and at the halting row
Structure compact_sib_grid_model(const GridSpec& g, size_t max_r = 32);
// three tiles, t_0 matching itself both ways; k = 2
TileSet toy_tileset();
// symmetric 4-cycle a0..a3 with P_0 everywhere and R_{i+1}, U_{i+1} at a_i
Structure cycle_source(const TileSet& t);

Structure s0_extension(const Structure& grid, size_t k);
Structure s1_extension(const Structure& sib, size_t k);
// classical D' used by the modal and two-variable constructions; chain to e_{k+10}, or e_{k+11} with e_C
Structure chain_extension(const Structure& sib, size_t k, bool with_c);

// hub w0, leaves w_ij for all ordered pairs, plus extra leaves with Q everywhere
Structure star_modal_model(const Structure& sib, size_t extra_leaves = 0, bool reflexive_hub = false);
// hub w0 sees w_a for every a in the source domain; P constant over chain_extension(.., false)
Structure s3_modal_model(const Structure& sib, size_t k);
// the two-layer model for S_2 after S_3
Structure s2s3_modal_model(const Structure& sib, size_t k);
// p-relativized model: P differs at w_a by the C-edge of a
Structure p_modal_model(const Structure& sib, size_t k);
enum class LayerVariant { Plain, S5Tails, S5pLoop };
Structure gl_grz_layer_model(const Structure& sib, size_t k, LayerVariant v, bool grz);

Structure int_relativized_model(const Structure& sib);
Structure int_tiling_model(const Structure& sib);
Structure int_two_layer_model(const Structure& sib, size_t k);

// the 18 worlds in a fixed order, with the reflexive-transitive closure of the generating pairs
const std::vector<std::string>& f0_worlds();
std::vector<std::pair<int, int>> f0_pairs();
Structure f0_frame();
Structure a_suitable_model(size_t domain, size_t a, size_t a2);
Structure attach_f0(const Structure& base);

// recomputes the asserted equivalences of a built model; source is the model it was built from, if any
std::vector<Assertion> check_assertions(const Structure& built, const Structure* source = nullptr);

bool is_bipartite(const Structure& c);

}  // namespace tmred
