#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "workbench/error.hpp"
#include "workbench/tm.hpp"

namespace wb::tiling {

// A unit square with a letter at each corner. Two tiles may sit next to each
// other when the letters on the shared side agree.
struct Tile {
    uint8_t nw, ne, sw, se;
    bool operator==(const Tile&) const = default;
};

enum class Side { Right, Below };

// Right: t2 to the right of t1; Below: t2 below t1.
bool sides_match(const Tile& t1, const Tile& t2, Side side);

struct TilingInstance {
    std::vector<Tile> tiles;        // the tile set (deduplicated)
    std::vector<uint32_t> first_row; // indices into tiles
    uint32_t height = 1;            // rows including the given first row
    uint32_t alphabet = 0;          // letters in use (<= 26)

    void validate() const;
};

struct BacktrackResult {
    bool tileable = false;
    std::vector<std::vector<uint32_t>> witness; // tile indices, row-major
};

// Exact row-by-row search with a cell budget (BudgetExceeded beyond it).
BacktrackResult solve_backtrack(const TilingInstance& inst, uint64_t budget = 4'000'000);

// Column dynamic programming; needs height <= 2*log2(width) + 4.
bool solve_narrow_dp(const TilingInstance& inst);

// ---- reduction from a machine run ------------------------------------------
//
// Builds the tiling instance whose tilings of a given height are exactly the
// legal space-time tables of m running on input v with a nondeterministic
// witness w (|w| = |v|) spliced in below the ? slots of the top row. The
// machine must use an explicit halt state (reject = halt, accept = loop);
// halt cells have no tiles, so rejecting runs stop being tileable past the
// halt row.
struct Reduction {
    TilingInstance instance;
    uint32_t witness_slots = 0;
    uint32_t width = 0; // table columns, void borders included
};

Reduction tiles_from_run(const wb::tm::BinaryTM& m, const Bits& v, uint32_t height);

// Brute-force oracle for the reduction: does some witness w keep the run free
// of the halt state for the same number of table rows?
bool run_table_exists(const wb::tm::BinaryTM& m, const Bits& v, uint32_t height);

// Tile file round-trip (grammar: `tile <nw> <ne> <sw> <se>` / `firstrow:` /
// `height:` lines, letters a-z).
TilingInstance parse_tiles(const std::string& text);
std::string print_tiles(const TilingInstance& inst);

} // namespace wb::tiling
