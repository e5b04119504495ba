#include "workbench/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "workbench/tmcell.hpp"

namespace wb::tiling {

bool sides_match(const Tile& t1, const Tile& t2, Side side) {
    if (side == Side::Right) return t1.ne == t2.nw && t1.se == t2.sw;
    return t1.sw == t2.nw && t1.se == t2.ne;
}

void TilingInstance::validate() const {
    check(height >= 1, "BadInstance", "height must be at least 1");
    check(!first_row.empty(), "BadInstance", "first row must be non-empty");
    check(alphabet <= 26, "BadInstance", "at most 26 corner letters");
    for (const Tile& t : tiles)
        check(t.nw < alphabet && t.ne < alphabet && t.sw < alphabet && t.se < alphabet,
              "BadInstance", "tile letter outside the declared alphabet");
    for (uint32_t id : first_row)
        check(id < tiles.size(), "BadInstance", "first row references a missing tile");
    for (size_t i = 1; i < first_row.size(); ++i)
        check(sides_match(tiles[first_row[i - 1]], tiles[first_row[i]], Side::Right),
              "BadInstance", "first row tiles must be pairwise side-compatible");
}

BacktrackResult solve_backtrack(const TilingInstance& inst, uint64_t budget) {
    inst.validate();
    BacktrackResult res;
    uint32_t w = (uint32_t)inst.first_row.size();
    std::vector<std::vector<uint32_t>> grid(inst.height, std::vector<uint32_t>(w, 0));
    grid[0].assign(inst.first_row.begin(), inst.first_row.end());
    if (inst.height == 1) {
        res.tileable = true;
        res.witness = grid;
        return res;
    }
    uint64_t used = 0;

    // fill row-major, trying every tile that matches above and to the left
    std::function<bool(uint32_t, uint32_t)> fill = [&](uint32_t r, uint32_t c) -> bool {
        if (r == inst.height) return true;
        uint32_t nr = c + 1 == w ? r + 1 : r;
        uint32_t nc = c + 1 == w ? 0 : c + 1;
        for (uint32_t id = 0; id < inst.tiles.size(); ++id) {
            if (++used > budget) fail("BudgetExceeded", "tiling search budget exhausted");
            const Tile& t = inst.tiles[id];
            if (!sides_match(inst.tiles[grid[r - 1][c]], t, Side::Below)) continue;
            if (c > 0 && !sides_match(inst.tiles[grid[r][c - 1]], t, Side::Right)) continue;
            grid[r][c] = id;
            if (fill(nr, nc)) return true;
        }
        return false;
    };
    res.tileable = fill(1, 0);
    if (res.tileable) res.witness = grid;
    return res;
}

bool solve_narrow_dp(const TilingInstance& inst) {
    inst.validate();
    uint32_t w = (uint32_t)inst.first_row.size();
    uint32_t h = inst.height;
    check(double(h) <= 2.0 * std::log2(double(std::max(2u, w))) + 4.0, "HeightTooLarge",
          "narrow DP wants height <= 2*log2(width) + 4");
    if (h == 1) return true;
    uint32_t nt = (uint32_t)inst.tiles.size();
    if (nt == 0) return false;

    // a column state is the stack of h tiles below the pinned first-row tile;
    // enumerate vertically consistent stacks per column lazily via counters
    uint64_t states = 1;
    for (uint32_t i = 0; i + 1 < h; ++i) {
        states *= nt;
        check(states <= 4'000'000, "BudgetExceeded", "column state space too large");
    }

    auto column_ok = [&](uint32_t col, uint64_t code, std::vector<uint32_t>& out) {
        out.resize(h);
        out[0] = inst.first_row[col];
        uint64_t v = code;
        for (uint32_t r = 1; r < h; ++r) {
            out[r] = uint32_t(v % nt);
            v /= nt;
            if (!sides_match(inst.tiles[out[r - 1]], inst.tiles[out[r]], Side::Below))
                return false;
        }
        return true;
    };

    std::vector<uint64_t> frontier;
    std::vector<uint32_t> col, prev_col;
    for (uint64_t code = 0; code < states; ++code)
        if (column_ok(0, code, col)) frontier.push_back(code);
    for (uint32_t c = 1; c < w && !frontier.empty(); ++c) {
        std::vector<uint64_t> next;
        for (uint64_t code = 0; code < states; ++code) {
            if (!column_ok(c, code, col)) continue;
            for (uint64_t pcode : frontier) {
                column_ok(c - 1, pcode, prev_col);
                bool ok = true;
                for (uint32_t r = 0; ok && r < h; ++r)
                    ok = sides_match(inst.tiles[prev_col[r]], inst.tiles[col[r]], Side::Right);
                if (ok) {
                    next.push_back(code);
                    break;
                }
            }
        }
        frontier = std::move(next);
    }
    return !frontier.empty();
}

// ---- reduction ---------------------------------------------------------------

namespace {

using wb::tm::BinaryTM;

// table letters: the tmcell alphabet shifted by the init letters
// 0 void/top margins share the void letter; 1 TOP; 2 I0; 3 I1; 4 IQ; 5 IB;
// 6.. tmcell codes (void, plains, heads)
enum : uint8_t { LVoid = 0, LTop = 1, LI0 = 2, LI1 = 3, LIQ = 4, LIB = 5, LCell = 6 };

uint8_t cell_letter(uint8_t tmcell_sym) { return uint8_t(LCell + tmcell_sym); }

struct TableShape {
    uint32_t width = 0;     // columns incl. one void border on each side
    uint32_t slots = 0;     // witness cells
    uint32_t input_len = 0;
};

// letter of table row r (0 = top margin, 1 = init row, >= 2 = configs), col c
// (col 0 and width-1 are permanent void borders)
uint8_t table_letter(const TableShape& sh, const BinaryTM& m, const Bits& v, const Bits& w,
                     uint32_t r, uint32_t c) {
    if (c == 0 || c + 1 == sh.width) return cell_letter(tmcell::Void);
    uint32_t pos = c - 1;
    if (r == 0) return LTop;
    if (r == 1) {
        if (pos < sh.input_len) return v[pos] ? LI1 : LI0;
        if (pos < sh.input_len + sh.slots) return LIQ;
        return LIB;
    }
    // config at time r-1; the tape holds v then w then blanks
    Bits full = v;
    full.insert(full.end(), w.begin(), w.end());
    return cell_letter(tmcell::cell_at(m, full, int64_t(pos), r - 1));
}

} // namespace

Reduction tiles_from_run(const BinaryTM& m, const Bits& v, uint32_t height) {
    check(m.halt_mode == wb::tm::HaltMode::ExplicitHaltState && m.extend_right, "BadMachine",
          "the reduction wants an explicit-halt machine (reject halts, accept loops)");
    check(height >= 2, "BadInput", "height >= 2 (the first row is given)");
    check(m.state_count <= 8, "BadMachine", "letter budget caps the reduction at 8 states");

    TableShape sh;
    sh.input_len = (uint32_t)v.size();
    sh.slots = (uint32_t)v.size();
    sh.width = sh.input_len + sh.slots + height + 3;

    Reduction out;
    out.witness_slots = sh.slots;
    out.width = sh.width;
    TilingInstance& inst = out.instance;
    inst.height = height;
    inst.alphabet = uint8_t(LCell + tmcell::alphabet_size(m));
    check(inst.alphabet <= 26, "BadMachine", "corner alphabet exceeds 26 letters");

    std::map<std::array<uint8_t, 4>, uint32_t> seen;
    auto tile_id = [&](uint8_t nw, uint8_t ne, uint8_t sw, uint8_t se) {
        std::array<uint8_t, 4> key{nw, ne, sw, se};
        auto it = seen.find(key);
        if (it != seen.end()) return it->second;
        uint32_t id = (uint32_t)inst.tiles.size();
        inst.tiles.push_back(Tile{nw, ne, sw, se});
        seen.emplace(key, id);
        return id;
    };

    // Tiles come from every 2x2 window of every legal table; enumerating all
    // witnesses of all lengths is out of reach, so windows are generated
    // schema-wise: (a) top-margin row over the init row; (b) init row over
    // every config the ?-choices can make at time 1; (c) config-over-config
    // windows for every locally consistent neighbourhood. The first row of
    // the instance is the margin-over-init row, which never shows w.
    Bits zero_w(sh.slots, 0);

    // (a) + first row, taken from the w-independent rows 0 and 1
    for (uint32_t c = 0; c + 1 < sh.width; ++c) {
        uint8_t nw = table_letter(sh, m, v, zero_w, 0, c);
        uint8_t ne = table_letter(sh, m, v, zero_w, 0, c + 1);
        uint8_t sw = table_letter(sh, m, v, zero_w, 1, c);
        uint8_t se = table_letter(sh, m, v, zero_w, 1, c + 1);
        inst.first_row.push_back(tile_id(nw, ne, sw, se));
    }

    // (b) init row over the time-1 configuration: under a ? both bits exist
    auto init_below = [&](uint32_t pos) -> std::vector<uint8_t> {
        // cell content options of config time 1 at tape position pos
        std::vector<uint8_t> opts;
        if (pos == 0) {
            if (sh.input_len > 0) {
                opts.push_back(tmcell::head_sym(v[0], m.start));
            } else if (sh.slots > 0) {
                opts.push_back(tmcell::head_sym(0, m.start));
                opts.push_back(tmcell::head_sym(1, m.start));
            } else {
                opts.push_back(tmcell::head_sym(0, m.start));
            }
            return opts;
        }
        if (pos < sh.input_len) {
            opts.push_back(tmcell::plain_sym(v[pos], false));
        } else if (pos < sh.input_len + sh.slots) {
            opts.push_back(tmcell::plain_sym(0, false));
            opts.push_back(tmcell::plain_sym(1, false));
        } else {
            opts.push_back(tmcell::plain_sym(0, false));
        }
        return opts;
    };
    for (uint32_t c = 0; c + 1 < sh.width; ++c) {
        auto left_opts = c == 0 ? std::vector<uint8_t>{tmcell::Void}
                                : init_below(c - 1);
        auto right_opts = c + 1 == sh.width - 1 ? std::vector<uint8_t>{tmcell::Void}
                                                : init_below(c);
        uint8_t nw = table_letter(sh, m, v, zero_w, 1, c);
        uint8_t ne = table_letter(sh, m, v, zero_w, 1, c + 1);
        for (uint8_t lo : left_opts)
            for (uint8_t ro : right_opts)
                tile_id(nw, ne, cell_letter(lo), cell_letter(ro));
    }

    // (c) config-over-config: any locally consistent window whose lower row
    // is what the transition rules make of some radius-1 context; halt-state
    // heads get no tiles at all
    uint32_t sigma = tmcell::alphabet_size(m);
    auto is_halt_head = [&](uint8_t s) {
        return tmcell::is_head(s) && tmcell::head_state(s) == m.halt_state();
    };
    for (uint32_t a = 0; a < sigma; ++a)
        for (uint32_t b = 0; b < sigma; ++b)
            for (uint32_t cc = 0; cc < sigma; ++cc)
                for (uint32_t d = 0; d < sigma; ++d) {
                    uint8_t w0 = uint8_t(a), w1 = uint8_t(b), w2 = uint8_t(cc), w3 = uint8_t(d);
                    // upper pair must be locally possible: no two cells
                    // pointing away from each other, and no two plain cells
                    // pointing at each other (the head would have to sit
                    // between them) - together these force one head per row
                    if (tmcell::away_pair(w0, w1, m)) continue;
                    if (tmcell::is_plain(w0) && tmcell::is_plain(w1) && tmcell::plain_right(w0) &&
                        !tmcell::plain_right(w1))
                        continue;
                    if (is_halt_head(w0) || is_halt_head(w1)) continue;
                    if (tmcell::is_head(w0) && tmcell::is_head(w1)) continue;
                    if ((w0 == tmcell::Void) != (w2 == tmcell::Void)) continue;
                    if ((w1 == tmcell::Void) != (w3 == tmcell::Void)) continue;
                    if (w0 == tmcell::Void && w1 == tmcell::Void) continue; // left margin pair
                    // nothing points or walks into the right margin
                    if (w1 == tmcell::Void && w0 != tmcell::Void && tmcell::ptr_of(w0, m) == 1)
                        continue;
                    // lower row must follow from the upper row under every
                    // completion: demand both cells are forced by this window
                    // plus the head-adjacency discipline
                    // left cell: context (?, w0, w1): deterministic unless the
                    // head enters from outside the window
                    bool l_ok = false, r_ok = false;
                    if (tmcell::is_head(w0)) {
                        l_ok = w2 == tmcell::next_cell(tmcell::Void, w0, w1, m);
                    } else {
                        // possible outside-left heads: either none or a head
                        // stepping right onto w0
                        if (w2 == tmcell::next_cell(tmcell::Void, w0, w1, m)) l_ok = true;
                        if (!tmcell::is_head(w1)) {
                            for (uint32_t q = 0; q < m.state_count && !l_ok; ++q)
                                for (uint8_t bit = 0; bit <= 1 && !l_ok; ++bit) {
                                    uint8_t hl = tmcell::head_sym(bit, q);
                                    if (m.rule(q, bit).dir != wb::tm::Dir::R) continue;
                                    if (w2 == tmcell::next_cell(hl, w0, w1, m)) l_ok = true;
                                }
                        }
                    }
                    if (tmcell::is_head(w1)) {
                        r_ok = w3 == tmcell::next_cell(w0, w1, tmcell::Void, m);
                    } else {
                        if (w3 == tmcell::next_cell(w0, w1, tmcell::Void, m)) r_ok = true;
                        if (!tmcell::is_head(w0)) {
                            for (uint32_t q = 0; q < m.state_count && !r_ok; ++q)
                                for (uint8_t bit = 0; bit <= 1 && !r_ok; ++bit) {
                                    uint8_t hr = tmcell::head_sym(bit, q);
                                    if (m.rule(q, bit).dir != wb::tm::Dir::L) continue;
                                    if (w3 == tmcell::next_cell(w0, w1, hr, m)) r_ok = true;
                                }
                        }
                    }
                    if (!l_ok || !r_ok) continue;
                    if (is_halt_head(w2) || is_halt_head(w3)) continue;
                    tile_id(cell_letter(w0), cell_letter(w1), cell_letter(w2), cell_letter(w3));
                }

    inst.validate();
    return out;
}

bool run_table_exists(const BinaryTM& m, const Bits& v, uint32_t height) {
    check(height >= 2, "BadInput", "height >= 2");
    uint32_t slots = (uint32_t)v.size();
    // table rows 2..height hold configs at times 1..height-1, so the machine
    // must avoid its halt state for height-2 steps after the start
    uint64_t steps = height >= 2 ? height - 2 : 0;
    for (uint64_t wbits = 0; wbits < (1ull << slots); ++wbits) {
        Bits full = v;
        for (uint32_t i = 0; i < slots; ++i) full.push_back((wbits >> i) & 1);
        wb::tm::TapeState cfg = wb::tm::tm_start(m, full);
        bool dead = false;
        for (uint64_t s = 0; s < steps; ++s) {
            if (cfg.state == m.halt_state()) {
                dead = true;
                break;
            }
            if (cfg.head < 0) break; // rolled off: frozen rows stay legal
            cfg = wb::tm::tm_step(m, cfg);
        }
        if (!dead && cfg.state != m.halt_state()) return true;
        if (!dead && steps == 0) return true;
    }
    return false;
}

// ---- text format --------------------------------------------------------------

TilingInstance parse_tiles(const std::string& text) {
    TilingInstance inst;
    inst.height = 1;
    std::istringstream in(text);
    std::string line;
    uint8_t maxletter = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "tile") {
            std::string a, b, c, d;
            check(bool(ls >> a >> b >> c >> d) && a.size() == 1 && b.size() == 1 &&
                      c.size() == 1 && d.size() == 1,
                  "SyntaxError", "line " + std::to_string(lineno) + ": tile wants 4 letters");
            auto code = [&](const std::string& s) {
                check(s[0] >= 'a' && s[0] <= 'z', "SyntaxError",
                      "line " + std::to_string(lineno) + ": letters are a-z");
                return uint8_t(s[0] - 'a');
            };
            Tile t{code(a), code(b), code(c), code(d)};
            maxletter = std::max({maxletter, t.nw, t.ne, t.sw, t.se});
            inst.tiles.push_back(t);
        } else if (head == "firstrow:") {
            uint32_t id;
            while (ls >> id) inst.first_row.push_back(id);
        } else if (head == "height:") {
            check(bool(ls >> inst.height), "SyntaxError",
                  "line " + std::to_string(lineno) + ": height wants a number");
        } else {
            fail("SyntaxError", "line " + std::to_string(lineno) + ": unknown directive '" +
                                    head + "'");
        }
    }
    inst.alphabet = uint8_t(maxletter + 1);
    inst.validate();
    return inst;
}

std::string print_tiles(const TilingInstance& inst) {
    std::ostringstream os;
    for (const Tile& t : inst.tiles)
        os << "tile " << char('a' + t.nw) << ' ' << char('a' + t.ne) << ' ' << char('a' + t.sw)
           << ' ' << char('a' + t.se) << '\n';
    os << "firstrow:";
    for (uint32_t id : inst.first_row) os << ' ' << id;
    os << '\n';
    os << "height: " << inst.height << '\n';
    return os.str();
}

} // namespace wb::tiling
