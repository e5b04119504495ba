#include "workbench/cellular.hpp"

#include <algorithm>
#include <sstream>

namespace wb::cellular {

CA1D CA1D::from_table(uint32_t alphabet, std::vector<uint32_t> table) {
    check(table.size() == size_t(alphabet) * alphabet * alphabet, "BadRule",
          "rule table must be total on alphabet^3");
    for (uint32_t v : table)
        check(v < alphabet, "SymbolOutOfAlphabet", "rule output outside alphabet");
    check(table[0] == 0, "BadRule", "quiescent blank must map (q,q,q) -> q");
    CA1D ca;
    ca.alphabet = alphabet;
    ca.rule = [alphabet, t = std::move(table)](uint32_t l, uint32_t s, uint32_t r) {
        return t[(l * alphabet + s) * alphabet + r];
    };
    return ca;
}

Row ca_step(const CA1D& ca, const Row& row) {
    Row next(row.size());
    for (size_t i = 0; i < row.size(); ++i) {
        uint32_t l = i > 0 ? row[i - 1] : 0;
        uint32_t r = i + 1 < row.size() ? row[i + 1] : 0;
        next[i] = ca.rule(l, row[i], r);
    }
    return next;
}

std::vector<Row> ca_run(const CA1D& ca, const Row& row, uint32_t steps) {
    check(!row.empty(), "EmptyRow", "ca_run wants a non-empty row");
    for (uint32_t v : row)
        check(v < ca.alphabet, "SymbolOutOfAlphabet", "input symbol outside alphabet");
    std::vector<Row> out;
    out.reserve(steps + 1);
    out.push_back(row);
    for (uint32_t i = 0; i < steps; ++i) out.push_back(ca_step(ca, out.back()));
    return out;
}

// ---- Game of Life -----------------------------------------------------------

uint8_t LifeGrid::at(int64_t x, int64_t y) const {
    if (boundary == Boundary::Torus) {
        x = ((x % width) + width) % width;
        y = ((y % height) + height) % height;
    } else if (x < 0 || y < 0 || x >= (int64_t)width || y >= (int64_t)height) {
        return 0;
    }
    return cells[y * width + x];
}

LifeGrid life_step(const LifeGrid& g) {
    LifeGrid next = g;
    for (uint32_t y = 0; y < g.height; ++y) {
        for (uint32_t x = 0; x < g.width; ++x) {
            int live = 0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    if (dx || dy) live += g.at(int64_t(x) + dx, int64_t(y) + dy);
            uint8_t alive = g.cells[y * g.width + x];
            next.cells[y * g.width + x] = (live == 3 || (alive && live == 2)) ? 1 : 0;
        }
    }
    return next;
}

LifeGrid life_translate(const LifeGrid& g, int64_t dx, int64_t dy) {
    LifeGrid out = g;
    for (uint32_t y = 0; y < g.height; ++y)
        for (uint32_t x = 0; x < g.width; ++x)
            out.cells[y * g.width + x] = g.at(int64_t(x) - dx, int64_t(y) - dy);
    return out;
}

LifeGrid LifeGrid::parse(const std::string& text, Boundary b) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) rows.push_back(line);
    }
    check(!rows.empty(), "EmptyGrid", "life grid needs at least one row");
    LifeGrid g;
    g.height = rows.size();
    g.width = rows[0].size();
    g.boundary = b;
    g.cells.assign(size_t(g.width) * g.height, 0);
    for (uint32_t y = 0; y < g.height; ++y) {
        check(rows[y].size() == g.width, "RaggedGrid", "grid rows must have equal width");
        for (uint32_t x = 0; x < g.width; ++x) {
            char ch = rows[y][x];
            check(ch == '.' || ch == 'O', "BadGridChar", "grid cells are '.' or 'O'");
            g.set(x, y, ch == 'O');
        }
    }
    return g;
}

std::string LifeGrid::print() const {
    std::string out;
    for (uint32_t y = 0; y < height; ++y) {
        for (uint32_t x = 0; x < width; ++x) out.push_back(cells[y * width + x] ? 'O' : '.');
        out.push_back('\n');
    }
    return out;
}

// ---- ww recognizer CA -------------------------------------------------------
//
// Cell fields: the immutable input letter; a copy field c (blank, a moving
// letter, the moving tail of the chain, or a settled letter); the fast signal
// (right- or left-moving); the slow signal as a 3-phase counter; a verdict.
// The slow signal copies the letter into c on arrival and holds that c until
// it moves on, so the chain stays packed behind it. When the returning fast
// signal shows up one cell right of the slow signal, phase 2 means the length
// is even (both die quietly), any other phase means odd (reject). Freed c
// symbols stream right, pile up against the right end, and each settling
// compares itself with the letter of its cell; the tail settling successfully
// is the accept signal.

namespace {

enum CField : uint32_t { CNone, CMa, CMb, CTa, CTb, CSa, CSb };
enum FField : uint32_t { FNone, FRight, FLeft };

struct WwCell {
    uint32_t letter = 0; // 0 = a, 1 = b
    uint32_t c = CNone;
    uint32_t fast = FNone;
    uint32_t slow = 3; // 3 = none, else phase 0..2
    uint32_t stat = 0; // 0 run, 1 accept, 2 reject
};

constexpr uint32_t kWwAlphabet = 1 + 2 * 7 * 3 * 4 * 3;

uint32_t pack(const WwCell& w) {
    return 1 + (w.letter + 2 * (w.c + 7 * (w.fast + 3 * (w.slow + 4 * w.stat))));
}

WwCell unpack(uint32_t v) {
    WwCell w;
    v -= 1;
    w.letter = v % 2;
    v /= 2;
    w.c = v % 7;
    v /= 7;
    w.fast = v % 3;
    v /= 3;
    w.slow = v % 4;
    v /= 4;
    w.stat = v;
    return w;
}

bool c_moving(uint32_t c) { return c == CMa || c == CMb || c == CTa || c == CTb; }
bool c_settled(uint32_t c) { return c == CSa || c == CSb; }
uint32_t c_letter(uint32_t c) { return (c == CMb || c == CTb || c == CSb) ? 1u : 0u; }
bool c_tail(uint32_t c) { return c == CTa || c == CTb; }

uint32_t ww_rule(uint32_t lv, uint32_t sv, uint32_t rv) {
    if (sv == 0) return 0; // blank stays blank
    WwCell l = lv ? unpack(lv) : WwCell{};
    bool l_blank = lv == 0;
    WwCell s = unpack(sv);
    WwCell r = rv ? unpack(rv) : WwCell{};
    bool r_blank = rv == 0;
    if (l_blank) l.slow = 3;
    if (r_blank) r.slow = 3;

    // verdicts freeze the row and spread (reject wins)
    uint32_t stat = s.stat;
    if (!l_blank) stat = std::max(stat, l.stat);
    if (!r_blank) stat = std::max(stat, r.stat);
    if (stat != 0) {
        WwCell out = s;
        out.stat = stat;
        return pack(out);
    }

    bool meet_even = s.slow == 2 && r.fast == FLeft;
    bool meet_odd = (s.slow == 0 || s.slow == 1) && r.fast == FLeft;
    bool same_cell = s.slow != 3 && s.fast == FLeft;
    if (meet_odd || same_cell) {
        WwCell out = s;
        out.stat = 2;
        return pack(out);
    }

    WwCell out;
    out.letter = s.letter;

    // fast signal: enters from the left, reflects at the right end, dies when
    // it meets the slow signal (that cell handles the quiet death)
    if (l.fast == FRight) out.fast = FRight;
    if (s.fast == FRight && r_blank) out.fast = FLeft;
    if (r.fast == FLeft && !(r.slow != 3)) {
        if (s.slow == 3) out.fast = FLeft;
    }

    // slow signal: 3 ticks per cell, advances on phase wrap, copies on arrival
    uint32_t c = s.c;
    if (s.slow != 3 && !meet_even) {
        if (s.slow < 2) out.slow = s.slow + 1;
        // phase 2: leaves this cell
    }
    if (l.slow == 2 && !(l.slow == 2 && l.fast == FLeft)) {
        bool l_meets = false;
        // the slow signal does not advance into us if it just died meeting
        // the fast signal sitting here
        if (s.fast == FLeft) l_meets = true;
        if (!l_meets) {
            out.slow = 0;
            c = s.letter ? CMb : CMa;
        }
    }

    // copy-field motion
    if (c_settled(s.c)) {
        c = s.c;
    } else if (c_moving(s.c)) {
        bool held = s.slow != 3;
        bool blocked_settled = r_blank || c_settled(r.c);
        bool blocked_moving = !r_blank && (c_moving(r.c) || r.slow != 3);
        if (!held && blocked_settled) {
            if (c_letter(s.c) == s.letter) {
                c = s.letter ? CSb : CSa;
                if (c_tail(s.c)) out.stat = 1;
            } else {
                out.stat = 2;
            }
        } else if (!held && !blocked_moving) {
            c = CNone; // moves right
        } else {
            c = s.c; // waits
        }
    } else if (c == CNone) {
        // receive a moving c from the left if that c was free to move
        if (!l_blank && c_moving(l.c) && l.slow == 3 && !(s.slow != 3)) c = l.c;
    }

    out.c = c;
    return pack(out);
}

} // namespace

WwCa make_ww_ca() {
    WwCa w;
    w.ca.alphabet = kWwAlphabet;
    w.ca.rule = [](uint32_t l, uint32_t s, uint32_t r) { return ww_rule(l, s, r); };
    return w;
}

Row WwCa::encode(const std::string& word) const {
    Row row;
    row.reserve(word.size());
    for (size_t i = 0; i < word.size(); ++i) {
        char ch = word[i];
        check(ch == 'a' || ch == 'b', "BadLetter", "ww recognizer wants a/b");
        WwCell cell;
        cell.letter = ch == 'b';
        if (i == 0) {
            cell.fast = FRight;
            cell.slow = 0;
            cell.c = cell.letter ? CTb : CTa; // the tail of the copy chain
        }
        row.push_back(pack(cell));
    }
    return row;
}

int WwCa::verdict(const Row& row) const {
    for (uint32_t v : row) {
        if (v == 0) continue;
        uint32_t stat = unpack(v).stat;
        if (stat) return int(stat);
    }
    return 0;
}

std::string WwCa::render(const Row& row) const {
    std::string out;
    for (uint32_t v : row) {
        if (v == 0) {
            out.push_back('_');
            continue;
        }
        WwCell w = unpack(v);
        char ch = w.letter ? 'b' : 'a';
        if (c_moving(w.c)) ch = w.letter ? 'm' : 'm';
        if (c_settled(w.c)) ch = w.letter ? 'B' : 'A';
        if (w.slow != 3) ch = 's';
        if (w.fast != FNone) ch = w.fast == FRight ? '>' : '<';
        out.push_back(ch);
    }
    return out;
}

WwCaResult ww_ca_recognizer(const std::string& word) {
    check(word.size() >= 2, "WordTooShort", "ww CA wants |x| >= 2");
    WwCa w = make_ww_ca();
    Row row = w.encode(word);
    WwCaResult res;
    uint64_t cap = 12 * word.size() + 64;
    for (uint64_t t = 1; t <= cap; ++t) {
        row = ca_step(w.ca, row);
        int v = w.verdict(row);
        if (v) {
            res.accept = v == 1;
            res.depth = t;
            return res;
        }
    }
    fail("NoVerdict", "ww CA produced no verdict within the linear-depth budget");
}

} // namespace wb::cellular
