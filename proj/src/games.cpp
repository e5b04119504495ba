#include "workbench/games.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <map>
#include <sstream>

#include "workbench/tmcell.hpp"

namespace wb::games {

ValueTable solve_retrograde(const GameRule& g, const std::vector<Position>& seeds,
                            const RetroOptions& opt) {
    // enumerate the reachable closed graph first
    std::vector<Position> order;
    std::unordered_map<Position, std::vector<Position>> succ;
    std::deque<Position> queue(seeds.begin(), seeds.end());
    std::unordered_map<Position, bool> seen;
    for (Position s : seeds) seen[s] = true;
    while (!queue.empty()) {
        Position x = queue.front();
        queue.pop_front();
        order.push_back(x);
        check(order.size() <= opt.max_positions, "StateSpaceOverflow",
              "reachable positions exceed the configured cap");
        if (g.is_terminal(x)) continue;
        auto ms = g.moves(x);
        for (Position y : ms)
            if (!seen[y]) {
                seen[y] = true;
                queue.push_back(y);
            }
        succ.emplace(x, std::move(ms));
    }

    ValueTable table;
    std::unordered_map<Position, int> v; // 0 = unknown
    for (Position x : order)
        if (g.is_terminal(x)) v[x] = g.terminal_value(x);

    uint64_t cycle = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        ++cycle;
        for (Position x : order) {
            if (v[x] != 0) continue;
            int a = active_sign(x);
            const auto& ms = succ[x];
            int sup = -1; // sup over the empty set
            bool unknown_child = false;
            for (Position y : ms) {
                int vy = v[y];
                if (vy == 0) {
                    unknown_child = true;
                    sup = std::max(sup, 0);
                } else {
                    sup = std::max(sup, a * vy);
                }
            }
            if (sup == 1 || (!unknown_child)) {
                v[x] = a * sup;
                changed = true;
            }
            (void)unknown_child;
        }
        if (opt.observer) {
            ValueTable snap;
            for (auto& [k, val] : v)
                if (val != 0) snap.value[k] = val;
            opt.observer(cycle, snap);
        }
    }
    for (Position x : order) {
        check(v[x] != 0, "Unsolved", "a reachable position kept value 0");
        table.value[x] = v[x];
    }
    return table;
}

int solve_dfs(const GameRule& g, Position x, uint64_t depth_cap) {
    check(depth_cap > 0, "DepthOverflow", "game deeper than the DFS budget");
    if (g.is_terminal(x)) return g.terminal_value(x);
    int a = active_sign(x);
    int sup = -1;
    for (Position y : g.moves(x)) {
        sup = std::max(sup, a * solve_dfs(g, y, depth_cap - 1));
        if (sup == 1) break;
    }
    return a * sup;
}

// ---- Match Game -------------------------------------------------------------

Position match_key(int a, int b, int c, int to_move_sign) {
    int v[3] = {a, b, c};
    std::sort(v, v + 3, std::greater<int>()); // box order is irrelevant
    Position key = 1 + v[0] * 100 + v[1] * 10 + v[2];
    return to_move_sign > 0 ? key : -key;
}

GameRule match_game() {
    GameRule g;
    g.name = "match";
    g.moves = [](Position x) {
        Position k = std::llabs(x) - 1;
        int a = int(k / 100), b = int(k / 10 % 10), c = int(k % 10);
        int sign = active_sign(x);
        std::vector<Position> out;
        int boxes[3] = {a, b, c};
        for (int i = 0; i < 3; ++i) {
            for (int take = 1; take <= boxes[i]; ++take) {
                int n[3] = {boxes[0], boxes[1], boxes[2]};
                n[i] -= take;
                if (n[0] + n[1] + n[2] == 0) continue; // cannot leave the table empty
                out.push_back(match_key(n[0], n[1], n[2], -sign));
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    g.is_terminal = [](Position) { return false; }; // losses arise from being stuck
    g.terminal_value = [](Position) { return 0; };
    g.describe = [](Position x) {
        Position k = std::llabs(x) - 1;
        std::ostringstream os;
        os << "(" << k / 100 << "," << k / 10 % 10 << "," << k % 10 << ")"
           << (x > 0 ? "+" : "-");
        return os.str();
    };
    return g;
}

// ---- Linear Chess -----------------------------------------------------------

namespace {

constexpr int kLcMaxCells = 6;
constexpr int kLcMaxBudget = 31;

struct LcBoard {
    std::vector<uint8_t> cells;
    int budget = 0;
    int sign = 1;
};

Position lc_pack(const LcBoard& b) {
    check(b.cells.size() >= 1 && b.cells.size() <= kLcMaxCells, "BadBoard",
          "linear chess boards hold 1..6 pieces");
    check(b.budget >= 0 && b.budget <= kLcMaxBudget, "BadBoard", "budget out of range");
    uint64_t key = 0;
    for (uint8_t p : b.cells) key = key << 8 | p;
    key = key << 3 | b.cells.size();
    key = key << 5 | uint64_t(b.budget);
    return b.sign > 0 ? Position(key + 1) : -Position(key + 1);
}

LcBoard lc_unpack(Position x) {
    LcBoard b;
    b.sign = active_sign(x);
    uint64_t key = uint64_t(std::llabs(x)) - 1;
    b.budget = int(key & 31);
    key >>= 5;
    size_t n = key & 7;
    key >>= 3;
    b.cells.resize(n);
    for (size_t i = n; i-- > 0;) {
        b.cells[i] = uint8_t(key & 0xff);
        key >>= 8;
    }
    return b;
}

// border index of the last W piece, or -1 if one side is gone
int lc_border(const std::vector<uint8_t>& cells) {
    int last_w = -1;
    for (size_t i = 0; i < cells.size(); ++i)
        if (!lc_is_s(cells[i])) last_w = int(i);
    if (last_w == -1 || last_w + 1 >= (int)cells.size()) return -1;
    return last_w;
}

} // namespace

Position lc_key(const std::vector<uint8_t>& board, int budget, int to_move_sign) {
    for (size_t i = 1; i < board.size(); ++i)
        check(!(lc_is_s(board[i - 1]) && !lc_is_s(board[i])), "BadBoard",
              "all W pieces must sit left of all S pieces");
    return lc_pack(LcBoard{board, budget, to_move_sign});
}

GameRule linear_chess(const std::vector<LcTriple>& triples) {
    for (const LcTriple& t : triples)
        check(lc_is_s(t.c) == lc_is_s(t.a), "MalformedTriple",
              "replacement piece must be on the winner's side");
    GameRule g;
    g.name = "linchess";
    auto fight = [](uint8_t w, uint8_t s) {
        // same sex: W (being weaker) loses; different sexes: S loses
        bool s_wins = lc_gender(w) == lc_gender(s);
        return s_wins;
    };
    g.moves = [triples, fight](Position x) {
        LcBoard b = lc_unpack(x);
        std::vector<Position> out;
        if (b.budget == 0) return out;
        int k = lc_border(b.cells);
        if (k < 0) return out;
        uint8_t w = b.cells[k], s = b.cells[k + 1];
        bool s_wins = fight(w, s);
        uint8_t winner = s_wins ? s : w;
        uint8_t loser = s_wins ? w : s;
        int loser_cell = s_wins ? k : k + 1;
        for (const LcTriple& t : triples) {
            if (t.a != winner || t.b != loser) continue;
            LcBoard nb = b;
            nb.cells[loser_cell] = t.c;
            nb.budget -= 1;
            nb.sign = -b.sign;
            out.push_back(lc_pack(nb));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    g.is_terminal = [](Position x) {
        LcBoard b = lc_unpack(x);
        return lc_border(b.cells) < 0; // one side eliminated
    };
    g.terminal_value = [](Position x) {
        LcBoard b = lc_unpack(x);
        // the surviving side has won; player +1 plays W
        return lc_is_s(b.cells[0]) ? -1 : 1;
    };
    g.describe = [](Position x) {
        LcBoard b = lc_unpack(x);
        std::ostringstream os;
        for (uint8_t p : b.cells)
            os << (lc_is_s(p) ? 'S' : 'W') << (lc_gender(p) ? 'F' : 'M') << int(lc_rank(p))
               << ' ';
        os << "budget=" << b.budget << (b.sign > 0 ? " W-to-move" : " S-to-move");
        return os.str();
    };
    return g;
}

GameRule one_d_chess(const std::vector<std::pair<std::pair<uint8_t, uint8_t>,
                                                 std::vector<FightOutcome>>>& table) {
    std::map<std::pair<uint8_t, uint8_t>, std::vector<FightOutcome>> lookup;
    for (const auto& [key, outs] : table) {
        for (const FightOutcome& o : outs) {
            uint8_t winner = o.right_wins ? key.second : key.first;
            check(lc_is_s(o.promoted) == lc_is_s(winner), "MalformedTable",
                  "promotion must stay on the winner's side");
            check(lc_is_s(o.replacement) == lc_is_s(winner), "MalformedTable",
                  "the vanquished piece is replaced by a winner-side piece");
        }
        auto& slot = lookup[key]; // duplicate keys merge their outcome lists
        slot.insert(slot.end(), outs.begin(), outs.end());
    }
    GameRule g;
    g.name = "1dchess";
    g.moves = [lookup](Position x) {
        LcBoard b = lc_unpack(x);
        std::vector<Position> out;
        if (b.budget == 0) return out;
        int k = lc_border(b.cells);
        if (k < 0) return out;
        auto it = lookup.find({b.cells[k], b.cells[k + 1]});
        if (it == lookup.end()) return out;
        for (const FightOutcome& o : it->second) {
            LcBoard nb = b;
            int winner_cell = o.right_wins ? k + 1 : k;
            int loser_cell = o.right_wins ? k : k + 1;
            nb.cells[winner_cell] = o.promoted;
            nb.cells[loser_cell] = o.replacement;
            nb.budget -= 1;
            nb.sign = -b.sign;
            out.push_back(lc_pack(nb));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    g.is_terminal = [](Position x) {
        LcBoard b = lc_unpack(x);
        return lc_border(b.cells) < 0;
    };
    g.terminal_value = [](Position x) {
        LcBoard b = lc_unpack(x);
        return lc_is_s(b.cells[0]) ? -1 : 1;
    };
    g.describe = [](Position x) {
        LcBoard b = lc_unpack(x);
        std::ostringstream os;
        for (uint8_t p : b.cells) os << int(p) << ' ';
        os << "budget=" << b.budget;
        return os.str();
    };
    return g;
}

// ---- Halting Game -----------------------------------------------------------

namespace {

using wb::tm::BinaryTM;

struct HgConfig {
    BinaryTM m;
    Bits input;
    uint64_t t0; // 2^|x|
    int64_t p_offset;
    uint32_t sigma; // cell alphabet size
    static constexpr uint8_t kWildcardA = 0xff;
};

struct HgPos {
    int64_t p = 0;
    uint64_t t = 0;
    uint8_t a = 0;
    bool filled = false;
    uint8_t b[3] = {0, 0, 0};
};

// layout: [filled][b-1][b0][b+1][a:8][t:8][p:8] with sign = active player
Position hg_pack(const HgPos& h, const HgConfig& cfg) {
    uint64_t key = 0;
    key = key << 8 | uint64_t(h.p + cfg.p_offset);
    key = key << 8 | h.t;
    key = key << 8 | h.a;
    key = key << 8 | h.b[0];
    key = key << 8 | h.b[1];
    key = key << 8 | h.b[2];
    key = key << 1 | uint64_t(h.filled);
    Position sign = h.filled ? -1 : 1; // L fills, then S picks
    return sign * Position(key + 1);
}

HgPos hg_unpack(Position x, const HgConfig& cfg) {
    HgPos h;
    uint64_t key = uint64_t(std::llabs(x)) - 1;
    h.filled = key & 1;
    key >>= 1;
    h.b[2] = uint8_t(key & 0xff);
    key >>= 8;
    h.b[1] = uint8_t(key & 0xff);
    key >>= 8;
    h.b[0] = uint8_t(key & 0xff);
    key >>= 8;
    h.a = uint8_t(key & 0xff);
    key >>= 8;
    h.t = key & 0xff;
    key >>= 8;
    h.p = int64_t(key & 0xff) - cfg.p_offset;
    return h;
}

// the board cell at position pos of the true start configuration (t = 1)
uint8_t hg_true_initial(const HgConfig& cfg, int64_t pos) {
    if (pos < 0) return tmcell::Void;
    if (pos == 0) return tmcell::head_sym(cfg.input.empty() ? 0 : cfg.input[0], cfg.m.start);
    uint8_t bit = pos < (int64_t)cfg.input.size() ? cfg.input[pos] : 0;
    return tmcell::plain_sym(bit, false);
}

bool hg_fill_legal(const HgConfig& cfg, const HgPos& h, const uint8_t b[3]) {
    // (1) no two of the B cells point away from each other
    if (tmcell::away_pair(b[0], b[1], cfg.m)) return false;
    if (tmcell::away_pair(b[1], b[2], cfg.m)) return false;
    // void cells are only plausible off the left end
    for (int s = -1; s <= 1; ++s)
        if (b[s + 1] == tmcell::Void && h.p + s >= 0) return false;
    // (2) A must be what the transition rules make of the B row
    uint8_t produced = tmcell::next_cell(b[0], b[1], b[2], cfg.m);
    if (h.a == HgConfig::kWildcardA) {
        // the top-level halt claim: cell 0 points left and carries no head
        if (!(tmcell::is_plain(produced) && !tmcell::plain_right(produced))) return false;
    } else if (produced != h.a) {
        return false;
    }
    // (3) at t = 1 the row must be the actual input configuration
    if (h.t == 1) {
        for (int s = -1; s <= 1; ++s)
            if (b[s + 1] != hg_true_initial(cfg, h.p + s)) return false;
    }
    return true;
}

} // namespace

HaltingGame halting_game(const BinaryTM& m, const Bits& input) {
    check(m.halt_mode == wb::tm::HaltMode::LeftRollOff && m.extend_right, "BadMachine",
          "the halting game wants a LeftRollOff machine");
    check(input.size() <= 4, "BadInput", "halting game instances are capped at |x| <= 4");
    auto cfg = std::make_shared<HgConfig>();
    cfg->m = m;
    cfg->input = input;
    cfg->t0 = 1ull << input.size();
    cfg->p_offset = int64_t(cfg->t0) + 2;
    cfg->sigma = tmcell::alphabet_size(m);

    HaltingGame out;
    out.time_bound = cfg->t0;
    GameRule g;
    g.name = "halting";
    g.moves = [cfg](Position x) {
        HgPos h = hg_unpack(x, *cfg);
        std::vector<Position> res;
        if (!h.filled) {
            // L chooses the three B cells; illegal fills are simply not moves
            uint8_t b[3];
            for (uint32_t v0 = 0; v0 < cfg->sigma; ++v0)
                for (uint32_t v1 = 0; v1 < cfg->sigma; ++v1)
                    for (uint32_t v2 = 0; v2 < cfg->sigma; ++v2) {
                        b[0] = uint8_t(v0);
                        b[1] = uint8_t(v1);
                        b[2] = uint8_t(v2);
                        if (!hg_fill_legal(*cfg, h, b)) continue;
                        HgPos nh = h;
                        nh.filled = true;
                        nh.b[0] = b[0];
                        nh.b[1] = b[1];
                        nh.b[2] = b[2];
                        res.push_back(hg_pack(nh, *cfg));
                    }
        } else {
            // S copies one B cell into A, recenters, decrements t
            for (int s = -1; s <= 1; ++s) {
                HgPos nh;
                nh.p = h.p + s;
                nh.t = h.t - 1;
                nh.a = h.b[s + 1];
                nh.filled = false;
                res.push_back(hg_pack(nh, *cfg));
            }
        }
        return res;
    };
    g.is_terminal = [cfg](Position x) {
        HgPos h = hg_unpack(x, *cfg);
        return h.filled && h.t == 1; // a legal fill at t = 1 ends the game
    };
    g.terminal_value = [](Position) { return 1; }; // ... and L has won it
    g.describe = [cfg](Position x) {
        HgPos h = hg_unpack(x, *cfg);
        std::ostringstream os;
        os << "p=" << h.p << " t=" << h.t << " A=" << int(h.a);
        if (h.filled)
            os << " B=[" << int(h.b[0]) << "," << int(h.b[1]) << "," << int(h.b[2]) << "]";
        return os.str();
    };
    out.rule = g;

    HgPos start;
    start.p = 0;
    start.t = cfg->t0;
    start.a = HgConfig::kWildcardA;
    start.filled = false;
    out.start = hg_pack(start, *cfg);
    return out;
}

} // namespace wb::games
