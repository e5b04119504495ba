#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "workbench/error.hpp"
#include "workbench/tm.hpp"

namespace wb::games {

// Positions are nonzero integer keys; the sign is the active player a(x).
// Every game embeds a move budget so successors strictly shrink.
using Position = int64_t;

inline int active_sign(Position x) { return x > 0 ? 1 : -1; }

struct GameRule {
    std::string name;
    // legal successors r(x,m); empty means the active player is stuck
    std::function<std::vector<Position>(Position)> moves;
    // explicit terminal positions and their value in {+1,-1}
    std::function<bool(Position)> is_terminal;
    std::function<int(Position)> terminal_value;
    std::function<std::string(Position)> describe;
};

struct ValueTable {
    std::unordered_map<Position, int> value; // +1 / -1 once solved

    int at(Position x) const {
        auto it = value.find(x);
        check(it != value.end(), "UnknownPosition", "position was never enumerated");
        return it->second;
    }
};

struct RetroOptions {
    uint64_t max_positions = 2'000'000;
    // called after every full relaxation sweep with the table so far
    std::function<void(uint64_t cycle, const ValueTable&)> observer;
};

// Backward induction over the reachable graph: V = v on terminals, then
// V(x) <- a(x) * sup_m { a(x) * V(r(x,m)) } until the fixpoint, with sup over
// an empty move set taken as -1. Ends with no position left unvalued.
ValueTable solve_retrograde(const GameRule& g, const std::vector<Position>& seeds,
                            const RetroOptions& opt = {});

// Depth-first evaluation without memory beyond the recursion path.
int solve_dfs(const GameRule& g, Position x, uint64_t depth_cap = 100000);

// ---- Match Game -------------------------------------------------------------

// Boxes of matches; a move takes any positive number from one box but may not
// leave the table empty; a player without a legal move loses.
GameRule match_game();
Position match_key(int a, int b, int c, int to_move_sign);

// ---- Linear Chess -----------------------------------------------------------

// 1-byte piece: bit 7 = loyalty (0 W, 1 S), bit 6 = gender, bits 0-5 = rank.
inline bool lc_is_s(uint8_t p) { return p & 0x80; }
inline bool lc_gender(uint8_t p) { return (p >> 6) & 1; }
inline uint8_t lc_rank(uint8_t p) { return p & 0x3f; }

struct LcTriple {
    uint8_t a, b, c; // winner A replaces loser B with C (C on A's side)
};

// Board: all W pieces left of all S pieces; the fight happens at the border
// and is resolved by the Gender Rules (same sex: W loses; different: S
// loses); the active side picks the replacement among the allowed triples.
// Sides alternate; player +1 plays W. A side with no pieces has lost; a
// player who cannot move (no triple fits, or the budget ran out) loses.
GameRule linear_chess(const std::vector<LcTriple>& triples);
Position lc_key(const std::vector<uint8_t>& board, int budget, int to_move_sign);

// ---- 1d-Chess ---------------------------------------------------------------

struct FightOutcome {
    bool right_wins;    // which of the two border pieces wins
    uint8_t promoted;   // what the winner becomes
    uint8_t replacement; // what replaces the vanquished piece
};

// Like Linear Chess but the table, not the Gender Rule, decides the fight,
// and the winner may be promoted. Keyed by the (left, right) border pieces.
GameRule one_d_chess(const std::vector<std::pair<std::pair<uint8_t, uint8_t>,
                                                 std::vector<FightOutcome>>>& table);

// ---- Halting Game -----------------------------------------------------------

// The two-player game deciding whether tm halts (rolls off the left end)
// within 2^|x| steps: player L (+1) claims it does, S (-1) challenges. The
// board is (p, t, A, B-1 B0 B+1); L fills the ?s, S picks s, copies B_s into
// A and decrements t. Illegal fills lose immediately; a legal fill at t = 1
// wins for L.
struct HaltingGame {
    GameRule rule;
    Position start;
    uint64_t time_bound;
};

HaltingGame halting_game(const wb::tm::BinaryTM& m, const Bits& input);

} // namespace wb::games
