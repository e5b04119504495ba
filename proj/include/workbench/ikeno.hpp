#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "workbench/tm.hpp"

namespace wb::ikeno {

// Six tape symbols: 1 0 * and their primed variants.
enum class Sym : uint8_t { One, Zero, Star, OneP, ZeroP, StarP };

inline bool primed(Sym s) { return s >= Sym::OneP; }
inline Sym prime(Sym s) { return primed(s) ? s : Sym(uint8_t(s) + 3); }
inline Sym unprime(Sym s) { return primed(s) ? Sym(uint8_t(s) - 3) : s; }

char sym_char(Sym s);           // 1 0 * i o x  (primed shown as i/o/x)
std::string sym_pretty(Sym s);  // 1 0 * 1' 0' *'

// Eleven machine states. Lower case states look left, upper case right.
enum class St : uint8_t { A, B, f, F, D, E, d, b, a, c, e };

inline bool looks_left(St s) {
    return s == St::f || s == St::d || s == St::b || s == St::a || s == St::c || s == St::e;
}
char state_char(St s);

struct Entry {
    enum Kind : uint8_t { Move, Halt, Unreachable } kind = Unreachable;
    St next = St::A;
    Sym write = Sym::Zero;
};

// The 11x6 transition table.
struct Table {
    Entry at[11][6];
    const Entry& operator()(St s, Sym v) const { return at[uint8_t(s)][uint8_t(v)]; }
};

// Verbatim transcription of the paper's table with its display shorthand
// resolved ("shows the states and tape digits only when changed, except that
// the prime is always shown"). The resolution was validated mechanically: see
// cycle_correspondence and the ikeno test suite.
const Table& utm_table();

// Table lookup with the spec's error on the two impossible cells.
// Returns nullopt for the halt mark "=".
std::optional<std::pair<St, Sym>> utm_transition(St s, Sym v);

// One encoded command *Sdb. S is a unary run: `left` tells whether it is a
// run of 1s (target pair lies left) or 0s (right); `offset` its length.
struct Segment {
    bool left = false;
    uint32_t offset = 0;
    uint8_t d = 0; // turn bit, R=0 / L=1
    uint8_t b = 0; // bit to write
};

struct ProgramImage {
    std::vector<Segment> segments; // sorted by (state, read bit); 2 per state
    Segment boot;                  // leading pseudo-command addressing the start state
    uint32_t state_count = 0;
    uint32_t start = 0;

    // segment list index (incl. boot at 0) of the pair base for state s
    uint32_t pair_base(uint32_t s) const { return 1 + 2 * s; }
};

// Requires a binary, LeftRollOff-halting, right-extending machine.
ProgramImage encode_program(const wb::tm::BinaryTM& m);

// Inverse of encode_program on the rule table (codec self-check).
wb::tm::BinaryTM decode_program(const ProgramImage& prog);

struct UtmTape {
    std::vector<Sym> syms;
    int64_t head = 0;
    St state = St::F;
    size_t m_region = 0; // index of the first simulated tape cell
    bool halted = false;

    std::string to_string() const; // symbol characters 0 1 * o i x
};

UtmTape initial_tape(const ProgramImage& prog, const Bits& input);

// Single transition of U. Throws UnreachableEntry on the `--` cells.
void utm_step(UtmTape& t, uint8_t choice_bit = 0);

struct UtmRun {
    UtmTape tape;
    uint64_t cycles = 0;
    uint64_t steps = 0;
    bool halted = false;
};

// Runs whole cycles (one simulated transition of M each) until U halts or
// cycleLimit cycles have completed. A cycle boundary is the head returning in
// state F/f onto an unprimed simulated-tape cell.
UtmRun utm_run(const ProgramImage& prog, const Bits& input, uint64_t cycle_limit,
               uint64_t step_budget = 50'000'000, uint8_t choice_bit = 0);

// Simulated tape decoded out of the M region (primes stripped, head marker
// treated as the head position).
struct DecodedTape {
    Bits cells;
    int64_t head = 0; // relative to the M region; -1 = rolled off
};
DecodedTape decode_m_region(const UtmTape& t);

struct CorrespondenceReport {
    bool exact = false;
    uint64_t cycles_checked = 0;
    int64_t first_divergence = -1; // cycle index, -1 if none
    std::string detail;
};

// After each UTM cycle the decoded M region must equal the direct machine
// tape after the same number of steps; halting cycles must equal halting
// steps. Checks up to n_cycles cycles (fewer if M halts first).
CorrespondenceReport cycle_correspondence(const wb::tm::BinaryTM& m, const Bits& input,
                                          uint64_t n_cycles);

} // namespace wb::ikeno
