#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "workbench/bits.hpp"
#include "workbench/error.hpp"

namespace wb::tm {

enum class Dir : uint8_t { L, R };

inline char dir_char(Dir d) { return d == Dir::L ? 'L' : 'R'; }

enum class HaltMode : uint8_t { ExplicitHaltState, LeftRollOff };

struct Rule {
    uint32_t next;  // state id; == state_count means the explicit halt state
    uint8_t write;
    Dir dir;
    bool operator==(const Rule&) const = default;
};

// Quintuple-rule machine over the bit alphabet. Non-halt states are
// 0..state_count-1; a rule with next == state_count enters the halt state
// (ExplicitHaltState machines only). LeftRollOff machines halt by moving
// left from cell 0.
struct BinaryTM {
    uint32_t state_count = 0;
    uint32_t start = 0;
    HaltMode halt_mode = HaltMode::ExplicitHaltState;
    // Right-edge convention: extend with 0 (the usual blank-as-zero mode), or
    // treat stepping past the right end as halting ("halt past right end").
    bool extend_right = true;
    std::vector<Rule> rules; // indexed [state*2 + bit], total on non-halt states

    uint32_t halt_state() const { return state_count; }

    const Rule& rule(uint32_t s, uint8_t b) const { return rules[s * 2 + b]; }
    void set_rule(uint32_t s, uint8_t b, Rule r) { rules[s * 2 + b] = r; }

    void validate() const;
};

struct TapeState {
    Bits cells;        // index 0 = left end; right end extends with 0
    int64_t head = 0;  // -1 once rolled off the left end
    uint32_t state = 0;

    bool halted(const BinaryTM& m) const {
        if (head < 0) return true;
        if (!m.extend_right && head >= (int64_t)cells.size()) return true;
        return m.halt_mode == HaltMode::ExplicitHaltState && state == m.halt_state();
    }
};

struct RunMeters {
    uint64_t steps = 0;
    uint64_t volume = 0; // one active site per step for a single-head TM
    uint64_t space = 0;  // max cell index ever visited + 1
};

struct RunLimits {
    uint64_t steps = ~uint64_t{0};
};

TapeState tm_start(const BinaryTM& m, const Bits& input);

// One transition. Throws StepOnHalted if cfg is already halted.
TapeState tm_step(const BinaryTM& m, const TapeState& cfg);

struct RunResult {
    TapeState tape;
    RunMeters meters;
    bool halted = false;
};

RunResult tm_run(const BinaryTM& m, const Bits& input, const RunLimits& limits);

// t-Bounded Halting predicate: halts within t steps. Monotone in t.
bool bounded_halt(const BinaryTM& m, const Bits& input, uint64_t t);

// Configurations 0..min(steps-until-halt, max_steps); index = step count.
std::vector<TapeState> tm_trace(const BinaryTM& m, const Bits& input, uint64_t max_steps);

// ---- general finite-alphabet machine, used to author the ww recognizer ----

struct SymRule {
    uint32_t next; // == state_count means halt
    uint32_t write;
    Dir dir;
};

struct SymbolTM {
    uint32_t state_count = 0;
    uint32_t symbol_count = 0; // symbol 0 is the blank used for right extension
    uint32_t start = 0;
    std::vector<SymRule> rules; // [state*symbol_count + symbol]

    uint32_t halt_state() const { return state_count; }
    const SymRule& rule(uint32_t s, uint32_t v) const { return rules[s * symbol_count + v]; }
    void set_rule(uint32_t s, uint32_t v, SymRule r) { rules[s * symbol_count + v] = r; }
};

struct SymRunResult {
    std::vector<uint32_t> tape;
    int64_t head = 0;
    bool halted = false;
    RunMeters meters;
};

SymRunResult sym_run(const SymbolTM& m, const std::vector<uint32_t>& input, uint64_t max_steps);

// Mechanical bit encoding of a SymbolTM: each symbol cell becomes
// ceil(log2(symbol_count)) bit cells, blank = all-zero code.
struct CompiledTM {
    BinaryTM tm;
    uint32_t bits_per_symbol = 0;

    Bits encode_input(const std::vector<uint32_t>& syms) const;
    std::vector<uint32_t> decode_tape(const Bits& cells) const;
};

CompiledTM compile_symbol_tm(const SymbolTM& m);

// ---- the ww-recognizer of the two-half capitalization construction ----

// Alphabet: 0 blank, 1 'a', 2 'b', 3 'A', 4 'B'. The machine always halts;
// the verdict symbol ('A' accept, 'B' reject) sits one cell left of the
// final head position.
struct WwRecognizer {
    SymbolTM sym;
    CompiledTM bin;

    struct Outcome {
        bool accept = false;
        RunMeters meters;
    };

    Outcome run_symbol(const std::string& word, uint64_t max_steps = ~uint64_t{0}) const;
    Outcome run_binary(const std::string& word, uint64_t max_steps = ~uint64_t{0}) const;
};

WwRecognizer tm_ww_recognizer();

// Direct string predicate oracle.
bool is_ww(const std::string& word);

} // namespace wb::tm
