#pragma once

// Internal knobs for the universal-machine table transcription. The public
// API in workbench/ikeno.hpp runs on the frozen conventions; these hooks let
// the validation sweep exercise every candidate reading.

#include <string>

#include "workbench/ikeno.hpp"

namespace wb::ikeno::detail {

struct Conventions {
    uint32_t prime_bits = 0; // one bit per ambiguous cell group (set = keep prime)
    bool move_new_state = true;
    bool f_star_halts = true;
    int dR = 0; // rightward unary offset = (pair - j) + dR
    int dL = 0; // leftward  unary offset = (j - pair) + dL
    bool d_R_is_0 = true;
    // within a state's segment pair, put the read-bit-1 command first (the
    // paper's own 1-before-0 column order) or the read-bit-0 command first
    bool pair_one_first = true;
};

enum PrimeGroup {
    kAB_travel,  // A,B rows on primed symbols
    kfF_digits,  // f,F row on 1'/0'
    kfF_star,    // f,F row on *' -> c
    kD_digits,   // D row on 1'/0'
    kd_star,     // d row on *' -> D
    kb_one,      // b row on 1'
    kb_star,     // b row on *' -> D
    ke_digits,   // e row on 1'->B, 0'->A
    ke_star,     // e row on *' -> A/B
    kPrimeGroups
};

struct CheckResult {
    bool ok = false;
    uint64_t cycles = 0;
    std::string why;
};

ProgramImage encode_with(const wb::tm::BinaryTM& m, const Conventions& cv);
wb::tm::BinaryTM decode_with(const ProgramImage& prog, const Conventions& cv);
UtmTape initial_tape_with(const ProgramImage& prog, const Bits& input);

CheckResult check_machine(const wb::tm::BinaryTM& m, const Bits& input, uint64_t n_cycles,
                          const Conventions& cv, uint64_t step_budget);

const Conventions& frozen();

// Step-at-a-time access for trace dumps.
class TraceEngine {
public:
    explicit TraceEngine(const Conventions& cv);
    ~TraceEngine();
    TraceEngine(const TraceEngine&) = delete;
    TraceEngine& operator=(const TraceEngine&) = delete;
    bool step_once(UtmTape& t, uint8_t choice_bit = 0);
    bool boundary(const UtmTape& t) const;
    int kind() const; // HaltKind as int
private:
    struct Impl;
    Impl* impl_;
};

} // namespace wb::ikeno::detail
