#include "workbench/tm.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace wb::tm {

void BinaryTM::validate() const {
    check(state_count >= 1, "BadMachine", "need at least one state");
    check(start < state_count, "BadMachine", "start state out of range");
    check(rules.size() == size_t(state_count) * 2, "BadMachine",
          "rules must be total on (state, bit)");
    for (const Rule& r : rules)
        check(r.next <= state_count && r.write <= 1, "BadMachine", "rule field out of range");
}

TapeState tm_start(const BinaryTM& m, const Bits& input) {
    TapeState st;
    st.cells = input;
    st.head = 0;
    st.state = m.start;
    return st;
}

TapeState tm_step(const BinaryTM& m, const TapeState& cfg) {
    check(!cfg.halted(m), "StepOnHalted", "configuration is already halted");
    TapeState next = cfg;
    if (next.head >= (int64_t)next.cells.size()) next.cells.resize(next.head + 1, 0);
    uint8_t bit = next.cells[next.head];
    const Rule& r = m.rule(next.state, bit);
    next.cells[next.head] = r.write;
    next.state = r.next;
    next.head += r.dir == Dir::R ? 1 : -1;
    if (m.extend_right && next.head >= (int64_t)next.cells.size())
        next.cells.resize(next.head + 1, 0);
    return next;
}

RunResult tm_run(const BinaryTM& m, const Bits& input, const RunLimits& limits) {
    RunResult out;
    out.tape = tm_start(m, input);
    out.meters.space = std::max<uint64_t>(1, input.size());
    while (!out.tape.halted(m)) {
        if (out.meters.steps >= limits.steps) {
            out.halted = false;
            return out;
        }
        out.tape = tm_step(m, out.tape);
        ++out.meters.steps;
        ++out.meters.volume;
        if (out.tape.head >= 0 && out.tape.head < (int64_t)out.tape.cells.size())
            out.meters.space = std::max(out.meters.space, uint64_t(out.tape.head) + 1);
    }
    out.halted = true;
    return out;
}

bool bounded_halt(const BinaryTM& m, const Bits& input, uint64_t t) {
    RunLimits lim;
    lim.steps = t;
    return tm_run(m, input, lim).halted;
}

std::vector<TapeState> tm_trace(const BinaryTM& m, const Bits& input, uint64_t max_steps) {
    std::vector<TapeState> out;
    out.push_back(tm_start(m, input));
    while (!out.back().halted(m) && out.size() <= max_steps)
        out.push_back(tm_step(m, out.back()));
    return out;
}

SymRunResult sym_run(const SymbolTM& m, const std::vector<uint32_t>& input, uint64_t max_steps) {
    SymRunResult out;
    out.tape = input;
    out.head = 0;
    uint32_t state = m.start;
    out.meters.space = std::max<uint64_t>(1, input.size());
    while (state != m.halt_state()) {
        if (out.head < 0) break; // rolled off
        if (out.meters.steps >= max_steps) {
            out.halted = false;
            return out;
        }
        if (out.head >= (int64_t)out.tape.size()) out.tape.resize(out.head + 1, 0);
        const SymRule& r = m.rule(state, out.tape[out.head]);
        out.tape[out.head] = r.write;
        state = r.next;
        out.head += r.dir == Dir::R ? 1 : -1;
        ++out.meters.steps;
        ++out.meters.volume;
        if (out.head >= 0)
            out.meters.space = std::max(out.meters.space, uint64_t(out.head) + 1);
    }
    out.halted = true;
    return out;
}

// ---- symbol machine -> binary machine -------------------------------------

namespace {

struct Compiler {
    const SymbolTM& src;
    uint32_t bits;
    // compiled-state registry; kind tags below
    enum Kind : int { RD, WR, PS };
    std::map<std::tuple<int, uint32_t, uint32_t, uint32_t, int>, uint32_t> ids;
    std::vector<std::tuple<int, uint32_t, uint32_t, uint32_t, int>> todo;

    explicit Compiler(const SymbolTM& s) : src(s) {
        bits = 1;
        while ((1u << bits) < s.symbol_count) ++bits;
    }

    uint32_t id_of(int kind, uint32_t a, uint32_t b, uint32_t c, int d) {
        auto key = std::make_tuple(kind, a, b, c, d);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        uint32_t id = (uint32_t)ids.size();
        ids.emplace(key, id);
        todo.push_back(key);
        return id;
    }

    // RD(s, depth, acc): reading bit `depth` of the current symbol.
    // WR(s2, w, dir, idx): writing bit idx of w while moving left; dir applies
    //   after bit 0. s2 == src.halt_state() encodes "halt after writing".
    // PS(s2, dirBit, j): pass-through move j of bits-1 toward the next symbol.
    CompiledTM run() {
        uint32_t start = id_of(RD, src.start, 0, 0, 0);
        std::vector<Rule> rules;
        for (size_t i = 0; i < todo.size(); ++i) {
            auto [kind, a, b, c, d] = todo[i];
            if (rules.size() < (i + 1) * 2) rules.resize((i + 1) * 2);
            for (uint8_t bit = 0; bit <= 1; ++bit) {
                Rule r{};
                if (kind == RD) {
                    uint32_t s = a, depth = b, acc = c * 2 + bit;
                    if (depth + 1 < bits) {
                        r = Rule{id_of(RD, s, depth + 1, acc, 0), bit, Dir::R};
                    } else {
                        uint32_t sym = acc;
                        if (sym >= src.symbol_count) {
                            // junk code: loop in place writing it back (never
                            // reached on well-formed tapes)
                            r = Rule{id_of(RD, s, 0, 0, 0), bit, Dir::R};
                        } else {
                            // Cell offset o holds bit (bits-1-o) of the code;
                            // we are at offset bits-1, so write the low bit
                            // and emit the rest right-to-left.
                            const SymRule& sr = src.rule(s, sym);
                            uint8_t low = sr.write & 1;
                            if (bits == 1) {
                                r = finish_write(sr, low);
                            } else {
                                r = Rule{id_of(WR, sr.next, sr.write, sr.dir == Dir::R, bits - 2),
                                         low, Dir::L};
                            }
                        }
                    }
                } else if (kind == WR) {
                    uint32_t s2 = a, w = b, dirR = c;
                    int offset = d; // current cell offset within the symbol
                    uint8_t wb_ = (w >> (bits - 1 - offset)) & 1;
                    SymRule sr{s2, w, dirR ? Dir::R : Dir::L};
                    if (offset == 0) {
                        r = finish_write(sr, wb_);
                    } else {
                        r = Rule{id_of(WR, s2, w, dirR, offset - 1), wb_, Dir::L};
                    }
                } else { // PS
                    uint32_t s2 = a, dirR = b, j = c;
                    Dir dd = dirR ? Dir::R : Dir::L;
                    if (j + 1 >= bits) {
                        r = Rule{id_of(RD, s2, 0, 0, 0), bit, dd};
                    } else {
                        r = Rule{id_of(PS, s2, dirR, j + 1, 0), bit, dd};
                    }
                }
                rules[i * 2 + bit] = r;
            }
        }
        CompiledTM out;
        out.bits_per_symbol = bits;
        out.tm.state_count = (uint32_t)todo.size();
        out.tm.start = start;
        out.tm.halt_mode = HaltMode::ExplicitHaltState;
        out.tm.rules = std::move(rules);
        // halt marker: replace sentinel ids
        for (Rule& r : out.tm.rules)
            if (r.next == kHaltSentinel) r.next = out.tm.state_count;
        return out;
    }

    static constexpr uint32_t kHaltSentinel = 0xffffffffu;

    Rule finish_write(const SymRule& sr, uint8_t low_bit) {
        // Writing the final (lowest) bit at symbol offset 0, then moving on.
        if (sr.next == src.halt_state())
            return Rule{kHaltSentinel, low_bit, Dir::R};
        if (bits == 1)
            return Rule{id_of(RD, sr.next, 0, 0, 0), low_bit, sr.dir};
        return Rule{id_of(PS, sr.next, sr.dir == Dir::R, 1, 0), low_bit, sr.dir};
    }
};

} // namespace

Bits CompiledTM::encode_input(const std::vector<uint32_t>& syms) const {
    Bits out;
    out.reserve(syms.size() * bits_per_symbol);
    for (uint32_t v : syms)
        for (int i = bits_per_symbol - 1; i >= 0; --i) out.push_back((v >> i) & 1);
    return out;
}

std::vector<uint32_t> CompiledTM::decode_tape(const Bits& cells) const {
    std::vector<uint32_t> out;
    for (size_t i = 0; i + bits_per_symbol <= cells.size(); i += bits_per_symbol) {
        uint32_t v = 0;
        for (uint32_t j = 0; j < bits_per_symbol; ++j) v = v * 2 + cells[i + j];
        out.push_back(v);
    }
    return out;
}

CompiledTM compile_symbol_tm(const SymbolTM& m) {
    Compiler c(m);
    return c.run();
}

// ---- ww recognizer ---------------------------------------------------------

namespace {

// symbols
enum : uint32_t { BL = 0, LA = 1, LB = 2, CA = 3, CB = 4 };

// states
enum : uint32_t {
    INIT,
    P1_SEEK,
    P1_SCAN,
    P1_MARK,
    P1_RET,
    P1_NEXT,
    REW,      // just compared; caps of the right group may follow
    REW_CAPS, // walking left over right-group capitals
    REW_LOW,  // walking left over lowered middle to the next left capital
    CARRY_A,
    CARRY_B,
    RIGHT_A,
    RIGHT_B,
    CMP_A,
    CMP_B,
    WW_STATES
};

SymbolTM build_ww_sym() {
    SymbolTM m;
    m.state_count = WW_STATES;
    m.symbol_count = 5;
    m.start = INIT;
    const uint32_t HALT = m.halt_state();
    // default: fall into halt writing back (unreachable cells)
    m.rules.assign(m.state_count * m.symbol_count, SymRule{HALT, CB, Dir::R});
    auto R = [&](uint32_t s, uint32_t v, uint32_t next, uint32_t w, Dir d) {
        m.set_rule(s, v, SymRule{next, w, d});
    };
    auto accept_here = [&](uint32_t s, uint32_t v) { R(s, v, HALT, CA, Dir::R); };
    auto reject_here = [&](uint32_t s, uint32_t v) { R(s, v, HALT, CB, Dir::R); };

    // INIT at cell 0: empty word accepts; else capitalize the leftmost letter.
    accept_here(INIT, BL);
    R(INIT, LA, P1_SEEK, CA, Dir::R);
    R(INIT, LB, P1_SEEK, CB, Dir::R);

    // P1_SEEK: need at least one more lowercase to pair with; otherwise the
    // remaining length was odd.
    R(P1_SEEK, LA, P1_SCAN, LA, Dir::R);
    R(P1_SEEK, LB, P1_SCAN, LB, Dir::R);
    reject_here(P1_SEEK, CA);
    reject_here(P1_SEEK, CB);
    reject_here(P1_SEEK, BL);

    // P1_SCAN: run right to the end of the lowercase region.
    R(P1_SCAN, LA, P1_SCAN, LA, Dir::R);
    R(P1_SCAN, LB, P1_SCAN, LB, Dir::R);
    R(P1_SCAN, CA, P1_MARK, CA, Dir::L);
    R(P1_SCAN, CB, P1_MARK, CB, Dir::L);
    R(P1_SCAN, BL, P1_MARK, BL, Dir::L);

    // P1_MARK: capitalize the rightmost lowercase.
    R(P1_MARK, LA, P1_RET, CA, Dir::L);
    R(P1_MARK, LB, P1_RET, CB, Dir::L);

    // P1_RET: walk left over the lowercase region to the capital boundary.
    R(P1_RET, LA, P1_RET, LA, Dir::L);
    R(P1_RET, LB, P1_RET, LB, Dir::L);
    R(P1_RET, CA, P1_NEXT, CA, Dir::R);
    R(P1_RET, CB, P1_NEXT, CB, Dir::R);

    // P1_NEXT: cell right of the left-capital prefix. Lowercase: next pair.
    // Capital: everything is capitalized, head sits at the middle.
    R(P1_NEXT, LA, P1_SEEK, CA, Dir::R);
    R(P1_NEXT, LB, P1_SEEK, CB, Dir::R);
    R(P1_NEXT, CA, REW_LOW, CA, Dir::L);
    R(P1_NEXT, CB, REW_LOW, CB, Dir::L);

    // REW_LOW ends phase two iterations: left over lowered letters, then the
    // first capital is the next left-half letter to compare; pick it up.
    R(REW_LOW, LA, REW_LOW, LA, Dir::L);
    R(REW_LOW, LB, REW_LOW, LB, Dir::L);
    R(REW_LOW, CA, CARRY_A, LA, Dir::R);
    R(REW_LOW, CB, CARRY_B, LB, Dir::R);

    // CARRY_x: right over the lowered middle to the right capital group.
    R(CARRY_A, LA, CARRY_A, LA, Dir::R);
    R(CARRY_A, LB, CARRY_A, LB, Dir::R);
    R(CARRY_A, CA, RIGHT_A, CA, Dir::R);
    R(CARRY_A, CB, RIGHT_A, CB, Dir::R);
    R(CARRY_B, LA, CARRY_B, LA, Dir::R);
    R(CARRY_B, LB, CARRY_B, LB, Dir::R);
    R(CARRY_B, CA, RIGHT_B, CA, Dir::R);
    R(CARRY_B, CB, RIGHT_B, CB, Dir::R);

    // RIGHT_x: run to the right end of the capital group, step back onto it.
    R(RIGHT_A, CA, RIGHT_A, CA, Dir::R);
    R(RIGHT_A, CB, RIGHT_A, CB, Dir::R);
    R(RIGHT_A, LA, CMP_A, LA, Dir::L);
    R(RIGHT_A, LB, CMP_A, LB, Dir::L);
    R(RIGHT_A, BL, CMP_A, BL, Dir::L);
    R(RIGHT_B, CA, RIGHT_B, CA, Dir::R);
    R(RIGHT_B, CB, RIGHT_B, CB, Dir::R);
    R(RIGHT_B, LA, CMP_B, LA, Dir::L);
    R(RIGHT_B, LB, CMP_B, LB, Dir::L);
    R(RIGHT_B, BL, CMP_B, BL, Dir::L);

    // CMP_x: the rightmost capital of the right group must match the carried
    // letter; lower it and rewind, else reject on the spot.
    R(CMP_A, CA, REW, LA, Dir::L);
    reject_here(CMP_A, CB);
    R(CMP_B, CB, REW, LB, Dir::L);
    reject_here(CMP_B, CA);

    // REW: straight after a successful compare. A lowered letter right away
    // means the pair just compared was the outermost one: accept.
    accept_here(REW, LA);
    accept_here(REW, LB);
    R(REW, CA, REW_CAPS, CA, Dir::L);
    R(REW, CB, REW_CAPS, CB, Dir::L);

    R(REW_CAPS, CA, REW_CAPS, CA, Dir::L);
    R(REW_CAPS, CB, REW_CAPS, CB, Dir::L);
    R(REW_CAPS, LA, REW_LOW, LA, Dir::L);
    R(REW_CAPS, LB, REW_LOW, LB, Dir::L);

    return m;
}

std::vector<uint32_t> word_to_syms(const std::string& word) {
    std::vector<uint32_t> syms;
    syms.reserve(word.size());
    for (char ch : word) {
        if (ch == 'a') syms.push_back(LA);
        else if (ch == 'b') syms.push_back(LB);
        else fail("BadLetter", std::string("ww recognizer wants a/b, got '") + ch + "'");
    }
    return syms;
}

} // namespace

WwRecognizer::Outcome WwRecognizer::run_symbol(const std::string& word, uint64_t max_steps) const {
    SymRunResult r = sym_run(sym, word_to_syms(word), max_steps);
    check(r.halted, "StepLimit", "ww recognizer ran out of steps");
    WwRecognizer::Outcome out;
    int64_t cell = r.head - 1;
    out.accept = cell >= 0 && cell < (int64_t)r.tape.size() && r.tape[cell] == CA;
    out.meters = r.meters;
    return out;
}

WwRecognizer::Outcome WwRecognizer::run_binary(const std::string& word, uint64_t max_steps) const {
    Bits input = bin.encode_input(word_to_syms(word));
    RunLimits lim;
    lim.steps = max_steps;
    RunResult r = tm_run(bin.tm, input, lim);
    check(r.halted, "StepLimit", "ww recognizer (binary) ran out of steps");
    WwRecognizer::Outcome out;
    int64_t cell = (r.tape.head - 1) / (int64_t)bin.bits_per_symbol;
    std::vector<uint32_t> syms = bin.decode_tape(r.tape.cells);
    out.accept = cell >= 0 && cell < (int64_t)syms.size() && syms[cell] == CA;
    out.meters = r.meters;
    return out;
}

WwRecognizer tm_ww_recognizer() {
    WwRecognizer w;
    w.sym = build_ww_sym();
    w.bin = compile_symbol_tm(w.sym);
    return w;
}

bool is_ww(const std::string& word) {
    if (word.size() % 2) return false;
    size_t h = word.size() / 2;
    return word.compare(0, h, word, h, h) == 0;
}

} // namespace wb::tm
