#include "workbench/ikeno.hpp"

#include <algorithm>
#include <sstream>

#include "workbench/error.hpp"
#include "ikeno_detail.hpp"

namespace wb::ikeno {

char sym_char(Sym s) {
    switch (s) {
        case Sym::One: return '1';
        case Sym::Zero: return '0';
        case Sym::Star: return '*';
        case Sym::OneP: return 'i';
        case Sym::ZeroP: return 'o';
        case Sym::StarP: return 'x';
    }
    return '?';
}

std::string sym_pretty(Sym s) {
    switch (s) {
        case Sym::One: return "1";
        case Sym::Zero: return "0";
        case Sym::Star: return "*";
        case Sym::OneP: return "1'";
        case Sym::ZeroP: return "0'";
        case Sym::StarP: return "*'";
    }
    return "?";
}

char state_char(St s) {
    static const char* chars = "ABfFDEdbace";
    return chars[uint8_t(s)];
}

namespace detail {

struct BuildEntry {
    Entry e;
    bool choice = false; // the A/B dual cell
};

struct FullTable {
    BuildEntry at[11][6];
};

FullTable build_table(const Conventions& cv) {
    FullTable t{};
    auto keep = [&](PrimeGroup g) { return (cv.prime_bits >> g) & 1; };
    auto set = [&](St s, Sym v, St n, Sym w) {
        t.at[uint8_t(s)][uint8_t(v)] = BuildEntry{Entry{Entry::Move, n, w}, false};
    };
    auto halt = [&](St s, Sym v) { t.at[uint8_t(s)][uint8_t(v)].e.kind = Entry::Halt; };
    auto unreachable = [&](St s, Sym v) {
        t.at[uint8_t(s)][uint8_t(v)].e.kind = Entry::Unreachable;
    };
    // cell printed empty: state and digit unchanged; prime kept or stripped
    auto same = [&](St s, Sym v, bool keepPrime) { set(s, v, s, keepPrime ? v : unprime(v)); };
    using enum Sym;
    using enum St;

    // row A:  f | f | e0 | . | . | .
    set(A, One, f, One);
    set(A, Zero, f, Zero);
    set(A, Star, e, Zero);
    same(A, OneP, keep(kAB_travel));
    same(A, ZeroP, keep(kAB_travel));
    same(A, StarP, keep(kAB_travel));
    // row B:  F | F | e1 | . | . | .
    set(B, One, F, One);
    set(B, Zero, F, Zero);
    set(B, Star, e, One);
    same(B, OneP, keep(kAB_travel));
    same(B, ZeroP, keep(kAB_travel));
    same(B, StarP, keep(kAB_travel));
    // row f,F:  b* | a* | F | . | . | c
    for (St s : {f, F}) {
        set(s, One, b, Star);
        set(s, Zero, a, Star);
        set(s, Star, F, Star);
        same(s, OneP, keep(kfF_digits));
        same(s, ZeroP, keep(kfF_digits));
        set(s, StarP, c, keep(kfF_star) ? StarP : Star);
    }
    // row D:  d' | -- | . | . | . | e'
    set(D, One, d, OneP);
    unreachable(D, Zero);
    set(D, Star, D, Star);
    same(D, OneP, keep(kD_digits));
    same(D, ZeroP, keep(kD_digits));
    set(D, StarP, e, StarP);
    // row E:  = | -- | ' | ' | ' | e'
    halt(E, One);
    unreachable(E, Zero);
    set(E, Star, E, StarP);
    set(E, OneP, E, OneP);
    set(E, ZeroP, E, ZeroP);
    set(E, StarP, e, StarP);
    // row d:  ' | ' | . | ' | ' | D
    set(d, One, d, OneP);
    set(d, Zero, d, ZeroP);
    set(d, Star, d, Star);
    set(d, OneP, d, OneP);
    set(d, ZeroP, d, ZeroP);
    set(d, StarP, D, keep(kd_star) ? StarP : Star);
    // row b:  ' | ' | ' | . | a' | D
    set(b, One, b, OneP);
    set(b, Zero, b, ZeroP);
    set(b, Star, b, StarP);
    same(b, OneP, keep(kb_one));
    set(b, ZeroP, a, ZeroP);
    set(b, StarP, D, keep(kb_star) ? StarP : Star);
    // row a:  ' | ' | ' | b' | F | E'
    set(a, One, a, OneP);
    set(a, Zero, a, ZeroP);
    set(a, Star, a, StarP);
    set(a, OneP, b, OneP);
    set(a, ZeroP, F, Zero); // "unpriming 0s"
    set(a, StarP, E, StarP);
    // row c:  ' | ' | . | = | F | E'
    set(c, One, c, OneP);
    set(c, Zero, c, ZeroP);
    set(c, Star, c, Star);
    halt(c, OneP);
    set(c, ZeroP, F, Zero); // "unpriming 0s"
    set(c, StarP, E, StarP);
    // row e:  ' | ' | ' | B | A | A/B
    set(e, One, e, OneP);
    set(e, Zero, e, ZeroP);
    set(e, Star, e, StarP);
    set(e, OneP, B, keep(ke_digits) ? OneP : One);
    set(e, ZeroP, A, keep(ke_digits) ? ZeroP : Zero);
    set(e, StarP, A, keep(ke_star) ? StarP : Star);
    t.at[uint8_t(e)][uint8_t(StarP)].choice = true;

    return t;
}

ProgramImage encode_with(const wb::tm::BinaryTM& m, const Conventions& cv) {
    using wb::tm::Dir;
    check(m.halt_mode == wb::tm::HaltMode::LeftRollOff && m.extend_right, "NotBinary",
          "UTM encoding wants a binary machine with LeftRollOff halting and "
          "blank-as-zero right extension");
    m.validate();
    for (const auto& r : m.rules)
        check(r.next < m.state_count, "NotBinary",
              "LeftRollOff machines have no explicit halt state");

    ProgramImage img;
    img.state_count = m.state_count;
    img.start = m.start;

    auto make_offset = [&](uint32_t j, uint32_t pair, Segment& seg) {
        if (pair >= j) {
            int off = int(pair - j) + cv.dR;
            check(off >= 0, "OffsetUnderflow", "segment offset below zero");
            seg.left = false;
            seg.offset = uint32_t(off);
        } else {
            int off = int(j - pair) + cv.dL;
            check(off >= 0, "OffsetUnderflow", "segment offset below zero");
            seg.left = true;
            seg.offset = uint32_t(off);
        }
    };

    for (uint32_t s = 0; s < m.state_count; ++s) {
        for (int slot = 0; slot <= 1; ++slot) {
            uint8_t bit = cv.pair_one_first ? uint8_t(1 - slot) : uint8_t(slot);
            const auto& r = m.rule(s, bit);
            Segment seg;
            uint32_t j = 1 + 2 * s + slot;
            make_offset(j, img.pair_base(r.next), seg);
            bool moves_right = r.dir == Dir::R;
            seg.d = uint8_t(moves_right == cv.d_R_is_0 ? 0 : 1);
            seg.b = r.write;
            img.segments.push_back(seg);
        }
    }
    make_offset(0, img.pair_base(m.start), img.boot);
    img.boot.d = 0;
    img.boot.b = 0;
    // self-check: all offsets resolve to valid segment indices
    uint32_t total = 1 + uint32_t(img.segments.size());
    for (uint32_t j = 0; j < total; ++j) {
        const Segment& seg = j == 0 ? img.boot : img.segments[j - 1];
        int64_t target = seg.left ? int64_t(j) - (int64_t(seg.offset) - cv.dL)
                                  : int64_t(j) + (int64_t(seg.offset) - cv.dR);
        check(target >= 1 && target < total, "OffsetUnresolved", "segment offset out of range");
    }
    return img;
}

wb::tm::BinaryTM decode_with(const ProgramImage& prog, const Conventions& cv) {
    using wb::tm::Dir;
    wb::tm::BinaryTM m;
    m.state_count = prog.state_count;
    m.start = prog.start;
    m.halt_mode = wb::tm::HaltMode::LeftRollOff;
    m.rules.resize(size_t(m.state_count) * 2);
    for (uint32_t s = 0; s < m.state_count; ++s) {
        for (int slot = 0; slot <= 1; ++slot) {
            uint8_t bit = cv.pair_one_first ? uint8_t(1 - slot) : uint8_t(slot);
            const Segment& seg = prog.segments[2 * s + slot];
            uint32_t j = 1 + 2 * s + slot;
            int64_t pair = seg.left ? int64_t(j) - (int64_t(seg.offset) - cv.dL)
                                    : int64_t(j) + (int64_t(seg.offset) - cv.dR);
            wb::tm::Rule r;
            r.next = uint32_t((pair - 1) / 2);
            bool d_zero = seg.d == 0;
            r.dir = (d_zero == cv.d_R_is_0) ? Dir::R : Dir::L;
            r.write = seg.b;
            m.set_rule(s, bit, r);
        }
    }
    return m;
}

UtmTape initial_tape_with(const ProgramImage& prog, const Bits& input) {
    UtmTape t;
    auto push_segment = [&](const Segment& seg, bool prime_addr) {
        t.syms.push_back(prime_addr ? Sym::StarP : Sym::Star);
        Sym digit = seg.left ? Sym::One : Sym::Zero;
        Sym pdigit = seg.left ? Sym::OneP : Sym::ZeroP;
        for (uint32_t i = 0; i < seg.offset; ++i) t.syms.push_back(prime_addr ? pdigit : digit);
        t.syms.push_back(seg.d ? Sym::One : Sym::Zero);
        t.syms.push_back(seg.b ? Sym::One : Sym::Zero);
    };
    // Boot segment plays "the prior command": its star and S digits start
    // primed, its d,b (never used) do not.
    push_segment(prog.boot, true);
    for (const Segment& seg : prog.segments) push_segment(seg, false);
    t.syms.push_back(Sym::Star); // lead star of the M region
    t.m_region = t.syms.size();
    for (uint8_t bit : input) t.syms.push_back(bit ? Sym::One : Sym::Zero);
    if (input.empty()) t.syms.push_back(Sym::Zero);
    t.head = int64_t(t.m_region);
    t.state = St::F;
    return t;
}

enum class HaltKind { None, RollOffLeft, HaltMark, MHalt };

struct Engine {
    FullTable table;
    Conventions cv;
    HaltKind halt_kind = HaltKind::None;

    explicit Engine(const Conventions& c) : table(build_table(c)), cv(c) {}

    // single step; returns false once halted
    bool step(UtmTape& t, uint8_t choice_bit) {
        check(!t.halted, "StepOnHalted", "UTM already halted");
        if (t.head >= (int64_t)t.syms.size()) t.syms.resize(t.head + 1, Sym::Zero);
        Sym v = t.syms[t.head];
        if (cv.f_star_halts && t.state == St::f && v == Sym::Star) {
            // the simulated head rolled off the left end of its tape
            t.halted = true;
            halt_kind = HaltKind::MHalt;
            return false;
        }
        const BuildEntry& be = table.at[uint8_t(t.state)][uint8_t(v)];
        if (be.e.kind == Entry::Unreachable)
            fail("UnreachableEntry", "corrupted tape: impossible table cell reached");
        if (be.e.kind == Entry::Halt) {
            t.halted = true;
            halt_kind = HaltKind::HaltMark;
            return false;
        }
        St next = (be.choice && choice_bit) ? St::B : be.e.next;
        t.syms[t.head] = be.e.write;
        St dir_state = cv.move_new_state ? next : t.state;
        t.state = next;
        t.head += looks_left(dir_state) ? -1 : 1;
        if (t.head < 0) {
            t.halted = true;
            halt_kind = HaltKind::RollOffLeft;
            return false;
        }
        return true;
    }

    bool at_cycle_start(const UtmTape& t) const {
        if (t.halted || (t.state != St::F && t.state != St::f)) return false;
        if (t.head < (int64_t)t.m_region) return false;
        // cells beyond the tape read as unprimed blanks
        Sym v = t.head < (int64_t)t.syms.size() ? t.syms[t.head] : Sym::Zero;
        return v == Sym::Zero || v == Sym::One;
    }
};

UtmRun run_with(const ProgramImage& prog, const Bits& input, uint64_t cycle_limit,
                uint64_t step_budget, uint8_t choice_bit, const Conventions& cv,
                HaltKind* kind_out) {
    Engine eng(cv);
    UtmRun out;
    out.tape = initial_tape_with(prog, input);
    while (out.cycles < cycle_limit && !out.tape.halted) {
        if (out.steps >= step_budget) fail("BudgetExceeded", "UTM step budget exhausted");
        if (!eng.step(out.tape, choice_bit)) break;
        ++out.steps;
        if (eng.at_cycle_start(out.tape)) ++out.cycles;
    }
    if (out.tape.halted && eng.halt_kind == HaltKind::MHalt) ++out.cycles;
    out.halted = out.tape.halted;
    if (kind_out) *kind_out = eng.halt_kind;
    return out;
}

DecodedTape decode_m_region_impl(const UtmTape& t) {
    DecodedTape out;
    out.head = t.head - int64_t(t.m_region);
    for (size_t i = t.m_region; i < t.syms.size(); ++i) {
        Sym v = unprime(t.syms[i]);
        if (v == Sym::Star) {
            // the head marker replaces the simulated cell mid-cycle
            out.cells.push_back(0);
            out.head = int64_t(i) - int64_t(t.m_region);
        } else {
            out.cells.push_back(v == Sym::One ? 1 : 0);
        }
    }
    return out;
}

// Core validation: decoded M region must match direct simulation at every
// cycle boundary, and halting must line up exactly.
CheckResult check_machine(const wb::tm::BinaryTM& m, const Bits& input, uint64_t n_cycles,
                          const Conventions& cv, uint64_t step_budget) {
    CheckResult res;
    auto trace = wb::tm::tm_trace(m, input, n_cycles);
    ProgramImage prog;
    try {
        prog = encode_with(m, cv);
    } catch (const Error& e) {
        res.why = std::string("encode: ") + e.what();
        return res;
    }
    Engine eng(cv);
    UtmTape t = initial_tape_with(prog, input);

    auto compare = [&](uint64_t k) -> bool {
        DecodedTape dec = decode_m_region_impl(t);
        const wb::tm::TapeState& want = trace[k];
        if (dec.head != want.head) return false;
        size_t n = std::max(dec.cells.size(), want.cells.size());
        for (size_t i = 0; i < n; ++i) {
            uint8_t x = i < dec.cells.size() ? dec.cells[i] : 0;
            uint8_t y = i < want.cells.size() ? want.cells[i] : 0;
            if (x != y) return false;
        }
        return true;
    };

    if (!compare(0)) {
        res.why = "initial encoding mismatch";
        return res;
    }
    bool m_halts = trace.back().halted(m);
    uint64_t m_steps = trace.size() - 1;
    uint64_t want_cycles = m_halts ? m_steps : n_cycles;

    uint64_t cycles = 0, steps = 0;
    try {
        while (!t.halted && cycles < want_cycles) {
            if (steps++ >= step_budget) {
                res.why = "step budget";
                return res;
            }
            if (!eng.step(t, 0)) break;
            if (eng.at_cycle_start(t)) {
                ++cycles;
                if (cycles > m_steps) break;
                if (!compare(cycles)) {
                    res.why = "tape mismatch at cycle " + std::to_string(cycles);
                    res.cycles = cycles;
                    return res;
                }
            }
        }
    } catch (const Error& e) {
        res.why = e.what();
        res.cycles = cycles;
        return res;
    }
    if (t.halted && eng.halt_kind == HaltKind::MHalt) {
        ++cycles;
        if (cycles <= m_steps && !compare(cycles)) {
            res.why = "tape mismatch at halting cycle " + std::to_string(cycles);
            return res;
        }
    }
    res.cycles = cycles;
    if (m_halts) {
        if (!(t.halted && eng.halt_kind == HaltKind::MHalt && cycles == m_steps)) {
            res.why = "halting mismatch: M halts at " + std::to_string(m_steps) + ", U cycles=" +
                      std::to_string(cycles) + (t.halted ? " halted" : " running");
            return res;
        }
    } else {
        if (t.halted || cycles != want_cycles) {
            res.why = "U stopped early (cycles=" + std::to_string(cycles) + ")";
            return res;
        }
    }
    res.ok = true;
    return res;
}

struct TraceEngine::Impl {
    Engine eng;
    explicit Impl(const Conventions& cv) : eng(cv) {}
};

TraceEngine::TraceEngine(const Conventions& cv) : impl_(new Impl(cv)) {}
TraceEngine::~TraceEngine() { delete impl_; }
bool TraceEngine::step_once(UtmTape& t, uint8_t choice_bit) { return impl_->eng.step(t, choice_bit); }
bool TraceEngine::boundary(const UtmTape& t) const { return impl_->eng.at_cycle_start(t); }
int TraceEngine::kind() const { return int(impl_->eng.halt_kind); }

} // namespace detail

// ---- public surface built on the frozen conventions ------------------------

const Table& utm_table() {
    static Table t = [] {
        detail::FullTable full = detail::build_table(detail::frozen());
        Table out;
        for (int s = 0; s < 11; ++s)
            for (int v = 0; v < 6; ++v) out.at[s][v] = full.at[s][v].e;
        return out;
    }();
    return t;
}

std::optional<std::pair<St, Sym>> utm_transition(St s, Sym v) {
    const Entry& e = utm_table()(s, v);
    if (e.kind == Entry::Unreachable)
        fail("UnreachableEntry", std::string("table cell (") + state_char(s) + ", " +
                                     sym_pretty(v) + ") marks a corrupted tape");
    if (e.kind == Entry::Halt) return std::nullopt;
    return std::make_pair(e.next, e.write);
}

ProgramImage encode_program(const wb::tm::BinaryTM& m) {
    return detail::encode_with(m, detail::frozen());
}

wb::tm::BinaryTM decode_program(const ProgramImage& prog) {
    return detail::decode_with(prog, detail::frozen());
}

UtmTape initial_tape(const ProgramImage& prog, const Bits& input) {
    return detail::initial_tape_with(prog, input);
}

void utm_step(UtmTape& t, uint8_t choice_bit) {
    detail::Engine eng(detail::frozen());
    eng.step(t, choice_bit);
}

UtmRun utm_run(const ProgramImage& prog, const Bits& input, uint64_t cycle_limit,
               uint64_t step_budget, uint8_t choice_bit) {
    return detail::run_with(prog, input, cycle_limit, step_budget, choice_bit, detail::frozen(),
                            nullptr);
}

DecodedTape decode_m_region(const UtmTape& t) {
    return detail::decode_m_region_impl(t);
}

CorrespondenceReport cycle_correspondence(const wb::tm::BinaryTM& m, const Bits& input,
                                          uint64_t n_cycles) {
    detail::CheckResult res =
        detail::check_machine(m, input, n_cycles, detail::frozen(), 50'000'000);
    CorrespondenceReport rep;
    rep.exact = res.ok;
    rep.cycles_checked = res.cycles;
    rep.first_divergence = res.ok ? -1 : int64_t(res.cycles);
    rep.detail = res.ok ? "exact" : res.why;
    return rep;
}

std::string UtmTape::to_string() const {
    std::string s;
    s.reserve(syms.size());
    for (Sym v : syms) s.push_back(sym_char(v));
    return s;
}

namespace detail {

// Resolved display conventions. Pinned by sweeping every candidate reading
// (2^9 prime resolutions x move rule x halt wiring x offset deltas x turn-bit
// polarity x pair order) against direct simulation of a machine suite, all
// inputs, 32 cycles; exactly one behaviour class passes, and it is also the
// literal "the prime is always shown" reading: a cell that prints no prime
// writes the unprimed symbol.
//  - the head moves in the direction the new state looks;
//  - state f on an unprimed * is the simulated head rolling off its left end;
//  - unary offsets: pair right of segment j -> 0^(pair-j+1), left -> 1^(j-pair-1);
//  - within a state's pair the read-bit-1 command comes first (the table's
//    own 1-before-0 column order), and the turn bit is 1 for R, 0 for L.
const Conventions& frozen() {
    static Conventions cv = [] {
        Conventions c;
        c.prime_bits = 0;
        c.move_new_state = true;
        c.f_star_halts = true;
        c.dR = 1;
        c.dL = -1;
        c.d_R_is_0 = false;
        c.pair_one_first = true;
        return c;
    }();
    return cv;
}

} // namespace detail

} // namespace wb::ikeno
