#include "workbench/kolmogorov.hpp"

#include <algorithm>

#include "workbench/error.hpp"
#include "workbench/tm.hpp"

namespace wb::kolmogorov {

namespace {

struct Reader {
    const Bits& b;
    size_t pos = 0;
    bool ok = true;

    uint64_t take(uint32_t nbits) {
        if (pos + nbits > b.size()) {
            ok = false;
            return 0;
        }
        uint64_t v = 0;
        for (uint32_t i = 0; i < nbits; ++i) v = v << 1 | b[pos++];
        return v;
    }
};

} // namespace

std::optional<Bits> vm_run(const Bits& program, const Bits& conditional, const VmLimits& lim) {
    Reader rd{program};
    uint64_t opcode = rd.take(2);
    if (!rd.ok) return std::nullopt;
    if (opcode == 0) { // LITERAL
        uint64_t len = rd.take(5);
        if (!rd.ok) return std::nullopt;
        Bits out;
        out.reserve(len);
        for (uint64_t i = 0; i < len; ++i) out.push_back(uint8_t(rd.take(1)));
        if (!rd.ok || rd.pos != program.size()) return std::nullopt;
        return out;
    }
    if (opcode == 1) { // REPEAT
        uint64_t patlen = rd.take(2) + 1;
        uint64_t count = rd.take(4) + 1;
        Bits pattern;
        for (uint64_t i = 0; i < patlen; ++i) pattern.push_back(uint8_t(rd.take(1)));
        if (!rd.ok || rd.pos != program.size()) return std::nullopt;
        Bits out;
        out.reserve(patlen * count);
        for (uint64_t c = 0; c < count; ++c) out.insert(out.end(), pattern.begin(), pattern.end());
        return out;
    }
    if (opcode == 2) { // RUN-TM
        uint64_t states = rd.take(3) + 1;
        wb::tm::BinaryTM m;
        m.state_count = uint32_t(states);
        m.halt_mode = wb::tm::HaltMode::ExplicitHaltState;
        m.rules.resize(states * 2);
        for (uint32_t s = 0; s < states; ++s)
            for (uint8_t bit = 0; bit <= 1; ++bit) {
                uint64_t next = rd.take(4);
                uint64_t write = rd.take(1);
                uint64_t dir = rd.take(1);
                if (!rd.ok || next > states) return std::nullopt;
                m.set_rule(s, bit,
                           wb::tm::Rule{uint32_t(next), uint8_t(write),
                                        dir ? wb::tm::Dir::R : wb::tm::Dir::L});
            }
        if (!rd.ok || rd.pos != program.size()) return std::nullopt;
        wb::tm::RunLimits rl;
        rl.steps = lim.tmax;
        wb::tm::RunResult res = wb::tm::tm_run(m, conditional, rl);
        if (!res.halted) return std::nullopt;
        return res.tape.cells;
    }
    return std::nullopt; // opcode 11 unused
}

std::optional<uint32_t> k_bounded(const Bits& x, const Bits& y, uint32_t max_len,
                                  const VmLimits& lim) {
    check(max_len <= 24, "BudgetExceeded", "enumeration capped at programs of 24 bits");
    Bits program;
    for (uint32_t len = 1; len <= max_len; ++len) {
        program.assign(len, 0);
        for (uint64_t v = 0; v < (1ull << len); ++v) {
            for (uint32_t i = 0; i < len; ++i) program[i] = (v >> (len - 1 - i)) & 1;
            auto out = vm_run(program, y, lim);
            if (out && *out == x) return len;
        }
    }
    return std::nullopt;
}

Bits length_condition(uint32_t n) {
    int width = 1;
    while ((1u << width) <= n) ++width;
    return bits_from_uint(n, width);
}

std::vector<uint32_t> k_table(uint32_t n, const VmLimits& lim) {
    check(n <= 12, "BudgetExceeded", "exhaustive table capped at n = 12");
    uint32_t max_len = n + kLiteralOverhead;
    std::vector<uint32_t> best(1ull << n, max_len + 1);
    Bits y = length_condition(n);
    Bits program;
    for (uint32_t len = 1; len <= max_len; ++len) {
        program.assign(len, 0);
        for (uint64_t v = 0; v < (1ull << len); ++v) {
            for (uint32_t i = 0; i < len; ++i) program[i] = (v >> (len - 1 - i)) & 1;
            auto out = vm_run(program, y, lim);
            if (!out || out->size() != n) continue;
            uint64_t idx = 0;
            for (uint32_t i = 0; i < n; ++i) idx = idx << 1 | (*out)[i];
            best[idx] = std::min(best[idx], len);
        }
    }
    // the literal program always exists
    for (uint32_t k : best) check(k <= max_len, "Unreached", "literal bound violated");
    return best;
}

int rarity(const Bits& x, const VmLimits& lim) {
    uint32_t n = (uint32_t)x.size();
    check(n >= 1 && n <= 12, "BadInput", "rarity wants 1 <= |x| <= 12");
    auto k = k_bounded(x, length_condition(n), n + kLiteralOverhead, lim);
    check(k.has_value(), "Unreached", "literal program must exist");
    return int(n) - int(*k);
}

std::vector<CensusRow> census(uint32_t n, const VmLimits& lim) {
    check(n >= 1 && n <= 10, "BudgetExceeded", "census capped at n = 10");
    std::vector<uint32_t> table = k_table(n, lim);
    std::vector<CensusRow> rows;
    for (uint32_t i = 0; i <= n; ++i) {
        uint64_t cnt = 0;
        for (uint32_t k : table)
            if (int(n) - int(k) > int(i)) ++cnt;
        rows.push_back(CensusRow{i, cnt});
    }
    return rows;
}

uint64_t census_count(uint32_t n, int i, const VmLimits& lim) {
    std::vector<uint32_t> table = k_table(n, lim);
    uint64_t cnt = 0;
    for (uint32_t k : table)
        if (int(n) - int(k) > i) ++cnt;
    return cnt;
}

} // namespace wb::kolmogorov
