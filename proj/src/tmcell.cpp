#include "workbench/tmcell.hpp"

namespace wb::tmcell {

using wb::tm::BinaryTM;
using wb::tm::Dir;

int ptr_of(uint8_t s, const BinaryTM& m) {
    if (s == Void) return 0;
    if (is_plain(s)) return plain_right(s) ? 1 : -1;
    const auto& r = m.rule(head_state(s), head_bit(s));
    return r.dir == Dir::R ? 1 : -1;
}

bool away_pair(uint8_t left, uint8_t right, const BinaryTM& m) {
    int pl = ptr_of(left, m), pr = ptr_of(right, m);
    return pl == -1 && pr == 1;
}

uint8_t next_cell(uint8_t l, uint8_t s, uint8_t r, const BinaryTM& m) {
    if (s == Void) return Void;
    if (is_head(s)) {
        // the head writes and leaves; the vacated cell points after it
        const auto& rule = m.rule(head_state(s), head_bit(s));
        return plain_sym(rule.write, rule.dir == Dir::R);
    }
    // a plain cell becomes the head when the head steps onto it
    if (l != Void && is_head(l)) {
        const auto& rule = m.rule(head_state(l), head_bit(l));
        if (rule.dir == Dir::R) return head_sym(plain_bit(s), rule.next);
    }
    if (r != Void && is_head(r)) {
        const auto& rule = m.rule(head_state(r), head_bit(r));
        if (rule.dir == Dir::L) return head_sym(plain_bit(s), rule.next);
    }
    return s; // plain pointers only change on head adjacency
}

std::vector<uint8_t> initial_row(const BinaryTM& m, const Bits& input, int64_t left_edge,
                                 uint32_t width) {
    std::vector<uint8_t> row(width);
    for (uint32_t i = 0; i < width; ++i) {
        int64_t pos = left_edge + i;
        if (pos < 0) {
            row[i] = Void;
        } else if (pos == 0) {
            uint8_t bit = input.empty() ? 0 : input[0];
            row[i] = head_sym(bit, m.start);
        } else {
            uint8_t bit = pos < (int64_t)input.size() ? input[pos] : 0;
            row[i] = plain_sym(bit, false); // toward the head at cell 0
        }
    }
    return row;
}

uint8_t cell_at(const BinaryTM& m, const Bits& input, int64_t pos, uint64_t t) {
    // wide enough that nothing interesting leaves the window
    int64_t lo = -1 - int64_t(t);
    uint32_t width = uint32_t(int64_t(t) + int64_t(std::max<size_t>(input.size(), 1)) + 3 - lo);
    std::vector<uint8_t> row = initial_row(m, input, lo, width);
    for (uint64_t step = 1; step < t; ++step) {
        std::vector<uint8_t> next(row.size());
        for (size_t i = 0; i < row.size(); ++i) {
            uint8_t l = i > 0 ? row[i - 1] : Void;
            uint8_t r = i + 1 < row.size() ? row[i + 1] : plain_sym(0, false);
            next[i] = next_cell(l, row[i], r, m);
        }
        row = std::move(next);
    }
    if (pos < lo) return Void;
    int64_t idx = pos - lo;
    if (idx >= (int64_t)row.size()) return plain_sym(0, false);
    return row[idx];
}

} // namespace wb::tmcell
