#pragma once

// A Turing machine viewed as a one-pointer cellular automaton: every cell
// carries a bit and a pointer to a neighbour; plain cells point toward the
// head, the head cell carries the machine state and points where its rule
// will move. The head rolling off the left end leaves the leftmost cell
// pointing left, after which the row is frozen - that pointer is the halt
// evidence the Halting Game and the tiling reduction both test for.

#include <cstdint>
#include <vector>

#include "workbench/tm.hpp"

namespace wb::tmcell {

// symbol codes: 0 void (off the tape's left end); 1..4 plain cells
// (bit + pointer); 5 + 2q + bit: head with state q over that bit
enum : uint8_t { Void = 0 };

inline uint8_t plain_sym(uint8_t bit, bool points_right) {
    return uint8_t(1 + bit * 2 + (points_right ? 1 : 0));
}
inline bool is_plain(uint8_t s) { return s >= 1 && s <= 4; }
inline uint8_t plain_bit(uint8_t s) { return uint8_t((s - 1) / 2); }
inline bool plain_right(uint8_t s) { return (s - 1) % 2; }

inline uint8_t head_sym(uint8_t bit, uint32_t state) { return uint8_t(5 + 2 * state + bit); }
inline bool is_head(uint8_t s) { return s >= 5; }
inline uint8_t head_bit(uint8_t s) { return uint8_t((s - 5) % 2); }
inline uint32_t head_state(uint8_t s) { return uint32_t((s - 5) / 2); }

inline uint32_t alphabet_size(const wb::tm::BinaryTM& m) { return 5 + 2 * m.state_count; }

// pointer of a cell: -1 left, +1 right, 0 none (void)
int ptr_of(uint8_t s, const wb::tm::BinaryTM& m);

// adjacent cells pointing away from each other mark an impossible picture
bool away_pair(uint8_t left, uint8_t right, const wb::tm::BinaryTM& m);

// local update: the state of a cell given its neighbourhood one step earlier
uint8_t next_cell(uint8_t l, uint8_t s, uint8_t r, const wb::tm::BinaryTM& m);

// row of cells [left_edge, left_edge + width) at time 1 (the start
// configuration: input at the left, head on cell 0, blanks right)
std::vector<uint8_t> initial_row(const wb::tm::BinaryTM& m, const Bits& input,
                                 int64_t left_edge, uint32_t width);

// the cell at position pos and time t (t = 1 is the start configuration)
uint8_t cell_at(const wb::tm::BinaryTM& m, const Bits& input, int64_t pos, uint64_t t);

} // namespace wb::tmcell
