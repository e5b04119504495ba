#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "workbench/bits.hpp"

namespace wb::kolmogorov {

// The reference interpreter: a prefix-free program format with a 2-bit opcode
// header. A program is a bit string that decodes exactly (no spare bits):
//   00 LITERAL  len:5            payload bits         -> the payload
//   01 REPEAT   patlen-1:2  count-1:4  pattern bits   -> pattern repeated
//   10 RUN-TM   states-1:3  per (state,bit): next:4 write:1 dir:1
//               runs the machine on the conditional and outputs its tape
// LITERAL of x costs |x| + kLiteralOverhead bits.
inline constexpr uint32_t kLiteralOverhead = 7;

struct VmLimits {
    uint64_t tmax = 10'000; // step budget per RUN-TM program
};

// Decode-and-run; nullopt when the bits are not a valid program, run
// diverges within tmax, or extra bits remain.
std::optional<Bits> vm_run(const Bits& program, const Bits& conditional, const VmLimits& lim);

// Length of the shortest program producing x from y, at most max_len;
// nullopt when no program of that length works.
std::optional<uint32_t> k_bounded(const Bits& x, const Bits& y, uint32_t max_len,
                                  const VmLimits& lim = {});

// the conditional used for rarity/census: the length written in binary
Bits length_condition(uint32_t n);

// d(x) = n - K(x | bin(n)); never below -kLiteralOverhead.
int rarity(const Bits& x, const VmLimits& lim = {});

struct CensusRow {
    uint32_t i;
    uint64_t count; // strings of length n with d(x) > i
};

// Exact census of rarity over all 2^n strings (n <= 12); every row obeys
// count < 2^(n-i).
std::vector<CensusRow> census(uint32_t n, const VmLimits& lim = {});
uint64_t census_count(uint32_t n, int i, const VmLimits& lim = {});

// All K(x | bin(n)) for |x| = n in one enumeration sweep (index = bit value
// of x read left to right); entries are n + kLiteralOverhead at worst.
std::vector<uint32_t> k_table(uint32_t n, const VmLimits& lim = {});

} // namespace wb::kolmogorov
