#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "workbench/error.hpp"
#include "workbench/rng.hpp"

namespace wb {

// Bit strings are vectors of 0/1 bytes, index 0 = leftmost.
using Bits = std::vector<uint8_t>;

inline Bits bits_from_string(const std::string& s) {
    Bits out;
    out.reserve(s.size());
    for (char ch : s) {
        if (ch == '0') out.push_back(0);
        else if (ch == '1') out.push_back(1);
        else fail("BadBitChar", std::string("expected 0/1, got '") + ch + "'");
    }
    return out;
}

inline std::string bits_to_string(const Bits& b) {
    std::string s;
    s.reserve(b.size());
    for (uint8_t v : b) s.push_back(v ? '1' : '0');
    return s;
}

inline Bits bits_from_uint(uint64_t v, int width) {
    Bits out(width);
    for (int i = width - 1; i >= 0; --i) {
        out[i] = v & 1;
        v >>= 1;
    }
    return out;
}

inline uint64_t bits_to_uint(const Bits& b) {
    uint64_t v = 0;
    for (uint8_t x : b) v = (v << 1) | x;
    return v;
}

inline Bits random_bits(Rng& rng, size_t n) {
    Bits out(n);
    for (auto& v : out) v = uint8_t(rng.next() & 1);
    return out;
}

} // namespace wb
