#pragma once

#include <cstdint>

namespace wb {

// Deterministic splitmix64 generator. Every randomized routine takes one of
// these explicitly; a root seed plus a stream counter reproduces any run:
// trial k of command with seed s uses Rng(derive_stream(s, k)).
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased value in [0, n) via rejection; stable across platforms.
    uint64_t below(uint64_t n) {
        if (n == 0) return 0;
        uint64_t lim = ~uint64_t{0} - ~uint64_t{0} % n;
        uint64_t v;
        do { v = next(); } while (v >= lim);
        return v % n;
    }

    uint64_t range(uint64_t lo, uint64_t hi) { // inclusive bounds
        return lo + below(hi - lo + 1);
    }

    bool coin() { return next() >> 63; }

    double unit() { // [0,1)
        return double(next() >> 11) * (1.0 / 9007199254740992.0);
    }

private:
    uint64_t state_;
};

inline uint64_t derive_stream(uint64_t root, uint64_t stream) {
    Rng r(root ^ (0xa0761d6478bd642full * (stream + 1)));
    return r.next();
}

} // namespace wb
