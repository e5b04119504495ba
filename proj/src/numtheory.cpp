#include "workbench/numtheory.hpp"

#include "workbench/error.hpp"

namespace wb::numtheory {

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

ExtGcd ext_gcd(uint64_t x, uint64_t y) {
    check(x != 0 || y != 0, "BadInput", "ext_gcd(0,0) undefined");
    if (y == 0) return ExtGcd{x, 1, 0}; // gcd(x,0) = x = 1*x - 0*0
    check(x != 0, "BadInput",
          "ext_gcd(0,y): no nonnegative A*x - B*y certificate; call ext_gcd(y,0)");
    // Signed Euclid for a with a*x = g (mod y), then shift a to the least
    // value making both coefficients nonnegative.
    __int128 old_r = x, r = y;
    __int128 old_a = 1, a = 0;
    while (r != 0) {
        __int128 q = old_r / r;
        __int128 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_a - q * a;
        old_a = a;
        a = t;
    }
    __int128 g = old_r;
    __int128 period = (__int128)y / g;
    __int128 A = old_a % period;
    if (A < 0) A += period;
    if (A == 0) A = period; // A = 0 would force B < 0
    __int128 B = (A * (__int128)x - g) / (__int128)y;
    ExtGcd out;
    out.g = (uint64_t)g;
    out.a = (uint64_t)A;
    out.b = (uint64_t)B;
    return out;
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)((unsigned __int128)a * b % m);
}

uint64_t modexp(uint64_t x, uint64_t q, uint64_t p) {
    check(p >= 1, "BadInput", "modexp modulus must be >= 1");
    if (p == 1) return 0;
    uint64_t base = x % p;
    uint64_t acc = 1;
    while (q) {
        if (q & 1) acc = mulmod(acc, base, p);
        base = mulmod(base, base, p);
        q >>= 1;
    }
    return acc;
}

uint64_t modinv(uint64_t r, uint64_t p) {
    ExtGcd e = ext_gcd(r % p, p);
    check(e.g == 1, "NotCoprime", "no inverse: gcd != 1");
    return e.a % p;
}

std::vector<uint64_t> mr_chain(uint64_t x, uint64_t p, uint64_t d) {
    uint64_t q = d;
    int k = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++k;
    }
    std::vector<uint64_t> chain;
    chain.reserve(k + 1);
    uint64_t v = modexp(x, q, p);
    chain.push_back(v);
    for (int i = 0; i < k; ++i) {
        v = mulmod(v, v, p);
        chain.push_back(v);
    }
    return chain;
}

MRVerdict miller_rabin(uint64_t x, uint64_t p, uint64_t d) {
    check(p >= 3 && p % 2 == 1, "BadInput", "miller_rabin wants odd p >= 3");
    check(d >= 1, "BadInput", "killing exponent must be >= 1");
    MRVerdict out;
    x %= p;
    check(x != 0, "BadInput", "witness must be nonzero mod p");
    uint64_t g = gcd_u64(x, p);
    if (g != 1) {
        out.tag = MRVerdict::Factor;
        out.factor = g;
        return out;
    }
    std::vector<uint64_t> chain = mr_chain(x, p, d);
    size_t k = chain.size() - 1;
    if (chain[k] != 1) {
        out.tag = MRVerdict::CompositeByFermat;
        return out;
    }
    // x_k = 1: scan for a nontrivial square root of 1.
    if (chain[0] == 1) return out;
    for (size_t i = 0; i < k; ++i) {
        if (chain[i] == p - 1) return out; // -1 squares to 1 legitimately
        if (chain[i + 1] == 1) {
            // chain[i] is not +-1 but squares to 1: gcd(p, x_i + 1) splits p.
            uint64_t f = gcd_u64(p, chain[i] + 1);
            if (f == 1 || f == p) f = gcd_u64(p, chain[i] + p - 1);
            out.tag = MRVerdict::Factor;
            out.factor = f;
            return out;
        }
    }
    return out;
}

bool is_probable_prime(uint64_t p, int rounds, Rng& rng) {
    check(rounds >= 1, "BadInput", "rounds must be >= 1");
    if (p < 2) return false;
    if (p == 2) return true;
    if (p % 2 == 0) return false;
    if (p == 3) return true;
    for (int i = 0; i < rounds; ++i) {
        uint64_t x = rng.range(1, p - 1);
        if (miller_rabin(x, p, p - 1).composite()) return false;
    }
    return true;
}

static uint64_t gen_prime_impl(int bits, Rng& rng, bool blum, PrimeGenStats* stats) {
    check(bits >= 3 && bits <= 62, "BadInput", "prime bit length out of range");
    const uint64_t budget = 40ull * bits * bits + 4096;
    uint64_t tried = 0;
    while (tried < budget) {
        uint64_t cand = (1ull << (bits - 1)) | rng.below(1ull << (bits - 1));
        cand |= 1; // odd
        if (blum) cand |= 2; // two last bits = 1, i.e. 3 (mod 4)
        ++tried;
        if (blum && cand % 4 != 3) continue;
        if (is_probable_prime(cand, 40, rng)) {
            if (stats) stats->candidates = tried;
            return cand;
        }
    }
    fail("GenerationTimeout", "no prime found within candidate budget");
}

uint64_t gen_prime(int bits, Rng& rng, PrimeGenStats* stats) {
    return gen_prime_impl(bits, rng, false, stats);
}

uint64_t gen_blum_prime(int bits, Rng& rng, PrimeGenStats* stats) {
    return gen_prime_impl(bits, rng, true, stats);
}

bool is_prime_naive(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace wb::numtheory
