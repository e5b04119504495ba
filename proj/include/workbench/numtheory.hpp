#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "workbench/rng.hpp"

namespace wb::numtheory {

uint64_t gcd_u64(uint64_t a, uint64_t b);

// g = gcd(x,y) together with coefficients satisfying g = A*x - B*y exactly,
// normalized to 0 <= A < max(y,1), 0 <= B < max(x,1).
struct ExtGcd {
    uint64_t g;
    uint64_t a;
    uint64_t b;
};
ExtGcd ext_gcd(uint64_t x, uint64_t y);

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m);
uint64_t modexp(uint64_t x, uint64_t q, uint64_t p);

// Inverse of r mod p for gcd(r,p)=1.
uint64_t modinv(uint64_t r, uint64_t p);

// Outcome of one Miller-Rabin round with witness x and killing exponent d.
struct MRVerdict {
    enum Tag { NoInfo, CompositeByFermat, Factor } tag = NoInfo;
    uint64_t factor = 0; // valid when tag == Factor: 1 < factor < p, factor | p

    bool composite() const { return tag != NoInfo; }
};

// The squaring chain x^(q*2^i) mod p for d = 2^k q; exposed for traces.
std::vector<uint64_t> mr_chain(uint64_t x, uint64_t p, uint64_t d);

// Fermat test completed by the Square Root Test: given d killing Z_p^*
// (d = p-1 when p is prime), either finds nothing, certifies compositeness,
// or extracts an explicit factor via gcd(p, x_i + x_{i+1}).
MRVerdict miller_rabin(uint64_t x, uint64_t p, uint64_t d);

bool is_probable_prime(uint64_t p, int rounds, Rng& rng);

struct PrimeGenStats {
    uint64_t candidates = 0;
};

// Probable prime of exactly `bits` bits. The Blum variant also demands
// p = 3 (mod 4). Throws GenerationTimeout after the candidate budget.
uint64_t gen_prime(int bits, Rng& rng, PrimeGenStats* stats = nullptr);
uint64_t gen_blum_prime(int bits, Rng& rng, PrimeGenStats* stats = nullptr);

// Trial-division oracle used by tests and the CLI for tiny inputs.
bool is_prime_naive(uint64_t n);

} // namespace wb::numtheory
