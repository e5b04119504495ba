#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "workbench/bits.hpp"
#include "workbench/rng.hpp"

namespace wb::crypto {

// n = pq with p = q = 3 (mod 4); squaring permutes the quadratic residues
// and exponent u inverts it.
struct BlumKey {
    uint64_t n = 0, p = 0, q = 0;
    uint64_t t = 0; // (p-1)(q-1)/4, odd
    uint64_t u = 0; // (t+1)/2
};

BlumKey make_blum_key(uint64_t p, uint64_t q);
BlumKey keygen(int bits, Rng& rng);

bool is_quadratic_residue(uint64_t y, const BlumKey& key);

uint64_t rabin_forward(uint64_t x, uint64_t n);           // x^2 mod n, gcd(x,n)=1
uint64_t rabin_invert(uint64_t y, const BlumKey& key);    // y^u mod n, y in Q_n

// parity of the bitwise product <x,p>
uint8_t hardcore_bit(const Bits& x, const Bits& p);

// residue as a little-endian bit vector of the modulus width
Bits residue_bits(uint64_t x, uint64_t n);

// S_i = B_p(x_i), x_{i+1} = x_i^2 mod n; x0 is squared into Q_n if needed
Bits prg_stream(uint64_t x0, const Bits& p, const BlumKey& key, size_t len);

struct BgCiphertext {
    Bits x;          // the hard-core mask vector, sent in clear
    uint64_t s_last; // s_k
    Bits cipher;     // m xor keystream (|m| = k-1)
};

BgCiphertext bg_encrypt(const Bits& message, uint64_t n, Rng& rng);
Bits bg_decrypt(const BgCiphertext& ct, const BlumKey& key);

struct Signature {
    uint64_t x; // released authorization
    uint64_t y; // x^2 mod n
};
Signature sign_release(uint64_t x, uint64_t n);
bool verify_sig(uint64_t x, uint64_t y, uint64_t n);

// ---- hard-core inverter (list decoding via the Hadamard transform) ----------

// guesses the parity <x,query> of a hidden x, +-1 valued
using GLOracle = std::function<int(const Bits& query)>;

struct GLResult {
    uint32_t j = 0;
    std::vector<Bits> candidates; // exactly 2^j of them
};

// Queries the oracle on P r + v_i over all r, fast-transforms each G_i and
// reads candidate bits off the signs. The caller checks candidates against
// whatever one-way function is being inverted.
GLResult gl_invert(const GLOracle& oracle, uint32_t k, double eps, Rng& rng);

// ---- Toeplitz extractor ------------------------------------------------------

struct BitMatrix {
    uint32_t rows = 0, cols = 0;
    std::vector<uint8_t> a; // row-major

    uint8_t at(uint32_t r, uint32_t c) const { return a[r * cols + c]; }
    void set(uint32_t r, uint32_t c, uint8_t v) { a[r * cols + c] = v; }
};

BitMatrix random_toeplitz(uint32_t rows, uint32_t cols, Rng& rng);
bool is_toeplitz(const BitMatrix& z);

// boolean product X (n x m) * Z (m x i) over GF(2)
BitMatrix toeplitz_extract(const BitMatrix& x, const BitMatrix& z);

// ---- next-bit hybrid harness -------------------------------------------------

struct HybridReport {
    std::vector<double> p;  // acceptance of hybrid i (first i digits random)
    uint32_t argmax = 0;    // position with the largest |p_{i-1} - p_i|
    double max_gap = 0.0;
    double total_gap = 0.0; // p_0 - p_n (telescoping sum of the gaps)
    double correlation = 0.0; // implied predictor correlation ~ |d| / n
};

HybridReport nextbit_hybrid(const std::function<Bits(Rng&)>& gen,
                            const std::function<bool(const Bits&)>& test, uint32_t n,
                            uint64_t trials, uint64_t seed);

} // namespace wb::crypto
