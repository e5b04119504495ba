#include "workbench/crypto.hpp"

#include <algorithm>
#include <cmath>

#include "workbench/error.hpp"
#include "workbench/numtheory.hpp"

namespace wb::crypto {

using namespace wb::numtheory;

BlumKey make_blum_key(uint64_t p, uint64_t q) {
    check(p % 4 == 3 && q % 4 == 3, "NotBlum", "both primes must be 3 (mod 4)");
    check(p != q, "NotBlum", "the two primes must differ");
    Rng rng(0x626c756d);
    check(is_probable_prime(p, 40, rng) && is_probable_prime(q, 40, rng), "NotBlum",
          "factors must be prime");
    BlumKey k;
    k.p = p;
    k.q = q;
    k.n = p * q;
    k.t = (p - 1) * (q - 1) / 4;
    check(k.t % 2 == 1, "NotBlum", "(p-1)(q-1)/4 must be odd");
    k.u = (k.t + 1) / 2;
    return k;
}

BlumKey keygen(int bits, Rng& rng) {
    check(bits >= 6 && bits <= 62, "BadInput", "modulus size out of range");
    int half = bits / 2;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        uint64_t p = gen_blum_prime(half, rng);
        uint64_t q = gen_blum_prime(bits - half, rng);
        if (p == q) continue;
        return make_blum_key(p, q);
    }
    fail("GenerationTimeout", "no Blum key within the attempt budget");
}

bool is_quadratic_residue(uint64_t y, const BlumKey& key) {
    y %= key.n;
    if (gcd_u64(y, key.n) != 1) return false;
    return modexp(y % key.p, (key.p - 1) / 2, key.p) == 1 &&
           modexp(y % key.q, (key.q - 1) / 2, key.q) == 1;
}

uint64_t rabin_forward(uint64_t x, uint64_t n) {
    check(n >= 2, "BadInput", "modulus too small");
    x %= n;
    check(gcd_u64(x, n) == 1, "NotCoprime", "forward input must be coprime with n");
    return mulmod(x, x, n);
}

uint64_t rabin_invert(uint64_t y, const BlumKey& key) {
    check(is_quadratic_residue(y, key), "NotResidue", "inversion wants y in Q_n");
    return modexp(y % key.n, key.u, key.n);
}

uint8_t hardcore_bit(const Bits& x, const Bits& p) {
    check(x.size() == p.size(), "LengthMismatch", "hard-core bit wants equal lengths");
    uint8_t acc = 0;
    for (size_t i = 0; i < x.size(); ++i) acc ^= uint8_t(x[i] & p[i]);
    return acc;
}

Bits residue_bits(uint64_t x, uint64_t n) {
    int width = 0;
    while ((1ull << width) <= n) ++width;
    Bits out(width);
    for (int i = 0; i < width; ++i) out[i] = (x >> i) & 1;
    return out;
}

Bits prg_stream(uint64_t x0, const Bits& p, const BlumKey& key, size_t len) {
    check(p.size() == residue_bits(0, key.n).size(), "LengthMismatch",
          "mask vector must have the modulus width");
    x0 %= key.n;
    check(gcd_u64(x0, key.n) == 1, "NotCoprime", "seed must be coprime with n");
    uint64_t x = is_quadratic_residue(x0, key) ? x0 : mulmod(x0, x0, key.n);
    Bits out;
    out.reserve(len);
    for (size_t i = 0; i < len; ++i) {
        out.push_back(hardcore_bit(residue_bits(x, key.n), p));
        x = mulmod(x, x, key.n);
    }
    return out;
}

BgCiphertext bg_encrypt(const Bits& message, uint64_t n, Rng& rng) {
    check(n >= 6, "BadInput", "modulus too small");
    BgCiphertext ct;
    ct.x = random_bits(rng, residue_bits(0, n).size());
    uint64_t s0;
    do {
        s0 = rng.range(2, n - 1);
    } while (gcd_u64(s0, n) != 1);
    // s_1 .. s_{k-1} feed the keystream, s_k travels in clear
    size_t k = message.size() + 1;
    uint64_t s = mulmod(s0, s0, n); // s_1
    Bits stream;
    for (size_t i = 1; i < k; ++i) {
        stream.push_back(hardcore_bit(residue_bits(s, n), ct.x));
        s = mulmod(s, s, n);
    }
    ct.s_last = s; // s_k
    ct.cipher.resize(message.size());
    for (size_t i = 0; i < message.size(); ++i) ct.cipher[i] = message[i] ^ stream[i];
    return ct;
}

Bits bg_decrypt(const BgCiphertext& ct, const BlumKey& key) {
    size_t k = ct.cipher.size() + 1;
    // v = u^{k-1} mod t recovers s_1 from s_k
    uint64_t v = modexp(key.u, k - 1, key.t);
    uint64_t s1 = modexp(ct.s_last % key.n, v, key.n);
    // sanity: squaring forward k-1 times must reproduce s_k
    uint64_t s = s1;
    for (size_t i = 1; i < k; ++i) s = mulmod(s, s, key.n);
    check(s == ct.s_last % key.n, "KeyMismatch", "ciphertext does not match this key");
    Bits out(ct.cipher.size());
    s = s1;
    for (size_t i = 0; i < ct.cipher.size(); ++i) {
        out[i] = ct.cipher[i] ^ hardcore_bit(residue_bits(s, key.n), ct.x);
        s = mulmod(s, s, key.n);
    }
    return out;
}

Signature sign_release(uint64_t x, uint64_t n) {
    Signature sig;
    sig.x = x % n;
    sig.y = rabin_forward(x, n);
    return sig;
}

bool verify_sig(uint64_t x, uint64_t y, uint64_t n) {
    return mulmod(x % n, x % n, n) == y % n;
}

// ---- Goldreich-Levin inverter -----------------------------------------------

GLResult gl_invert(const GLOracle& oracle, uint32_t k, double eps, Rng& rng) {
    check(k >= 1 && k <= 40, "BadInput", "hidden-vector length out of range");
    check(eps > 0 && eps <= 1, "BadInput", "correlation promise in (0,1]");
    uint32_t j = (uint32_t)std::ceil(std::log2(2.0 * k / (eps * eps)));
    if (j < 1) j = 1;
    check(j <= 22, "BadInput", "candidate table 2^j too large");
    uint64_t rcount = 1ull << j;

    // random k x j matrix P; column-major storage of the r -> Pr map
    std::vector<Bits> pcols(j, Bits(k));
    for (uint32_t c = 0; c < j; ++c)
        for (uint32_t row = 0; row < k; ++row) pcols[c][row] = uint8_t(rng.next() & 1);

    // incremental Gray-code walk keeps P r updates cheap
    GLResult out;
    out.j = j;
    std::vector<int64_t> h(rcount);
    std::vector<std::vector<int64_t>> signs(k, std::vector<int64_t>(rcount));
    Bits pr(k, 0);
    uint64_t gray = 0;
    for (uint64_t idx = 0; idx < rcount; ++idx) {
        uint64_t g = idx ^ (idx >> 1);
        if (idx != 0) {
            uint64_t flip = g ^ gray;
            uint32_t bit = 0;
            while (!((flip >> bit) & 1)) ++bit;
            for (uint32_t row = 0; row < k; ++row) pr[row] ^= pcols[bit][row];
        }
        gray = g;
        for (uint32_t i = 0; i < k; ++i) {
            Bits query = pr;
            query[i] ^= 1; // + v_i
            int guess = oracle(query);
            check(guess == 1 || guess == -1, "BadOracle", "oracle must answer +-1");
            signs[i][g] = guess;
        }
    }

    // fast Walsh-Hadamard: h_i(z) = sum_r (-1)^{z.r} G_i(r)
    for (uint32_t i = 0; i < k; ++i) {
        std::vector<int64_t>& t = signs[i];
        for (uint64_t len = 1; len < rcount; len <<= 1)
            for (uint64_t a = 0; a < rcount; a += len << 1)
                for (uint64_t b = a; b < a + len; ++b) {
                    int64_t u = t[b], v = t[b + len];
                    t[b] = u + v;
                    t[b + len] = u - v;
                }
    }

    out.candidates.reserve(rcount);
    for (uint64_t z = 0; z < rcount; ++z) {
        Bits cand(k);
        for (uint32_t i = 0; i < k; ++i) cand[i] = signs[i][z] < 0 ? 1 : 0;
        out.candidates.push_back(std::move(cand));
    }
    return out;
}

// ---- Toeplitz extractor -------------------------------------------------------

BitMatrix random_toeplitz(uint32_t rows, uint32_t cols, Rng& rng) {
    BitMatrix z;
    z.rows = rows;
    z.cols = cols;
    z.a.assign(size_t(rows) * cols, 0);
    // first row and first column determine everything
    std::vector<uint8_t> top(cols), left(rows);
    for (auto& v : top) v = uint8_t(rng.next() & 1);
    for (auto& v : left) v = uint8_t(rng.next() & 1);
    left[0] = top[0];
    for (uint32_t r = 0; r < rows; ++r)
        for (uint32_t c = 0; c < cols; ++c)
            z.set(r, c, r <= c ? top[c - r] : left[r - c]);
    return z;
}

bool is_toeplitz(const BitMatrix& z) {
    for (uint32_t r = 0; r + 1 < z.rows; ++r)
        for (uint32_t c = 0; c + 1 < z.cols; ++c)
            if (z.at(r + 1, c + 1) != z.at(r, c)) return false;
    return true;
}

BitMatrix toeplitz_extract(const BitMatrix& x, const BitMatrix& z) {
    check(x.cols == z.rows, "ShapeMismatch", "inner dimensions must agree");
    check(is_toeplitz(z), "NotToeplitz", "Z must satisfy Z[a+1][b+1] = Z[a][b]");
    BitMatrix out;
    out.rows = x.rows;
    out.cols = z.cols;
    out.a.assign(size_t(out.rows) * out.cols, 0);
    for (uint32_t r = 0; r < x.rows; ++r)
        for (uint32_t c = 0; c < z.cols; ++c) {
            uint8_t acc = 0;
            for (uint32_t m = 0; m < x.cols; ++m) acc ^= uint8_t(x.at(r, m) & z.at(m, c));
            out.set(r, c, acc);
        }
    return out;
}

// ---- next-bit hybrid harness ---------------------------------------------------

HybridReport nextbit_hybrid(const std::function<Bits(Rng&)>& gen,
                            const std::function<bool(const Bits&)>& test, uint32_t n,
                            uint64_t trials, uint64_t seed) {
    check(trials >= 1, "BadInput", "at least one trial");
    HybridReport rep;
    rep.p.resize(n + 1);
    for (uint32_t i = 0; i <= n; ++i) {
        uint64_t hits = 0;
        Rng rng(derive_stream(seed, i));
        for (uint64_t t = 0; t < trials; ++t) {
            Bits sample = gen(rng);
            check(sample.size() == n, "LengthMismatch", "generator must emit n bits");
            for (uint32_t b = 0; b < i; ++b) sample[b] = uint8_t(rng.next() & 1);
            if (test(sample)) ++hits;
        }
        rep.p[i] = double(hits) / double(trials);
    }
    for (uint32_t i = 1; i <= n; ++i) {
        double gap = std::fabs(rep.p[i - 1] - rep.p[i]);
        if (gap > rep.max_gap) {
            rep.max_gap = gap;
            rep.argmax = i;
        }
    }
    rep.total_gap = rep.p[0] - rep.p[n];
    rep.correlation = n ? std::fabs(rep.total_gap) / n : 0.0;
    return rep;
}

} // namespace wb::crypto
