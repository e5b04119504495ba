#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "workbench/crypto.hpp"
#include "workbench/numtheory.hpp"

using namespace wb;
using namespace wb::crypto;
using wb::numtheory::gcd_u64;
using wb::numtheory::is_prime_naive;
using wb::numtheory::mulmod;

namespace {

std::vector<uint64_t> residues(const BlumKey& key) {
    std::vector<uint64_t> q;
    for (uint64_t x = 1; x < key.n; ++x)
        if (gcd_u64(x, key.n) == 1) {
            uint64_t y = mulmod(x, x, key.n);
            q.push_back(y);
        }
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    return q;
}

} // namespace

TEST_CASE("the n = 21 worked example") {
    BlumKey key = make_blum_key(3, 7);
    CHECK(key.n == 21);
    CHECK(key.t == 3);
    CHECK(key.u == 2);
    std::vector<uint64_t> q = residues(key);
    CHECK(q == std::vector<uint64_t>{1, 4, 16});
    CHECK(rabin_forward(1, 21) == 1);
    CHECK(rabin_forward(4, 21) == 16);
    CHECK(rabin_forward(16, 21) == 4);
    CHECK(rabin_invert(16, key) == 4);
    CHECK(rabin_forward(rabin_invert(16, key), 21) == 16);
    CHECK(rabin_invert(1, key) == 1);
    CHECK_THROWS_AS((void)rabin_forward(7, 21), Error);   // gcd(7,21) != 1
    CHECK_THROWS_AS((void)rabin_invert(5, key), Error);    // not a residue
}

TEST_CASE("squaring permutes Q_n with exponent-u inverse for small Blum moduli") {
    std::vector<uint64_t> blum_primes;
    for (uint64_t p = 3; p < 100; p += 4)
        if (is_prime_naive(p)) blum_primes.push_back(p);
    int checked = 0;
    for (uint64_t p : blum_primes)
        for (uint64_t q : blum_primes) {
            if (p >= q || p * q > 3000) continue;
            BlumKey key = make_blum_key(p, q);
            std::vector<uint64_t> qr = residues(key);
            std::set<uint64_t> image;
            for (uint64_t x : qr) {
                uint64_t y = mulmod(x, x, key.n);
                image.insert(y);
                CHECK(rabin_invert(y, key) == x);
            }
            CHECK(image.size() == qr.size()); // bijection on Q_n
            ++checked;
        }
    CHECK(checked >= 10);
}

TEST_CASE("hard-core bit basics") {
    CHECK(hardcore_bit(bits_from_string("1101"), bits_from_string("1011")) == 0);
    CHECK(hardcore_bit(bits_from_string("1101"), bits_from_string("0100")) == 1);
    for (uint64_t v = 0; v < 16; ++v)
        CHECK(hardcore_bit(bits_from_uint(v, 4), bits_from_string("0000")) == 0);
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        Bits x = random_bits(rng, 9), y = random_bits(rng, 9), p = random_bits(rng, 9);
        Bits xy(9);
        for (int j = 0; j < 9; ++j) xy[j] = x[j] ^ y[j];
        CHECK(hardcore_bit(xy, p) == (hardcore_bit(x, p) ^ hardcore_bit(y, p)));
    }
    CHECK_THROWS_AS((void)hardcore_bit(bits_from_string("10"), bits_from_string("1")), Error);
}

TEST_CASE("prg stream on the toy modulus and the prefix property") {
    BlumKey key = make_blum_key(3, 7);
    // pick the mask that reads bit 2 of the residue: 4 -> 1, 16 -> 0
    Bits mask(residue_bits(0, key.n).size(), 0);
    mask[2] = 1;
    Bits s = prg_stream(4, mask, key, 6);
    CHECK(bits_to_string(s) == "101010"); // the internal chain 4,16,4,16,...
    CHECK(prg_stream(4, mask, key, 0).empty());
    Bits s9 = prg_stream(4, mask, key, 9);
    CHECK(std::equal(s.begin(), s.end(), s9.begin()));
    // a non-residue seed is squared in: 5 -> 4 -> 16 ...
    Bits t = prg_stream(5, mask, key, 4);
    CHECK(bits_to_string(t) == "1010");
}

TEST_CASE("prg bit frequency is balanced at a 64-bit modulus") {
    Rng rng(3133);
    BlumKey key = keygen(62, rng);
    Bits mask = random_bits(rng, residue_bits(0, key.n).size());
    Bits s = prg_stream(rng.range(2, key.n - 2), mask, key, 10000);
    uint64_t ones = 0;
    for (uint8_t b : s) ones += b;
    double freq = double(ones) / double(s.size());
    CHECK(freq > 0.45);
    CHECK(freq < 0.55);
}

TEST_CASE("blum-goldwasser worked chain and roundtrips") {
    BlumKey key = make_blum_key(3, 7);
    // chain from s0 = 4: s1 = 16, s2 = 4, s3 = 16; v = u^{k-1} mod t = 1
    // decryptor recovers s1 from s3
    BgCiphertext ct;
    ct.x = Bits(residue_bits(0, key.n).size(), 0);
    ct.x[2] = 1;
    ct.s_last = 16;          // s3
    ct.cipher = bits_from_string("00"); // k = 3
    Bits m = bg_decrypt(ct, key);
    // keystream from s1=16, s2=4 under the bit-2 mask: 0, 1
    CHECK(bits_to_string(m) == "01");

    Rng rng(99);
    BlumKey big = keygen(60, rng);
    for (int trial = 0; trial < 100; ++trial) {
        Bits msg = random_bits(rng, 1 + rng.below(24));
        BgCiphertext c = bg_encrypt(msg, big.n, rng);
        CHECK(bg_decrypt(c, big) == msg);
    }
    // all-zero message: the ciphertext is exactly the keystream
    Bits zeros(8, 0);
    BgCiphertext zc = bg_encrypt(zeros, big.n, rng);
    Bits recovered = bg_decrypt(zc, big);
    CHECK(recovered == zeros);
}

TEST_CASE("decrypting with the wrong key fails loudly") {
    Rng rng(4);
    BlumKey k1 = keygen(40, rng);
    BlumKey k2 = keygen(40, rng);
    REQUIRE(k1.n != k2.n);
    BgCiphertext ct = bg_encrypt(bits_from_string("110101"), k1.n, rng);
    CHECK_THROWS_AS((void)bg_decrypt(ct, k2), Error);
}

TEST_CASE("square-root signatures") {
    Signature sig = sign_release(4, 21);
    CHECK(sig.y == 16);
    CHECK(verify_sig(4, 16, 21));
    CHECK_FALSE(verify_sig(4, 17, 21));
    CHECK(verify_sig(21 - 4, 16, 21)); // (-x)^2 = x^2
}

TEST_CASE("gl inverter: noiseless recovery and list shape") {
    Rng rng(1234);
    uint32_t k = 16;
    for (int trial = 0; trial < 20; ++trial) {
        Bits hidden = random_bits(rng, k);
        GLOracle oracle = [&](const Bits& q) { return hardcore_bit(hidden, q) ? -1 : 1; };
        GLResult res = gl_invert(oracle, k, 1.0, rng);
        CHECK(res.candidates.size() == (1ull << res.j));
        bool found = false;
        for (const Bits& c : res.candidates)
            if (c == hidden) found = true;
        CHECK(found);
    }
}

TEST_CASE("gl inverter: noisy recovery beats one half") {
    uint32_t k = 12;
    double eps = 0.2;
    int hits = 0, trials = 60;
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_stream(777, t));
        Bits hidden = random_bits(rng, k);
        Rng noise(derive_stream(778, t));
        GLOracle oracle = [&](const Bits& q) {
            int truth = hardcore_bit(hidden, q) ? -1 : 1;
            return noise.unit() < (1.0 + eps) / 2.0 ? truth : -truth;
        };
        GLResult res = gl_invert(oracle, k, eps, rng);
        for (const Bits& c : res.candidates)
            if (c == hidden) {
                ++hits;
                break;
            }
    }
    CHECK(hits * 2 > trials);
}

TEST_CASE("gl inverter: a constant oracle only ever suggests zero") {
    Rng rng(5);
    GLOracle oracle = [](const Bits&) { return 1; };
    GLResult res = gl_invert(oracle, 10, 1.0, rng);
    for (const Bits& c : res.candidates)
        CHECK(bits_to_uint(c) == 0);
}

TEST_CASE("toeplitz extractor basics") {
    Rng rng(6);
    BitMatrix z = random_toeplitz(8, 3, rng);
    CHECK(is_toeplitz(z));
    BitMatrix x;
    x.rows = 4;
    x.cols = 8;
    x.a.assign(32, 0);
    BitMatrix out = toeplitz_extract(x, z);
    for (uint8_t v : out.a) CHECK(v == 0);

    // i = 1: the output column is the row parities against z's single column
    BitMatrix z1;
    z1.rows = 8;
    z1.cols = 1;
    z1.a.assign(8, 1);
    BitMatrix x2;
    x2.rows = 2;
    x2.cols = 8;
    x2.a.assign(16, 0);
    for (int i = 0; i < 3; ++i) x2.set(0, i, 1); // parity 1
    for (int i = 0; i < 4; ++i) x2.set(1, i, 1); // parity 0
    BitMatrix o2 = toeplitz_extract(x2, z1);
    CHECK(o2.at(0, 0) == 1);
    CHECK(o2.at(1, 0) == 0);

    BitMatrix bad = z;
    bad.set(1, 1, uint8_t(1 ^ bad.at(1, 1)));
    if (!is_toeplitz(bad)) CHECK_THROWS_AS((void)toeplitz_extract(x, bad), Error);
    BitMatrix wrong;
    wrong.rows = 3;
    wrong.cols = 1;
    wrong.a.assign(3, 0);
    CHECK_THROWS_AS((void)toeplitz_extract(x, wrong), Error);
}

TEST_CASE("toeplitz family is pairwise xor-universal on small sizes") {
    // for distinct x, x': Pr_Z[xZ = x'Z] = 2^-i, checked exhaustively
    for (uint32_t m : {3u, 4u}) {
        for (uint32_t i : {1u, 2u}) {
            // enumerate all toeplitz matrices via first row + first column
            uint32_t freedom = m + i - 1;
            for (uint64_t x = 0; x < (1ull << m); ++x)
                for (uint64_t xp = 0; xp < (1ull << m); ++xp) {
                    if (x == xp) continue;
                    uint64_t collisions = 0;
                    for (uint64_t bitsv = 0; bitsv < (1ull << freedom); ++bitsv) {
                        BitMatrix z;
                        z.rows = m;
                        z.cols = i;
                        z.a.assign(size_t(m) * i, 0);
                        for (uint32_t r = 0; r < m; ++r)
                            for (uint32_t c = 0; c < i; ++c) {
                                int diag = int(c) - int(r) + int(m) - 1; // 0..freedom-1
                                z.set(r, c, (bitsv >> diag) & 1);
                            }
                        uint8_t same = 1;
                        for (uint32_t c = 0; c < i && same; ++c) {
                            uint8_t pa = 0, pb = 0;
                            for (uint32_t r = 0; r < m; ++r) {
                                pa ^= uint8_t(((x >> r) & 1) & z.at(r, c));
                                pb ^= uint8_t(((xp >> r) & 1) & z.at(r, c));
                            }
                            same = pa == pb;
                        }
                        collisions += same;
                    }
                    CHECK(collisions == (1ull << (freedom - i)));
                }
            if (m == 4 && i == 2) break; // exhaustive enough
        }
    }
}

TEST_CASE("next-bit hybrids flag a planted flaw and stay flat on noise") {
    uint32_t n = 8;
    auto gen = [n](Rng& r) {
        Bits out(n);
        uint8_t phase = uint8_t(r.next() & 1);
        for (uint32_t i = 0; i < n; ++i) out[i] = uint8_t((i + phase) & 1);
        return out;
    };
    auto test = [](const Bits& b) {
        for (size_t i = 1; i < b.size(); ++i)
            if (b[i] == b[i - 1]) return false;
        return true;
    };
    HybridReport rep = nextbit_hybrid(gen, test, n, 20000, 101);
    CHECK(rep.p[0] == 1.0);
    CHECK(rep.max_gap > 0.3);
    CHECK(rep.argmax == 1);
    CHECK(rep.correlation > 0.05);
    // telescoping: the per-position gaps sum to p_0 - p_n by construction
    double sum = 0;
    for (uint32_t i = 1; i <= n; ++i) sum += rep.p[i - 1] - rep.p[i];
    CHECK(sum == doctest::Approx(rep.total_gap).epsilon(1e-12));

    // null case: a real rng against itself stays within noise
    auto coin_gen = [n](Rng& r) { return random_bits(r, n); };
    HybridReport null = nextbit_hybrid(coin_gen, test, n, 20000, 102);
    CHECK(null.max_gap < 0.02);
}
