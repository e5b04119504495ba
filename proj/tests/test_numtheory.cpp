#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "workbench/numtheory.hpp"
#include "workbench/rng.hpp"

using namespace wb;
using namespace wb::numtheory;

TEST_CASE("ext_gcd pinned examples") {
    ExtGcd e = ext_gcd(7, 0);
    CHECK(e.g == 7);
    CHECK(e.a == 1);
    CHECK(e.b == 0);

    e = ext_gcd(6, 35);
    CHECK(e.g == 1);
    CHECK(e.a == 6);
    CHECK(e.b == 1); // 6*6 - 1*35 = 1

    e = ext_gcd(12, 8);
    CHECK(e.g == 4);
    { bool identity = (__int128)e.a * 12 - (__int128)e.b * 8 == 4; CHECK(identity); }
}

TEST_CASE("ext_gcd identity on random pairs") {
    Rng rng(11);
    for (int i = 0; i < 100000; ++i) {
        uint64_t x = rng.range(1, 1u << 30);
        uint64_t y = rng.below(1u << 30); // y = 0 allowed
        ExtGcd e = ext_gcd(x, y);
        { bool identity = (__int128)e.a * x - (__int128)e.b * y == (__int128)e.g; CHECK(identity); }
        CHECK(x % e.g == 0);
        if (y) CHECK(y % e.g == 0);
        // any common divisor divides g
        uint64_t d = rng.range(1, 50);
        if (x % d == 0 && (y == 0 || y % d == 0)) CHECK(e.g % d == 0);
    }
}

TEST_CASE("modexp matches naive multiplication on a small grid") {
    for (uint64_t p : {2ull, 3ull, 7ull, 10ull, 97ull, 1000ull, 1024ull}) {
        for (uint64_t x = 0; x < 20; ++x) {
            uint64_t acc = 1 % p;
            for (uint64_t q = 0; q < 40; ++q) {
                CHECK(modexp(x, q, p) == acc);
                acc = acc * (x % p) % p;
            }
        }
    }
    CHECK(modexp(12345, 0, 99) == 1);
    CHECK(modexp(3, 6, 7) == 1);
    CHECK(modexp(2, 10, 1000) == 24);
}

TEST_CASE("fermat holds for small primes") {
    for (uint64_t p = 3; p < 1000; p += 2) {
        if (!is_prime_naive(p)) continue;
        for (uint64_t x = 1; x < p; ++x) CHECK(modexp(x, p - 1, p) == 1);
    }
}

TEST_CASE("miller_rabin pinned chains") {
    // 561 = 3*11*17, d = 560 = 2^4 * 35, witness 2
    std::vector<uint64_t> chain = mr_chain(2, 561, 560);
    REQUIRE(chain.size() == 5);
    CHECK(chain[0] == 263);
    CHECK(chain[1] == 166);
    CHECK(chain[2] == 67);
    CHECK(chain[3] == 1);
    MRVerdict v = miller_rabin(2, 561, 560);
    CHECK(v.tag == MRVerdict::Factor);
    CHECK(v.factor == 17); // gcd(561, 67+1)

    v = miller_rabin(1, 97, 96);
    CHECK(v.tag == MRVerdict::NoInfo);

    v = miller_rabin(2, 9, 8);
    CHECK(v.tag == MRVerdict::CompositeByFermat);
}

TEST_CASE("factors returned are nontrivial divisors") {
    Rng rng(7);
    for (uint64_t p : {561ull, 1105ull, 1729ull, 15ull, 91ull, 341ull}) {
        for (int i = 0; i < 50; ++i) {
            uint64_t x = rng.range(1, p - 1);
            MRVerdict v = miller_rabin(x, p, p - 1);
            if (v.tag == MRVerdict::Factor) {
                CHECK(v.factor > 1);
                CHECK(v.factor < p);
                CHECK(p % v.factor == 0);
            }
        }
    }
}

TEST_CASE("is_probable_prime agrees with trial division below 10^4") {
    Rng rng(42);
    for (uint64_t n = 3; n < 10000; n += 2)
        CHECK(is_probable_prime(n, 20, rng) == is_prime_naive(n));
    Rng r2(1);
    CHECK(is_probable_prime(2, 20, r2));
}

TEST_CASE("prime generation") {
    Rng rng(5);
    for (int bits : {3, 5, 9, 16, 31}) {
        PrimeGenStats st;
        uint64_t p = gen_prime(bits, rng, &st);
        CHECK((p >> (bits - 1)) == 1); // exact bit length
        CHECK(is_probable_prime(p, 40, rng));
        CHECK(st.candidates >= 1);
        uint64_t b = gen_blum_prime(bits, rng);
        CHECK(b % 4 == 3);
        CHECK((b >> (bits - 1)) == 1);
        CHECK(is_probable_prime(b, 40, rng));
    }
    // 3-bit Blum prime can only be 7 (5 = 1 mod 4 is rejected)
    for (int i = 0; i < 10; ++i) {
        Rng r(100 + i);
        CHECK(gen_blum_prime(3, r) == 7);
    }
}

TEST_CASE("blum prime candidate counts stay sane") {
    Rng rng(9);
    uint64_t total = 0;
    int runs = 40;
    for (int i = 0; i < runs; ++i) {
        PrimeGenStats st;
        gen_blum_prime(20, rng, &st);
        total += st.candidates;
    }
    // density 1/O(bits): mean candidate count should be well below 40*bits
    CHECK(total / runs < 40 * 20);
}
