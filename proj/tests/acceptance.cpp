// Acceptance suite: one pass/fail line per criterion, exit nonzero if any
// criterion fails. Tolerances and thresholds are pinned in code.

#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "workbench/batcher.hpp"
#include "workbench/cellular.hpp"
#include "workbench/crypto.hpp"
#include "workbench/games.hpp"
#include "workbench/ikeno.hpp"
#include "workbench/kolmogorov.hpp"
#include "workbench/numtheory.hpp"
#include "workbench/randomized.hpp"
#include "workbench/sumcheck.hpp"
#include "workbench/tiling.hpp"
#include "workbench/tm.hpp"

using namespace wb;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%2d %-24s %s  %s\n", idx, name.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

tm::BinaryTM mk(uint32_t states, std::vector<tm::Rule> rules, uint32_t start = 0) {
    tm::BinaryTM m;
    m.state_count = states;
    m.start = start;
    m.halt_mode = tm::HaltMode::LeftRollOff;
    m.rules = std::move(rules);
    return m;
}

using tm::Dir;
using tm::Rule;

// --- 1: UTM fidelity ---------------------------------------------------------

void criterion_utm() {
    std::vector<tm::BinaryTM> machines = {
        mk(1, {Rule{0, 0, Dir::L}, Rule{0, 1, Dir::L}}),
        mk(1, {Rule{0, 1, Dir::R}, Rule{0, 0, Dir::R}}),
        mk(2, {Rule{1, 0, Dir::R}, Rule{1, 1, Dir::R}, Rule{1, 0, Dir::L}, Rule{1, 1, Dir::L}}),
        mk(2, {Rule{1, 1, Dir::R}, Rule{1, 0, Dir::R}, Rule{0, 0, Dir::L}, Rule{0, 1, Dir::L}}),
        mk(5,
           {Rule{4, 1, Dir::R}, Rule{2, 1, Dir::L}, Rule{0, 0, Dir::L}, Rule{4, 0, Dir::R},
            Rule{1, 1, Dir::R}, Rule{1, 0, Dir::R}, Rule{0, 1, Dir::L}, Rule{2, 0, Dir::L},
            Rule{3, 0, Dir::R}, Rule{3, 1, Dir::L}},
           2),
    };
    uint64_t cases = 0, mismatches = 0;
    for (const auto& m : machines)
        for (int n = 0; n <= 6; ++n)
            for (uint64_t v = 0; v < (1ull << n); ++v) {
                ++cases;
                if (!ikeno::cycle_correspondence(m, bits_from_uint(v, n), 32).exact) ++mismatches;
            }
    report(1, "utm-fidelity", mismatches == 0,
           std::to_string(cases) + " machine/input pairs, " + std::to_string(mismatches) +
               " mismatches");
}

// --- 2: ww recognizers ---------------------------------------------------------

void criterion_ww() {
    tm::WwRecognizer ww = tm::tm_ww_recognizer();
    uint64_t bad = 0;
    for (int n = 0; n <= 12; ++n)
        for (uint64_t v = 0; v < (1ull << n); ++v) {
            std::string word;
            for (int i = 0; i < n; ++i) word.push_back((v >> i) & 1 ? 'b' : 'a');
            if (ww.run_binary(word, 40'000'000).accept != tm::is_ww(word)) ++bad;
        }
    uint64_t bad_ca = 0;
    for (int n = 2; n <= 16; ++n)
        for (uint64_t v = 0; v < (1ull << n); ++v) {
            std::string word;
            for (int i = 0; i < n; ++i) word.push_back((v >> i) & 1 ? 'b' : 'a');
            if (cellular::ww_ca_recognizer(word).accept != tm::is_ww(word)) ++bad_ca;
        }
    double tm_lo = 1e30, tm_hi = 0, ca_lo = 1e30, ca_hi = 0;
    for (int n : {4, 8, 12, 16}) {
        std::string half;
        for (int i = 0; i < n / 2; ++i) half.push_back(i % 2 ? 'b' : 'a');
        std::string word = half + half;
        double tmr = double(ww.run_binary(word, 40'000'000).meters.steps) / (double(n) * n);
        tm_lo = std::min(tm_lo, tmr);
        tm_hi = std::max(tm_hi, tmr);
        double car = double(cellular::ww_ca_recognizer(word).depth) / double(n);
        ca_lo = std::min(ca_lo, car);
        ca_hi = std::max(ca_hi, car);
    }
    bool pass = bad == 0 && bad_ca == 0 && tm_hi / tm_lo <= 4.0 && ca_hi / ca_lo <= 4.0;
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "tm mismatches %llu, ca mismatches %llu, tm band x%.2f, ca band x%.2f",
                  (unsigned long long)bad, (unsigned long long)bad_ca, tm_hi / tm_lo,
                  ca_hi / ca_lo);
    report(2, "ww-recognizers", pass, detail);
}

// --- 3: Batcher ------------------------------------------------------------------

void criterion_batcher() {
    uint64_t bad = 0;
    for (uint32_t n : {2u, 4u, 8u, 16u})
        for (uint64_t v = 0; v < (1ull << n); ++v) {
            std::vector<int64_t> arr(n);
            for (uint32_t i = 0; i < n; ++i) arr[i] = (v >> i) & 1;
            std::vector<int64_t> want = arr;
            std::sort(want.begin(), want.end());
            if (batcher::batcher_sort(arr).sorted != want) ++bad;
        }
    uint64_t multiset_bad = 0;
    Rng rng(1000);
    for (int trial = 0; trial < 10000; ++trial) {
        uint32_t k = 1 + uint32_t(rng.below(8));
        std::vector<int64_t> arr(1u << k);
        for (auto& v : arr) v = int64_t(rng.below(1u << 16));
        std::vector<int64_t> want = arr;
        std::sort(want.begin(), want.end());
        if (batcher::batcher_sort(arr).sorted != want) ++multiset_bad;
    }
    bool depth_ok = true;
    for (uint32_t k = 1; k <= 8; ++k) {
        if (batcher::merge_schedule(k).depth() != k) depth_ok = false;
        if (batcher::sort_schedule(k).depth() != k * (k + 1) / 2) depth_ok = false;
    }
    bool pass = bad == 0 && multiset_bad == 0 && depth_ok;
    report(3, "batcher", pass,
           "0-1 fails " + std::to_string(bad) + ", random fails " +
               std::to_string(multiset_bad) + ", depths " + (depth_ok ? "exact" : "WRONG"));
}

// --- 4: game solving ---------------------------------------------------------------

void criterion_games() {
    games::GameRule match = games::match_game();
    games::ValueTable table = games::solve_retrograde(match, {games::match_key(3, 3, 3, +1)});
    uint64_t dfs_bad = 0;
    for (auto& [pos, val] : table.value)
        if (games::solve_dfs(match, pos) != val) ++dfs_bad;

    std::vector<tm::BinaryTM> machines = {
        mk(1, {Rule{0, 0, Dir::L}, Rule{0, 1, Dir::L}}),
        mk(1, {Rule{0, 0, Dir::R}, Rule{0, 1, Dir::R}}),
        mk(2, {Rule{1, 0, Dir::R}, Rule{1, 1, Dir::R}, Rule{1, 0, Dir::L}, Rule{1, 1, Dir::L}}),
    };
    uint64_t halting_bad = 0, halting_dfs_bad = 0, pairs = 0;
    for (const auto& m : machines)
        for (int n = 0; n <= 3; ++n)
            for (uint64_t v = 0; v < (1ull << n); ++v) {
                Bits in = bits_from_uint(v, n);
                games::HaltingGame hg = games::halting_game(m, in);
                games::ValueTable t = games::solve_retrograde(hg.rule, {hg.start});
                bool halts = tm::bounded_halt(m, in, hg.time_bound);
                ++pairs;
                if ((t.at(hg.start) == 1) != halts) ++halting_bad;
                if (n <= 1) {
                    if (games::solve_dfs(hg.rule, hg.start) != t.at(hg.start)) ++halting_dfs_bad;
                }
            }
    bool pass = dfs_bad == 0 && halting_bad == 0 && halting_dfs_bad == 0;
    report(4, "game-solving", pass,
           "match dfs/retro " + std::to_string(dfs_bad) + " diffs; halting-game vs bounded_halt " +
               std::to_string(halting_bad) + "/" + std::to_string(pairs) + " mismatches");
}

// --- 5: tiling reduction -------------------------------------------------------------

void criterion_tiling() {
    using tiling::Reduction;
    std::vector<tm::BinaryTM> machines;
    {
        tm::BinaryTM loop;
        loop.state_count = 1;
        loop.halt_mode = tm::HaltMode::ExplicitHaltState;
        loop.rules = {Rule{0, 0, Dir::R}, Rule{0, 1, Dir::R}};
        machines.push_back(loop);
        tm::BinaryTM halt2;
        halt2.state_count = 2;
        halt2.halt_mode = tm::HaltMode::ExplicitHaltState;
        halt2.rules = {Rule{1, 0, Dir::R}, Rule{1, 1, Dir::R}, Rule{2, 0, Dir::R},
                       Rule{2, 1, Dir::R}};
        machines.push_back(halt2);
        // halts iff it ever reads a 1 while sweeping right
        tm::BinaryTM seek;
        seek.state_count = 1;
        seek.halt_mode = tm::HaltMode::ExplicitHaltState;
        seek.rules = {Rule{0, 0, Dir::R}, Rule{1, 1, Dir::R}};
        machines.push_back(seek);
        // halts iff the first witness bit is 1 (input length 2)
        tm::BinaryTM wsens;
        wsens.state_count = 4;
        wsens.halt_mode = tm::HaltMode::ExplicitHaltState;
        wsens.rules = {Rule{1, 0, Dir::R}, Rule{1, 1, Dir::R}, Rule{2, 0, Dir::R},
                       Rule{2, 1, Dir::R}, Rule{3, 0, Dir::R}, Rule{4, 1, Dir::R},
                       Rule{3, 0, Dir::R}, Rule{3, 1, Dir::R}};
        machines.push_back(wsens);
    }
    uint64_t cases = 0, bad = 0;
    for (const auto& m : machines)
        for (uint32_t vlen : {1u, 2u})
            for (uint64_t v = 0; v < (1ull << vlen); ++v)
                for (uint32_t h : {2u, 4u, 6u}) {
                    Bits in = bits_from_uint(v, vlen);
                    Reduction red = tiling::tiles_from_run(m, in, h);
                    bool tiled = tiling::solve_backtrack(red.instance).tileable;
                    bool brute = tiling::run_table_exists(m, in, h);
                    ++cases;
                    if (tiled != brute) ++bad;
                }
    // narrow-dp equivalence on random instances
    Rng rng(2024);
    uint64_t dp_bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
        tiling::TilingInstance inst;
        inst.alphabet = 4;
        uint32_t ntiles = 3 + uint32_t(rng.below(7));
        for (uint32_t i = 0; i < ntiles; ++i)
            inst.tiles.push_back(tiling::Tile{uint8_t(rng.below(4)), uint8_t(rng.below(4)),
                                              uint8_t(rng.below(4)), uint8_t(rng.below(4))});
        inst.first_row = {uint32_t(rng.below(ntiles))};
        while (inst.first_row.size() < 8) {
            std::vector<uint32_t> fits;
            for (uint32_t id = 0; id < ntiles; ++id)
                if (tiling::sides_match(inst.tiles[inst.first_row.back()], inst.tiles[id],
                                        tiling::Side::Right))
                    fits.push_back(id);
            if (fits.empty()) break;
            inst.first_row.push_back(fits[rng.below(fits.size())]);
        }
        inst.height = 3;
        if (tiling::solve_backtrack(inst).tileable != tiling::solve_narrow_dp(inst)) ++dp_bad;
    }
    bool pass = bad == 0 && dp_bad == 0;
    report(5, "tiling-reduction", pass,
           std::to_string(cases) + " reduction cases, " + std::to_string(bad) +
               " mismatches; dp/bt diffs " + std::to_string(dp_bad));
}

// --- 6: interactive proof ------------------------------------------------------------

void criterion_ip() {
    sumcheck::ArithGame g;
    g.s = 4;
    g.c_max = 3;
    Rng prng(0x1p1);
    g.field.p = numtheory::gen_prime(17, prng); // >= 2^16
    Bits x = bits_from_string("0110");
    int truth = sumcheck::v_brute(g, 3, x);
    sumcheck::RunStats honest =
        sumcheck::soundness_rate(g, 3, x, sumcheck::ProverKind::Honest, uint64_t(truth), 1000, 41);
    sumcheck::RunStats cheat = sumcheck::soundness_rate(
        g, 3, x, sumcheck::ProverKind::BestResponse, uint64_t(1 - truth), 10000, 42);
    double bound = 6.0 * double(cheat.rounds_per_trial) / double(g.field.p);
    double sigma = std::sqrt(std::max(bound, cheat.rate()) / double(cheat.trials));
    bool pass = honest.accepted == honest.trials && cheat.rate() <= bound + 3.0 * sigma;
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "completeness %llu/1000, false rate %.5f vs bound %.5f (p=%llu, rounds %llu)",
                  (unsigned long long)honest.accepted, cheat.rate(), bound + 3.0 * sigma,
                  (unsigned long long)g.field.p, (unsigned long long)cheat.rounds_per_trial);
    report(6, "interactive-proof", pass, detail);
}

// --- 7: primality -----------------------------------------------------------------------

void criterion_primality() {
    Rng rng(7);
    uint64_t bad = 0;
    for (uint64_t n = 3; n < 10000; n += 2)
        if (numtheory::is_probable_prime(n, 20, rng) != numtheory::is_prime_naive(n)) ++bad;
    // explicit factors from the Carmichael numbers
    bool carmichael_ok = true;
    for (uint64_t c : {561ull, 1105ull, 1729ull}) {
        int factors = 0;
        for (int i = 0; i < 200; ++i) {
            uint64_t x = rng.range(1, c - 1);
            auto v = numtheory::miller_rabin(x, c, c - 1);
            if (v.tag == numtheory::MRVerdict::Factor && c % v.factor == 0 && v.factor > 1 &&
                v.factor < c)
                ++factors;
        }
        if (factors * 2 < 200) carmichael_ok = false;
    }
    auto chain = numtheory::mr_chain(2, 561, 560);
    bool chain_ok = chain.size() == 5 && chain[0] == 263 && chain[1] == 166 && chain[2] == 67 &&
                    chain[3] == 1;
    bool pass = bad == 0 && carmichael_ok && chain_ok;
    report(7, "primality", pass,
           "trial-division diffs " + std::to_string(bad) + ", carmichael factors " +
               (carmichael_ok ? "ok" : "FAIL") + ", 561 chain " + (chain_ok ? "exact" : "WRONG"));
}

// --- 8: Rabin / Blum-Goldwasser -----------------------------------------------------------

void criterion_rabin_bg() {
    uint64_t bad = 0, moduli = 0;
    for (uint64_t p = 3; p < 100; p += 4) {
        if (!numtheory::is_prime_naive(p)) continue;
        for (uint64_t q = p + 4; q * p <= 10000; q += 4) {
            if (!numtheory::is_prime_naive(q)) continue;
            crypto::BlumKey key = crypto::make_blum_key(p, q);
            ++moduli;
            std::vector<uint64_t> qr;
            for (uint64_t x = 1; x < key.n; ++x)
                if (numtheory::gcd_u64(x, key.n) == 1)
                    qr.push_back(numtheory::mulmod(x, x, key.n));
            std::sort(qr.begin(), qr.end());
            qr.erase(std::unique(qr.begin(), qr.end()), qr.end());
            std::set<uint64_t> image;
            for (uint64_t x : qr) {
                uint64_t y = numtheory::mulmod(x, x, key.n);
                image.insert(y);
                if (crypto::rabin_invert(y, key) != x) ++bad;
            }
            if (image.size() != qr.size()) ++bad;
        }
    }
    // worked n = 21 chain
    crypto::BlumKey toy = crypto::make_blum_key(3, 7);
    uint64_t s1 = numtheory::mulmod(4, 4, 21), s2 = numtheory::mulmod(s1, s1, 21),
             s3 = numtheory::mulmod(s2, s2, 21);
    uint64_t v = numtheory::modexp(toy.u, 2, toy.t);
    bool chain_ok = s1 == 16 && s2 == 4 && s3 == 16 && v == 1 &&
                    numtheory::modexp(s3, v, 21) == s1;
    Rng rng(88);
    crypto::BlumKey big = crypto::keygen(60, rng);
    uint64_t rt_bad = 0;
    for (int i = 0; i < 100; ++i) {
        Bits msg = random_bits(rng, 1 + rng.below(32));
        crypto::BgCiphertext ct = crypto::bg_encrypt(msg, big.n, rng);
        if (crypto::bg_decrypt(ct, big) != msg) ++rt_bad;
    }
    bool pass = bad == 0 && chain_ok && rt_bad == 0;
    report(8, "rabin-bg", pass,
           std::to_string(moduli) + " blum moduli exhaustive, " + std::to_string(bad) +
               " permutation fails; chain " + (chain_ok ? "exact" : "WRONG") + "; roundtrips " +
               std::to_string(100 - rt_bad) + "/100 (64-bit n)");
}

// --- 9: hard-core inverter ------------------------------------------------------------------

void criterion_gl() {
    uint32_t noiseless_hits = 0;
    for (int t = 0; t < 50; ++t) {
        Rng rng(derive_stream(900, t));
        Bits hidden = random_bits(rng, 16);
        crypto::GLOracle oracle = [&](const Bits& q) {
            return crypto::hardcore_bit(hidden, q) ? -1 : 1;
        };
        auto res = crypto::gl_invert(oracle, 16, 1.0, rng);
        for (const Bits& c : res.candidates)
            if (c == hidden) {
                ++noiseless_hits;
                break;
            }
    }
    uint32_t noisy_hits = 0;
    for (int t = 0; t < 200; ++t) {
        Rng rng(derive_stream(901, t));
        Rng noise(derive_stream(902, t));
        Bits hidden = random_bits(rng, 12);
        crypto::GLOracle oracle = [&](const Bits& q) {
            int truth = crypto::hardcore_bit(hidden, q) ? -1 : 1;
            return noise.unit() < 0.6 ? truth : -truth; // correlation 0.2
        };
        auto res = crypto::gl_invert(oracle, 12, 0.2, rng);
        for (const Bits& c : res.candidates)
            if (c == hidden) {
                ++noisy_hits;
                break;
            }
    }
    uint32_t control_hits = 0;
    int control_trials = 400;
    for (int t = 0; t < control_trials; ++t) {
        Rng rng(derive_stream(903, t));
        Bits hidden = random_bits(rng, 16);
        crypto::GLOracle oracle = [](const Bits&) { return 1; };
        auto res = crypto::gl_invert(oracle, 16, 1.0, rng);
        for (const Bits& c : res.candidates)
            if (c == hidden) {
                ++control_hits;
                break;
            }
    }
    // the constant oracle only proposes one candidate value; expected hit
    // rate is 2^-16, so a few hundred trials should see none
    bool pass = noiseless_hits == 50 && noisy_hits * 2 >= 200 && control_hits <= 1;
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "noiseless %u/50, eps=0.2 %u/200, constant-oracle %u/%d (2^-16 baseline)",
                  noiseless_hits, noisy_hits, control_hits, control_trials);
    report(9, "hardcore-inverter", pass, detail);
}

// --- 10: quick-sort ---------------------------------------------------------------------------

void criterion_qsort() {
    long double total = 0;
    std::function<void(std::vector<size_t>, long double)> expand =
        [&](std::vector<size_t> prefix, long double weight) {
            size_t used = 0, pending = 0;
            bool incomplete = false;
            auto chooser = [&](size_t len) -> size_t {
                if (used < prefix.size()) return prefix[used++];
                if (!incomplete) {
                    incomplete = true;
                    pending = len; // branch on the first open choice only
                }
                ++used;
                return 0;
            };
            auto res = randomized::quicksort_count({2, 0, 1}, chooser);
            if (!incomplete) {
                total += weight * (long double)res.comparisons;
                return;
            }
            for (size_t c = 0; c < pending; ++c) {
                auto next = prefix;
                next.push_back(c);
                expand(next, weight / (long double)pending);
            }
        };
    expand({}, 1.0L);
    bool exact_ok = std::fabs(double(total) - 8.0 / 3.0) < 1e-12;

    uint32_t n = 128;
    randomized::BigRat exact = randomized::expected_comparisons_exact(n);
    double expect = exact.to_double();
    double sum = 0;
    uint64_t trials = 10000;
    for (uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_stream(1001, t));
        std::vector<int64_t> arr(n);
        for (auto& v : arr) v = int64_t(rng.next() >> 16);
        sum += double(randomized::quicksort_count(arr, rng).comparisons);
    }
    double mean = sum / double(trials);
    double rel = std::fabs(mean - expect) / expect;
    bool pass = exact_ok && rel < 0.03;
    char detail[160];
    std::snprintf(detail, sizeof detail, "n=3 exact %s; n=128 mean %.2f vs %.2f (%.2f%%)",
                  exact_ok ? "8/3" : "WRONG", mean, expect, rel * 100);
    report(10, "quicksort", pass, detail);
}

// --- 11: kolmogorov census ---------------------------------------------------------------------

void criterion_census() {
    bool pass = true;
    std::string detail;
    for (uint32_t n = 1; n <= 10; ++n) {
        auto table = kolmogorov::k_table(n);
        for (uint32_t idx = 0; idx < table.size(); ++idx)
            if (table[idx] > n + kolmogorov::kLiteralOverhead) pass = false;
        for (int i = -int(kolmogorov::kLiteralOverhead); i <= int(n); ++i) {
            uint64_t count = 0;
            for (uint32_t k : table)
                if (int(n) - int(k) > i) ++count;
            double bound = std::pow(2.0, double(int(n) - i));
            if (!(double(count) < bound)) pass = false;
        }
    }
    report(11, "kolmogorov-census", pass,
           pass ? "count(n,i) < 2^(n-i) for all n <= 10, all i; literal bound holds"
                : "census bound violated");
}

// --- 12: extractor -----------------------------------------------------------------------------

void criterion_extract() {
    uint32_t m = 8, i = 2, n = 64, k = 6;
    Rng src_rng(0xfeed);
    std::vector<uint64_t> support(1ull << k);
    for (auto& v : support) v = src_rng.below(1ull << m);
    double total = 0;
    uint64_t draws = 1000;
    for (uint64_t d = 0; d < draws; ++d) {
        Rng rng(derive_stream(0xabcd, d));
        crypto::BitMatrix Z = crypto::random_toeplitz(m, i, rng);
        crypto::BitMatrix X;
        X.rows = n;
        X.cols = m;
        X.a.resize(size_t(n) * m);
        for (uint32_t r = 0; r < n; ++r) {
            uint64_t v = support[rng.below(support.size())];
            for (uint32_t cidx = 0; cidx < m; ++cidx) X.set(r, cidx, (v >> cidx) & 1);
        }
        crypto::BitMatrix out = crypto::toeplitz_extract(X, Z);
        std::vector<uint64_t> hist(1ull << i, 0);
        for (uint32_t r = 0; r < n; ++r) {
            uint64_t val = 0;
            for (uint32_t cidx = 0; cidx < i; ++cidx) val |= uint64_t(out.at(r, cidx)) << cidx;
            ++hist[val];
        }
        double l1 = 0;
        for (uint64_t h : hist) l1 += std::fabs(double(h) / n - 1.0 / double(1ull << i));
        total += std::sqrt(double(n)) * l1;
    }
    double dist = total / double(draws);
    double bound = 4.0 * std::sqrt(double(n) * i / double(1ull << k));
    bool pass = dist <= bound;
    char detail[120];
    std::snprintf(detail, sizeof detail, "sqrt(n)-scaled L1 %.3f <= 4*sqrt(ni/2^k) = %.3f", dist,
                  bound);
    report(12, "extractor", pass, detail);
}

} // namespace

int main() {
    criterion_utm();
    criterion_ww();
    criterion_batcher();
    criterion_games();
    criterion_tiling();
    criterion_ip();
    criterion_primality();
    criterion_rabin_bg();
    criterion_gl();
    criterion_qsort();
    criterion_census();
    criterion_extract();
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 12 criteria passed\n");
    return 0;
}
