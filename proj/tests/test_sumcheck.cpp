#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "workbench/games.hpp"
#include "workbench/numtheory.hpp"
#include "workbench/sumcheck.hpp"

using namespace wb;
using namespace wb::sumcheck;

namespace {

ArithGame toy_game(uint32_t s = 4, uint32_t c = 3, uint64_t p = 131101) {
    ArithGame g;
    g.s = s;
    g.c_max = c + 2;
    g.field.p = p;
    return g;
}

} // namespace

TEST_CASE("boolean game value pinned cases") {
    ArithGame g = toy_game();
    for (uint64_t v = 0; v < 16; ++v) {
        Bits x = bits_from_uint(v, 4);
        CHECK(v_brute(g, 0, x) == x[0]); // V_0(x) = x_1
    }
    // both children of (1,1,0,0) under c=1: V_0 of the shifted positions
    Bits x = bits_from_string("1100");
    // r(m,x) = (1,0,0, m xor 1): V_0 = first bit = 1 for both m
    CHECK(v_brute(g, 1, x) == 1 - 1 * 1);
    Bits y = bits_from_string("0011");
    // r(m,y) = (0,1,1,m): V_0 = 0 for both: 1 - 0*0 = 1
    CHECK(v_brute(g, 1, y) == 1);
}

TEST_CASE("boolean value matches the generic game solver") {
    ArithGame g = toy_game();
    // the shift-register game as a GameRule: position = (bits, moves left)
    games::GameRule rule;
    rule.name = "shift";
    uint32_t s = g.s;
    auto pack = [s](uint64_t mask, uint32_t c, int sign) {
        return games::Position(sign) * games::Position(1 + (c << s | mask));
    };
    rule.moves = [s, pack](games::Position x) {
        uint64_t k = uint64_t(std::llabs(x)) - 1;
        uint64_t mask = k & ((1ull << s) - 1);
        uint32_t c = uint32_t(k >> s);
        std::vector<games::Position> out;
        if (c == 0) return out;
        for (uint64_t m = 0; m <= 1; ++m) {
            uint64_t x1 = mask & 1, x2 = (mask >> 1) & 1;
            uint64_t next = (mask >> 1) | ((m ^ (x1 & x2)) << (s - 1));
            out.push_back(pack(next, c - 1, -games::active_sign(x)));
        }
        return out;
    };
    rule.is_terminal = [s](games::Position x) {
        return (uint64_t(std::llabs(x)) - 1) >> s == 0;
    };
    rule.terminal_value = [s](games::Position x) {
        uint64_t mask = (uint64_t(std::llabs(x)) - 1) & ((1ull << s) - 1);
        // V=1 means the active player wins; translate to +-1 for that player
        return (mask & 1) ? games::active_sign(x) : -games::active_sign(x);
    };
    for (uint32_t c = 0; c <= 3; ++c)
        for (uint64_t v = 0; v < 16; ++v) {
            Bits x = bits_from_uint(v, 4);
            // bits_from_uint is big-endian; x[0] = x_1 needs the low bit first
            std::reverse(x.begin(), x.end());
            uint64_t mask = 0;
            for (uint32_t i = 0; i < 4; ++i) mask |= uint64_t(x[i]) << i;
            int direct = v_brute(g, c, x);
            int solved = games::solve_dfs(rule, pack(mask, c, +1));
            CHECK(direct == (solved > 0 ? 1 : 0));
        }
}

TEST_CASE("arithmetized value agrees with the boolean one on boolean points") {
    for (uint32_t s : {2u, 4u, 5u}) {
        ArithGame g = toy_game(s, 3);
        for (uint32_t c = 0; c <= 3; ++c)
            for (uint64_t v = 0; v < (1ull << s); ++v) {
                Bits x(s);
                for (uint32_t i = 0; i < s; ++i) x[i] = (v >> i) & 1;
                std::vector<uint64_t> xf(x.begin(), x.end());
                CHECK(v_arith(g, c, xf) == uint64_t(v_brute(g, c, x)));
            }
    }
}

TEST_CASE("honest prover satisfies the round identities at every phase") {
    ArithGame g = toy_game();
    const Field& f = g.field;
    Rng rng(404);
    for (uint64_t v = 0; v < 16; ++v) {
        Bits x = bits_from_uint(v, 4);
        ProtocolState st = initial_claim(g, 3, x);
        while (!(st.c == 0 && st.y.size() == g.s)) {
            RoundPoly P = honest_prover(g, st);
            CHECK(P.degree() <= 6);
            if (st.y.size() < g.s) {
                CHECK(f.add(P.eval(f, 0), P.eval(f, 1)) == st.v % f.p);
            } else {
                uint64_t tau = st.x.empty() ? 1 : t_factors(g, st.m, st.x, st.y);
                uint64_t prod = f.mul(P.eval(f, 0), P.eval(f, 1));
                CHECK(f.mul(tau, f.sub(1, prod)) == st.v % f.p);
            }
            RoundOutcome out = verifier_round(g, st, P, rng.below(f.p));
            REQUIRE_FALSE(out.rejected);
            st = out.next;
        }
        CHECK(verifier_final(g, st));
    }
}

TEST_CASE("honest prover refuses a false claim") {
    ArithGame g = toy_game();
    Bits x = bits_from_string("1010");
    ProtocolState st = initial_claim(g, 3, x);
    st.v = st.v ^ 1;
    CHECK_THROWS_AS((void)honest_prover(g, st), Error);
}

TEST_CASE("verifier rejects an identity-violating polynomial at once") {
    ArithGame g = toy_game();
    Bits x = bits_from_string("1010");
    ProtocolState st = initial_claim(g, 3, x);
    RoundPoly junk;
    junk.coeff = {5, 7};
    CHECK(verifier_round(g, st, junk, 3).rejected);
}

TEST_CASE("terminal check compares the claim against x1") {
    ArithGame g = toy_game();
    ProtocolState st;
    st.c = 0;
    st.y = {1, 0, 1, 1};
    st.v = 1;
    CHECK(verifier_final(g, st)); // no factors: initial-style state
    st.v = 0;
    CHECK_FALSE(verifier_final(g, st));
}

TEST_CASE("completeness and a quick soundness sample") {
    ArithGame g = toy_game();
    Bits x = bits_from_string("0110");
    int truth = v_brute(g, 3, x);
    RunStats honest =
        soundness_rate(g, 3, x, ProverKind::Honest, uint64_t(truth), 200, 11);
    CHECK(honest.accepted == honest.trials);
    CHECK(honest.rounds_per_trial == 3 * (4 + 1));
    RunStats cheat =
        soundness_rate(g, 3, x, ProverKind::BestResponse, uint64_t(1 - truth), 400, 12);
    double bound = 6.0 * double(cheat.rounds_per_trial) / double(g.field.p);
    // 3 sigma Monte-Carlo margin on 400 trials
    CHECK(cheat.rate() <= bound + 3.0 * std::sqrt(bound / 400.0) + 0.02);
}

TEST_CASE("a tiny field lets a cheater through noticeably more often") {
    ArithGame big = toy_game(3, 2, 131101);
    ArithGame small = toy_game(3, 2, 11);
    Bits x = bits_from_string("011");
    int truth = v_brute(big, 2, x);
    RunStats rate_small =
        soundness_rate(small, 2, x, ProverKind::BestResponse, uint64_t(1 - truth), 600, 5);
    RunStats rate_big =
        soundness_rate(big, 2, x, ProverKind::BestResponse, uint64_t(1 - truth), 600, 5);
    CHECK(rate_small.rate() > rate_big.rate());
    CHECK(rate_small.rate() > 0.2); // the degenerate control is visibly unsound
}
