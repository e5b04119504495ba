#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "workbench/error.hpp"
#include "workbench/bits.hpp"
#include "workbench/rng.hpp"

namespace wb::sumcheck {

// Arithmetic in Z_p for a prime p of ~2s bits (tests use >= 17 bits).
struct Field {
    uint64_t p;
    uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p; }
    uint64_t sub(uint64_t a, uint64_t b) const { return (a + p - b % p) % p; }
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const { return (p - a % p) % p; }
    uint64_t inv(uint64_t a) const;
};

// Polynomial in one variable, degree <= 6, coefficients low-to-high.
struct RoundPoly {
    std::vector<uint64_t> coeff; // size <= 7

    uint64_t eval(const Field& f, uint64_t x) const;
    uint32_t degree() const;
    static RoundPoly interpolate(const Field& f, const std::vector<uint64_t>& xs,
                                 const std::vector<uint64_t>& ys);
};

// The arithmetized one-player game over the shift-register rule
//   r(m, x) = (x_2, ..., x_s, m xor x_1 x_2):
// t(m,x,y) factors into s multilinear terms, every variable in at most two.
struct ArithGame {
    uint32_t s = 4;      // position length in bytes (field tokens)
    uint32_t c_max = 6;  // cap on the move counter
    Field field;
};

// Exact boolean game value by direct recursion: V_0(x) = x_1,
// V_{c+1}(x) = 1 - V_c(r(0,x)) V_c(r(1,x)).
int v_brute(const ArithGame& g, uint32_t c, const Bits& x);

// Arithmetized value at field points (the multilinear extension route).
uint64_t v_arith(const ArithGame& g, uint32_t c, const std::vector<uint64_t>& x);

// t(m,x,y) as a field value; the product-of-factors form.
uint64_t t_factors(const ArithGame& g, uint64_t m, const std::vector<uint64_t>& x,
                   const std::vector<uint64_t>& y);

// Protocol configuration X = (m, x, y, v): y is the claimed-successor prefix.
struct ProtocolState {
    uint32_t c = 0; // moves left
    uint64_t m = 0;
    std::vector<uint64_t> x;
    std::vector<uint64_t> y; // |y| <= s
    uint64_t v = 0;          // Merlin's claimed value
};

ProtocolState initial_claim(const ArithGame& g, uint32_t c, const Bits& x);

// The exact restriction polynomial for the next unknown: in z it is
// V_c(m,x,(y,z)) for short y, or the next-move polynomial at full y.
// Refuses (FalseClaim) if the claimed st.v is not the true value.
RoundPoly honest_prover(const ArithGame& g, const ProtocolState& st);

// The prover-side polynomial without the claim check (for cheaters).
RoundPoly restriction_poly(const ArithGame& g, const ProtocolState& st);

struct RoundOutcome {
    bool rejected = false;
    ProtocolState next;
};

// Checks the round identity (P(0)+P(1) = v for short y, P(0)P(1) = 1-v at
// full y), then moves to (m,x,y.r,P(r)) or (r, y, {}, P(r)).
RoundOutcome verifier_round(const ArithGame& g, const ProtocolState& st, const RoundPoly& P,
                            uint64_t r);

// Terminal check once c = 0: the claim must equal x_1.
bool verifier_final(const ArithGame& g, const ProtocolState& st);

enum class ProverKind { Honest, BestResponse };

struct RunStats {
    uint64_t accepted = 0;
    uint64_t trials = 0;
    uint64_t rounds_per_trial = 0;
    double rate() const { return trials ? double(accepted) / double(trials) : 0.0; }
};

// Full protocol run; Merlin's initial claim may be forced to `claim`.
bool run_protocol(const ArithGame& g, uint32_t c, const Bits& x, ProverKind prover,
                  std::optional<uint64_t> claim, Rng& rng, uint64_t* rounds = nullptr);

// Monte-Carlo acceptance frequency of the given claim under the given prover.
RunStats soundness_rate(const ArithGame& g, uint32_t c, const Bits& x, ProverKind prover,
                        uint64_t claim, uint64_t trials, uint64_t seed);

} // namespace wb::sumcheck
