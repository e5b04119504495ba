#include "workbench/sumcheck.hpp"

#include <algorithm>

#include "workbench/numtheory.hpp"

namespace wb::sumcheck {

uint64_t Field::mul(uint64_t a, uint64_t b) const {
    return (uint64_t)((unsigned __int128)(a % p) * (b % p) % p);
}

uint64_t Field::inv(uint64_t a) const {
    check(a % p != 0, "DivideByZero", "no inverse of 0");
    return wb::numtheory::modexp(a % p, p - 2, p);
}

uint64_t RoundPoly::eval(const Field& f, uint64_t x) const {
    uint64_t acc = 0;
    for (size_t i = coeff.size(); i-- > 0;) acc = f.add(f.mul(acc, x), coeff[i]);
    return acc;
}

uint32_t RoundPoly::degree() const {
    for (size_t i = coeff.size(); i-- > 0;)
        if (coeff[i] != 0) return (uint32_t)i;
    return 0;
}

RoundPoly RoundPoly::interpolate(const Field& f, const std::vector<uint64_t>& xs,
                                 const std::vector<uint64_t>& ys) {
    check(xs.size() == ys.size() && !xs.empty(), "BadInput", "interpolation size mismatch");
    size_t n = xs.size();
    RoundPoly out;
    out.coeff.assign(n, 0);
    // Lagrange basis, expanded coefficient-wise
    for (size_t i = 0; i < n; ++i) {
        std::vector<uint64_t> basis{1};
        uint64_t denom = 1;
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            // basis *= (x - xs[j])
            std::vector<uint64_t> nb(basis.size() + 1, 0);
            for (size_t k = 0; k < basis.size(); ++k) {
                nb[k + 1] = f.add(nb[k + 1], basis[k]);
                nb[k] = f.sub(nb[k], f.mul(basis[k], xs[j]));
            }
            basis = std::move(nb);
            denom = f.mul(denom, f.sub(xs[i], xs[j]));
        }
        uint64_t scale = f.mul(ys[i], f.inv(denom));
        for (size_t k = 0; k < basis.size(); ++k)
            out.coeff[k] = f.add(out.coeff[k], f.mul(basis[k], scale));
    }
    while (out.coeff.size() > 1 && out.coeff.back() == 0) out.coeff.pop_back();
    return out;
}

// ---- game machinery -----------------------------------------------------------

namespace {

// boolean shift-register rule: r(m,x) = (x_2..x_s, m xor x_1 x_2)
uint64_t bool_step(uint32_t s, uint64_t mask, uint64_t m) {
    uint64_t x1 = mask & 1, x2 = s >= 2 ? (mask >> 1) & 1 : 0;
    uint64_t out = mask >> 1;
    uint64_t newbit = m ^ (x1 & x2);
    out |= newbit << (s - 1);
    return out;
}

// V_c at every boolean position, for c = 0..c_max (x_1 is mask bit 0)
std::vector<std::vector<uint64_t>> bool_tables(const ArithGame& g) {
    std::vector<std::vector<uint64_t>> v(g.c_max + 1, std::vector<uint64_t>(1ull << g.s));
    for (uint64_t mask = 0; mask < (1ull << g.s); ++mask) v[0][mask] = mask & 1;
    for (uint32_t c = 1; c <= g.c_max; ++c)
        for (uint64_t mask = 0; mask < (1ull << g.s); ++mask) {
            uint64_t a = v[c - 1][bool_step(g.s, mask, 0)];
            uint64_t b = v[c - 1][bool_step(g.s, mask, 1)];
            v[c][mask] = 1 - a * b;
        }
    return v;
}

struct Engine {
    const ArithGame& g;
    const Field& f;
    std::vector<std::vector<uint64_t>> tables;

    explicit Engine(const ArithGame& game) : g(game), f(game.field), tables(bool_tables(game)) {}

    // multilinear extension of the level-c table at a field point
    uint64_t ml(uint32_t c, const std::vector<uint64_t>& w) const {
        std::vector<uint64_t> t = tables[c];
        uint64_t size = 1ull << g.s;
        for (uint32_t i = 0; i < g.s; ++i) {
            uint64_t half = size >> 1;
            for (uint64_t u = 0; u < half; ++u) {
                uint64_t lo = t[index_pair(u, i, 0)], hi = t[index_pair(u, i, 1)];
                // (1-w_i) lo + w_i hi
                t[u] = f.add(f.mul(f.sub(1, w[i]), lo), f.mul(w[i], hi));
            }
            size = half;
        }
        return t[0];
    }

    static uint64_t index_pair(uint64_t u, uint32_t i, uint64_t bit) {
        // after folding coordinates < i, the table is indexed by the raw mask
        // of the remaining coordinates; coordinate i is the low bit
        return (u << 1) | bit;
    }

    // field extension of the transition rule
    std::vector<uint64_t> rhat(uint64_t m, const std::vector<uint64_t>& x) const {
        std::vector<uint64_t> y(g.s);
        for (uint32_t i = 0; i + 1 < g.s; ++i) y[i] = x[i + 1];
        uint64_t q = g.s >= 2 ? f.mul(x[0], x[1]) : 0; // x_1 x_2
        // m xor q extended: m + q - 2 m q
        y[g.s - 1] = f.sub(f.add(m % f.p, q), f.mul(2 % f.p, f.mul(m, q)));
        return y;
    }

    uint64_t eq(uint64_t a, uint64_t b) const {
        // ab + (1-a)(1-b)
        return f.add(f.mul(a, b), f.mul(f.sub(1, a), f.sub(1, b)));
    }

    uint64_t that(uint64_t m, const std::vector<uint64_t>& x,
                  const std::vector<uint64_t>& y) const {
        std::vector<uint64_t> target = rhat(m, x);
        uint64_t acc = 1;
        for (uint32_t i = 0; i < g.s; ++i) acc = f.mul(acc, eq(y[i], target[i]));
        return acc;
    }

    // V_c at a field position
    uint64_t vhat(uint32_t c, const std::vector<uint64_t>& y) const {
        if (c == 0) return y[0];
        uint64_t a = ml(c - 1, rhat(0, y));
        uint64_t b = ml(c - 1, rhat(1, y));
        return f.sub(1, f.mul(a, b));
    }

    // V_c(m, x, y-prefix): sum over boolean suffixes of vhat * that
    uint64_t val_state(uint32_t c, uint64_t m, const std::vector<uint64_t>& x,
                       std::vector<uint64_t>& y) const {
        if (y.size() == g.s) {
            uint64_t tv = that(m, x, y);
            if (tv == 0) return 0;
            return f.mul(vhat(c, y), tv);
        }
        uint64_t acc = 0;
        for (uint64_t bit = 0; bit <= 1; ++bit) {
            y.push_back(bit);
            acc = f.add(acc, val_state(c, m, x, y));
            y.pop_back();
        }
        return acc;
    }

    // the true claimed value of a protocol state
    uint64_t true_value(const ProtocolState& st) const {
        if (st.x.empty()) {
            // initial phase: claim is about V_c of the position y itself
            check(st.y.size() == g.s, "BadState", "initial claim wants a full position");
            return vhat(st.c, st.y);
        }
        std::vector<uint64_t> y = st.y;
        return val_state(st.c, st.m, st.x, y);
    }

    // the honest round polynomial
    RoundPoly poly_for(const ProtocolState& st) const {
        std::vector<uint64_t> xs, ys;
        if (st.y.size() < g.s) {
            // extension round: P(z) = V_c(m, x, y.z)
            for (uint64_t z = 0; z <= 6; ++z) {
                std::vector<uint64_t> y = st.y;
                y.push_back(z % f.p);
                xs.push_back(z % f.p);
                ys.push_back(val_state(st.c, st.m, st.x, y));
            }
        } else {
            // game-step round: P(z) = V_{c-1}(z, y, {})
            check(st.c >= 1, "BadState", "no game step at c = 0");
            for (uint64_t z = 0; z <= 6; ++z) {
                std::vector<uint64_t> empty;
                xs.push_back(z % f.p);
                ys.push_back(val_state(st.c - 1, z % f.p, st.y, empty));
            }
        }
        return RoundPoly::interpolate(f, xs, ys);
    }
};

} // namespace

int v_brute(const ArithGame& g, uint32_t c, const Bits& x) {
    check(c <= g.c_max, "CapExceeded", "move counter above the configured cap");
    check(x.size() == g.s, "BadInput", "position length must be s");
    if (c == 0) return x[0];
    Bits y0(g.s), y1(g.s);
    for (uint32_t i = 0; i + 1 < g.s; ++i) y0[i] = y1[i] = x[i + 1];
    uint8_t x1 = x[0], x2 = g.s >= 2 ? x[1] : 0;
    y0[g.s - 1] = uint8_t(0 ^ (x1 & x2));
    y1[g.s - 1] = uint8_t(1 ^ (x1 & x2));
    return 1 - v_brute(g, c - 1, y0) * v_brute(g, c - 1, y1);
}

uint64_t v_arith(const ArithGame& g, uint32_t c, const std::vector<uint64_t>& x) {
    Engine e(g);
    return e.vhat(c, x);
}

uint64_t t_factors(const ArithGame& g, uint64_t m, const std::vector<uint64_t>& x,
                   const std::vector<uint64_t>& y) {
    Engine e(g);
    return e.that(m, x, y);
}

ProtocolState initial_claim(const ArithGame& g, uint32_t c, const Bits& x) {
    check(x.size() == g.s, "BadInput", "position length must be s");
    ProtocolState st;
    st.c = c;
    st.y.assign(x.begin(), x.end());
    st.v = uint64_t(v_brute(g, c, x));
    return st;
}

RoundPoly restriction_poly(const ArithGame& g, const ProtocolState& st) {
    Engine e(g);
    return e.poly_for(st);
}

RoundPoly honest_prover(const ArithGame& g, const ProtocolState& st) {
    Engine e(g);
    check(e.true_value(st) == st.v % g.field.p, "FalseClaim",
          "honest prover refuses a wrong claim");
    return e.poly_for(st);
}

RoundOutcome verifier_round(const ArithGame& g, const ProtocolState& st, const RoundPoly& P,
                            uint64_t r) {
    const Field& f = g.field;
    RoundOutcome out;
    if (P.degree() > 6) {
        out.rejected = true;
        return out;
    }
    if (st.y.size() < g.s) {
        // extension round: P(0) + P(1) = v, then y grows by r
        if (f.add(P.eval(f, 0), P.eval(f, 1)) != st.v % f.p) {
            out.rejected = true;
            return out;
        }
        out.next = st;
        out.next.y.push_back(r % f.p);
        out.next.v = P.eval(f, r);
        return out;
    }
    // game-step round: v = tau * (1 - P(0) P(1)); tau = 1 for the initial
    // claim, else Arthur evaluates the transition factors himself
    uint64_t tau = 1;
    if (!st.x.empty()) tau = t_factors(g, st.m, st.x, st.y);
    uint64_t prod = f.mul(P.eval(f, 0), P.eval(f, 1));
    if (f.mul(tau, f.sub(1, prod)) != st.v % f.p) {
        out.rejected = true;
        return out;
    }
    out.next.c = st.c - 1;
    out.next.m = r % f.p;
    out.next.x = st.y;
    out.next.y.clear();
    out.next.v = P.eval(f, r);
    return out;
}

bool verifier_final(const ArithGame& g, const ProtocolState& st) {
    const Field& f = g.field;
    uint64_t tau = 1;
    if (!st.x.empty()) tau = t_factors(g, st.m, st.x, st.y);
    return f.mul(tau, st.y[0]) == st.v % f.p;
}

namespace {

RoundPoly cheat_poly(const ArithGame& g, const Engine& e, const ProtocolState& st,
                     uint64_t true_v) {
    // best response: satisfy the identity while agreeing with the honest
    // polynomial on as many points as the degree bound allows
    const Field& f = g.field;
    RoundPoly honest = e.poly_for(st);
    std::vector<uint64_t> xs, ys;
    if (st.y.size() < g.s) {
        uint64_t p0 = honest.eval(f, 0);
        xs = {0};
        ys = {p0};
        xs.push_back(1);
        ys.push_back(f.sub(st.v, p0)); // force P(0)+P(1) = claimed v
    } else {
        uint64_t tau = st.x.empty() ? 1 : e.that(st.m, st.x, st.y);
        if (tau == 0) return honest; // identity can't be fixed; lose this round
        uint64_t target = f.sub(1, f.mul(st.v, f.inv(tau))); // wanted P(0)P(1)
        xs = {0};
        ys = {1};
        xs.push_back(1);
        ys.push_back(target);
    }
    for (uint64_t z = 2; z <= 6; ++z) {
        xs.push_back(z);
        ys.push_back(honest.eval(f, z));
    }
    (void)true_v;
    return RoundPoly::interpolate(f, xs, ys);
}

} // namespace

bool run_protocol(const ArithGame& g, uint32_t c, const Bits& x, ProverKind prover,
                  std::optional<uint64_t> claim, Rng& rng, uint64_t* rounds) {
    Engine e(g);
    ProtocolState st = initial_claim(g, c, x);
    if (claim) st.v = *claim % g.field.p;
    uint64_t nrounds = 0;
    while (true) {
        if (st.c == 0 && st.y.size() == g.s) {
            if (rounds) *rounds = nrounds;
            return verifier_final(g, st);
        }
        uint64_t truth = e.true_value(st);
        RoundPoly P;
        if (prover == ProverKind::Honest) {
            check(truth == st.v % g.field.p, "FalseClaim", "honest prover given a wrong claim");
            P = e.poly_for(st);
        } else {
            P = truth == st.v % g.field.p ? e.poly_for(st) : cheat_poly(g, e, st, truth);
        }
        uint64_t r = rng.below(g.field.p);
        RoundOutcome out = verifier_round(g, st, P, r);
        ++nrounds;
        if (out.rejected) {
            if (rounds) *rounds = nrounds;
            return false;
        }
        st = out.next;
    }
}

RunStats soundness_rate(const ArithGame& g, uint32_t c, const Bits& x, ProverKind prover,
                        uint64_t claim, uint64_t trials, uint64_t seed) {
    check(trials >= 1, "BadInput", "at least one trial");
    RunStats stats;
    stats.trials = trials;
    for (uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_stream(seed, t));
        uint64_t rounds = 0;
        if (run_protocol(g, c, x, prover, claim, rng, &rounds)) ++stats.accepted;
        stats.rounds_per_trial = rounds;
    }
    return stats;
}

} // namespace wb::sumcheck
