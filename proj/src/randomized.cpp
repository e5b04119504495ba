#include "workbench/randomized.hpp"

#include <algorithm>
#include <cmath>

#include "workbench/error.hpp"

namespace wb::randomized {

// ---- bignum --------------------------------------------------------------------

static void trim(std::vector<uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

BigUint BigUint::from_u64(uint64_t v) {
    BigUint b;
    if (v) b.limbs.push_back(v);
    return b;
}

int BigUint::compare(const BigUint& o) const {
    if (limbs.size() != o.limbs.size()) return limbs.size() < o.limbs.size() ? -1 : 1;
    for (size_t i = limbs.size(); i-- > 0;)
        if (limbs[i] != o.limbs[i]) return limbs[i] < o.limbs[i] ? -1 : 1;
    return 0;
}

BigUint BigUint::add(const BigUint& o) const {
    BigUint out;
    size_t n = std::max(limbs.size(), o.limbs.size());
    out.limbs.resize(n, 0);
    unsigned __int128 carry = 0;
    for (size_t i = 0; i < n; ++i) {
        unsigned __int128 s = carry;
        if (i < limbs.size()) s += limbs[i];
        if (i < o.limbs.size()) s += o.limbs[i];
        out.limbs[i] = (uint64_t)s;
        carry = s >> 64;
    }
    if (carry) out.limbs.push_back((uint64_t)carry);
    return out;
}

BigUint BigUint::sub(const BigUint& o) const {
    check(compare(o) >= 0, "Underflow", "BigUint subtraction below zero");
    BigUint out;
    out.limbs.resize(limbs.size(), 0);
    __int128 borrow = 0;
    for (size_t i = 0; i < limbs.size(); ++i) {
        __int128 s = (__int128)limbs[i] - borrow - (i < o.limbs.size() ? o.limbs[i] : 0);
        if (s < 0) {
            s += ((__int128)1 << 64);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.limbs[i] = (uint64_t)s;
    }
    trim(out.limbs);
    return out;
}

BigUint BigUint::mul_small(uint64_t v) const {
    BigUint out;
    if (v == 0 || is_zero()) return out;
    out.limbs.resize(limbs.size(), 0);
    unsigned __int128 carry = 0;
    for (size_t i = 0; i < limbs.size(); ++i) {
        unsigned __int128 s = (unsigned __int128)limbs[i] * v + carry;
        out.limbs[i] = (uint64_t)s;
        carry = s >> 64;
    }
    if (carry) out.limbs.push_back((uint64_t)carry);
    return out;
}

BigUint BigUint::shl1() const {
    BigUint out;
    out.limbs.resize(limbs.size(), 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < limbs.size(); ++i) {
        out.limbs[i] = (limbs[i] << 1) | carry;
        carry = limbs[i] >> 63;
    }
    if (carry) out.limbs.push_back(carry);
    return out;
}

BigUint BigUint::shr1() const {
    BigUint out;
    out.limbs.resize(limbs.size(), 0);
    uint64_t carry = 0;
    for (size_t i = limbs.size(); i-- > 0;) {
        out.limbs[i] = (limbs[i] >> 1) | (carry << 63);
        carry = limbs[i] & 1;
    }
    trim(out.limbs);
    return out;
}

BigUint BigUint::gcd(BigUint a, BigUint b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int shift = 0;
    while (!a.odd() && !b.odd()) {
        a = a.shr1();
        b = b.shr1();
        ++shift;
    }
    while (!a.odd()) a = a.shr1();
    while (!b.is_zero()) {
        while (!b.odd()) b = b.shr1();
        if (a.compare(b) > 0) std::swap(a, b);
        b = b.sub(a);
    }
    for (int i = 0; i < shift; ++i) a = a.shl1();
    return a;
}

BigUint BigUint::div_exact(const BigUint& d) const {
    check(!d.is_zero(), "DivideByZero", "BigUint division by zero");
    // shift-subtract long division; remainder must come out zero
    BigUint rem;
    BigUint quot;
    size_t bits = limbs.size() * 64;
    quot.limbs.assign(limbs.size(), 0);
    for (size_t i = bits; i-- > 0;) {
        rem = rem.shl1();
        uint64_t bit = (limbs[i / 64] >> (i % 64)) & 1;
        if (bit) {
            if (rem.limbs.empty()) rem.limbs.push_back(0);
            rem.limbs[0] |= 1;
        }
        if (rem.compare(d) >= 0) {
            rem = rem.sub(d);
            quot.limbs[i / 64] |= 1ull << (i % 64);
        }
    }
    check(rem.is_zero(), "NotDivisible", "div_exact on a non-multiple");
    trim(quot.limbs);
    return quot;
}

double BigUint::to_double() const {
    // scale by the bit length so huge values stay finite
    if (is_zero()) return 0;
    size_t top = limbs.size() - 1;
    double mant = double(limbs[top]);
    if (top >= 1) mant = mant * 18446744073709551616.0 + double(limbs[top - 1]);
    if (top >= 2) mant = mant * 18446744073709551616.0 + double(limbs[top - 2]);
    int dropped_limbs = int(top) - 2;
    if (dropped_limbs <= 0) return mant;
    return mant * std::pow(2.0, 64.0 * dropped_limbs);
}

std::string BigUint::str() const {
    if (is_zero()) return "0";
    std::vector<uint64_t> v = limbs;
    std::string out;
    while (!v.empty()) {
        // divide by 10
        unsigned __int128 rem = 0;
        for (size_t i = v.size(); i-- > 0;) {
            unsigned __int128 cur = (rem << 64) | v[i];
            v[i] = (uint64_t)(cur / 10);
            rem = cur % 10;
        }
        trim(v);
        out.push_back(char('0' + int(rem)));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

// v ~ mant * 2^exp with mant in [1, 2^128)
std::pair<double, int> mant_exp(const BigUint& v) {
    size_t top = v.limbs.size() - 1;
    double m = double(v.limbs[top]);
    int e = int(top) * 64;
    if (top >= 1) {
        m = m * 18446744073709551616.0 + double(v.limbs[top - 1]);
        e -= 64;
    }
    return {m, e};
}

} // namespace

double BigRat::ratio() const {
    if (num.is_zero()) return 0;
    auto [mn, en] = mant_exp(num);
    auto [md, ed] = mant_exp(den);
    return (mn / md) * std::pow(2.0, double(en - ed));
}

void BigRat::reduce() {
    check(!den.is_zero(), "DivideByZero", "rational with zero denominator");
    if (num.is_zero()) {
        den = BigUint::from_u64(1);
        return;
    }
    BigUint g = BigUint::gcd(num, den);
    num = num.div_exact(g);
    den = den.div_exact(g);
}

BigRat expected_comparisons_exact(uint32_t n) {
    check(n >= 1, "BadInput", "n >= 1");
    // sum over gaps g of (n-g) * 2/(g+1)
    BigRat acc;
    acc.num = BigUint();
    acc.den = BigUint::from_u64(1);
    for (uint32_t g = 1; g < n; ++g) {
        uint64_t add_num = 2ull * (n - g);
        uint64_t add_den = g + 1;
        acc.num = acc.num.mul_small(add_den).add(acc.den.mul_small(add_num));
        acc.den = acc.den.mul_small(add_den);
        acc.reduce();
    }
    return acc;
}

// ---- quicksort -----------------------------------------------------------------

namespace {

void qsort_rec(std::vector<int64_t>& a, size_t lo, size_t hi,
               const std::function<size_t(size_t)>& pick, uint64_t& comps) {
    size_t len = hi - lo;
    if (len <= 1) return;
    size_t pi = lo + pick(len);
    int64_t pivot = a[pi];
    std::swap(a[pi], a[hi - 1]);
    // every other entry in the segment is compared with the pivot
    comps += len - 1;
    size_t store = lo;
    for (size_t i = lo; i + 1 < hi; ++i)
        if (a[i] < pivot) std::swap(a[i], a[store++]);
    std::swap(a[store], a[hi - 1]);
    qsort_rec(a, lo, store, pick, comps);
    qsort_rec(a, store + 1, hi, pick, comps);
}

} // namespace

QuickSortResult quicksort_count(const std::vector<int64_t>& arr,
                                const std::function<size_t(size_t)>& pick) {
    QuickSortResult out;
    out.sorted = arr;
    qsort_rec(out.sorted, 0, out.sorted.size(), pick, out.comparisons);
    return out;
}

QuickSortResult quicksort_count(const std::vector<int64_t>& arr, Rng& rng) {
    return quicksort_count(arr, [&rng](size_t len) { return size_t(rng.below(len)); });
}

// ---- isolated-node heuristic ------------------------------------------------

void UGraph::validate() const {
    for (auto [a, b] : edges) {
        check(a < b, "BadGraph", "edges stored with a < b");
        check(b < n, "BadGraph", "edge endpoint out of range");
    }
    for (size_t i = 1; i < edges.size(); ++i)
        check(edges[i - 1] < edges[i], "BadGraph", "edges must be sorted and unique");
}

std::vector<uint32_t> UGraph::degrees() const {
    std::vector<uint32_t> deg(n, 0);
    for (auto [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

UGraph gnp_graph(uint32_t n, double p, Rng& rng) {
    UGraph g;
    g.n = n;
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = a + 1; b < n; ++b)
            if (rng.unit() < p) g.edges.emplace_back(a, b);
    return g;
}

HcAnswer hc_heuristic(const UGraph& g) {
    for (uint32_t d : g.degrees())
        if (d == 0) return HcAnswer::NoHamiltonianCycle;
    return HcAnswer::Pass;
}

bool has_hamiltonian_cycle(const UGraph& g) {
    if (g.n == 0) return false;
    if (g.n == 1) return true;
    std::vector<std::vector<uint8_t>> adj(g.n, std::vector<uint8_t>(g.n, 0));
    for (auto [a, b] : g.edges) adj[a][b] = adj[b][a] = 1;
    std::vector<uint32_t> path{0};
    std::vector<uint8_t> used(g.n, 0);
    used[0] = 1;
    std::function<bool()> dfs = [&]() -> bool {
        if (path.size() == g.n) return adj[path.back()][0];
        for (uint32_t v = 1; v < g.n; ++v) {
            if (used[v] || !adj[path.back()][v]) continue;
            used[v] = 1;
            path.push_back(v);
            if (dfs()) return true;
            path.pop_back();
            used[v] = 0;
        }
        return false;
    };
    return dfs();
}

// ---- dining philosophers ------------------------------------------------------

PhilosopherStats philosophers_sim(uint32_t n, uint64_t max_rounds, Rng& rng) {
    check(n >= 2, "BadInput", "at least two philosophers");
    PhilosopherStats stats;
    std::vector<uint8_t> hungry(n, 1);
    uint32_t remaining = n;
    for (uint64_t round = 1; round <= max_rounds && remaining; ++round) {
        std::vector<uint8_t> tries(n, 0);
        for (uint32_t i = 0; i < n; ++i)
            if (hungry[i]) tries[i] = rng.coin() ? 0 : 1; // heads sits still
        uint32_t fed = 0;
        std::vector<uint8_t> eats(n, 0);
        for (uint32_t i = 0; i < n; ++i) {
            if (!tries[i]) continue;
            uint32_t left = (i + n - 1) % n, right = (i + 1) % n;
            bool contested = (left != i && hungry[left] && tries[left]) ||
                             (right != i && hungry[right] && tries[right]);
            if (!contested) {
                eats[i] = 1;
                ++fed;
            }
        }
        uint64_t mask = 0;
        for (uint32_t i = 0; i < n; ++i)
            if (eats[i]) {
                hungry[i] = 0;
                --remaining;
                if (i < 64) mask |= 1ull << i;
            }
        stats.ate_per_round.push_back(fed);
        if (n <= 64) stats.eaters_mask.push_back(mask);
        if (!remaining) {
            stats.all_ate = true;
            stats.finished_round = round;
        }
    }
    return stats;
}

} // namespace wb::randomized
