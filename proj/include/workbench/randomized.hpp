#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "workbench/rng.hpp"

namespace wb::randomized {

// Just enough unsigned bignum for exact harmonic-sum rationals.
struct BigUint {
    std::vector<uint64_t> limbs; // little-endian, no trailing zeros

    static BigUint from_u64(uint64_t v);
    bool is_zero() const { return limbs.empty(); }
    int compare(const BigUint& o) const;

    BigUint add(const BigUint& o) const;
    BigUint sub(const BigUint& o) const; // requires *this >= o
    BigUint mul_small(uint64_t v) const;
    BigUint shl1() const;
    BigUint shr1() const;
    bool odd() const { return !limbs.empty() && (limbs[0] & 1); }

    static BigUint gcd(BigUint a, BigUint b);       // binary gcd
    BigUint div_exact(const BigUint& d) const;      // shift-subtract division
    double to_double() const;
    std::string str() const; // decimal
};

struct BigRat {
    BigUint num, den;
    void reduce();
    double ratio() const; // safe for values far beyond double range
    double to_double() const { return ratio(); }
    std::string str() const { return num.str() + "/" + den.str(); }
};

// Exact expected comparison count of random-pivot Quick-Sort on n distinct
// keys: sum over pairs of 2/(1 + j - i).
BigRat expected_comparisons_exact(uint32_t n);

// ---- Quick-Sort with comparison accounting -----------------------------------

struct QuickSortResult {
    std::vector<int64_t> sorted;
    uint64_t comparisons = 0;
};

// pick(len) chooses the pivot index within the current segment
QuickSortResult quicksort_count(const std::vector<int64_t>& arr,
                                const std::function<size_t(size_t)>& pick);
QuickSortResult quicksort_count(const std::vector<int64_t>& arr, Rng& rng);

// ---- isolated-node heuristic ---------------------------------------------------

struct UGraph {
    uint32_t n = 0;
    std::vector<std::pair<uint32_t, uint32_t>> edges; // sorted, i < j, unique

    void validate() const;
    std::vector<uint32_t> degrees() const;
};

UGraph gnp_graph(uint32_t n, double p, Rng& rng);

enum class HcAnswer { NoHamiltonianCycle, Pass };

// Sound one-sided heuristic: an isolated node rules a Hamiltonian cycle out.
HcAnswer hc_heuristic(const UGraph& g);

// Brute-force Hamiltonian-cycle search for small n (test oracle).
bool has_hamiltonian_cycle(const UGraph& g);

// ---- dining philosophers --------------------------------------------------------

struct PhilosopherStats {
    bool all_ate = false;
    uint64_t finished_round = 0;              // first round by which all had eaten
    std::vector<uint32_t> ate_per_round;      // diners fed in each round
    std::vector<uint64_t> eaters_mask;        // who ate (bit i), n <= 64 only
};

// Synchronous rounds: every hungry diner flips a coin, tails means grabbing
// both adjacent utensils at once; a diner eats when no active neighbour
// grabbed a shared utensil in the same round, then retires.
PhilosopherStats philosophers_sim(uint32_t n, uint64_t max_rounds, Rng& rng);

} // namespace wb::randomized
