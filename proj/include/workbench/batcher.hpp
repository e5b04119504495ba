#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "workbench/error.hpp"

namespace wb::batcher {

// Layers of disjoint compare-exchange pairs over an array of size 2^k.
struct CompareSchedule {
    uint32_t size = 0;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> layers;

    uint32_t depth() const { return (uint32_t)layers.size(); }
};

// Bitonic merge schedule for 2^k entries: layer 1 compares each entry with
// its flip (highest address bit), later layers recurse on halves.
CompareSchedule merge_schedule(uint32_t k);

// Merge + full merge-sort schedules (depth k(k+1)/2 for 2^k entries).
CompareSchedule sort_schedule(uint32_t k);

void apply_schedule(const CompareSchedule& s, std::vector<int64_t>& a);

// Sorted multiset union of two sorted lists laid out as a bitonic cycle
// (a followed by reversed b). |a|+|b| must be a power of two.
std::vector<int64_t> bitonic_merge(const std::vector<int64_t>& a, const std::vector<int64_t>& b);

struct SortResult {
    std::vector<int64_t> sorted;
    uint32_t depth = 0;
};

// Batcher merge-sort; |arr| must be a power of two.
SortResult batcher_sort(const std::vector<int64_t>& arr);

// Unequal or non-power-of-two inputs padded with +inf sentinels.
std::vector<int64_t> bitonic_merge_padded(std::vector<int64_t> a, std::vector<int64_t> b);

} // namespace wb::batcher
