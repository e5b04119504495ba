#include "workbench/batcher.hpp"

#include <algorithm>
#include <limits>

namespace wb::batcher {

static bool is_pow2(uint64_t n) { return n && (n & (n - 1)) == 0; }

CompareSchedule merge_schedule(uint32_t k) {
    check(k >= 1, "BadInput", "merge_schedule wants k >= 1");
    CompareSchedule s;
    s.size = 1u << k;
    // layer m compares each entry with its flip inside blocks of 2^(k-m)
    for (uint32_t m = 0; m < k; ++m) {
        uint32_t half = 1u << (k - 1 - m);
        std::vector<std::pair<uint32_t, uint32_t>> layer;
        layer.reserve(s.size / 2);
        for (uint32_t i = 0; i < s.size; ++i)
            if ((i & half) == 0) layer.emplace_back(i, i | half);
        s.layers.push_back(std::move(layer));
    }
    return s;
}

CompareSchedule sort_schedule(uint32_t k) {
    CompareSchedule s;
    s.size = 1u << k;
    // merge sorted blocks pairwise into blocks of 2^m; the first layer of
    // each merge compares mirrored positions, which is the flip compare on
    // the bitonic cycle formed by a block and its reversed sibling
    for (uint32_t m = 1; m <= k; ++m) {
        uint32_t block = 1u << m;
        std::vector<std::pair<uint32_t, uint32_t>> first;
        for (uint32_t b = 0; b < s.size; b += block)
            for (uint32_t i = 0; i < block / 2; ++i)
                first.emplace_back(b + i, b + block - 1 - i);
        s.layers.push_back(std::move(first));
        for (uint32_t level = m; level-- > 1;) {
            uint32_t half = 1u << (level - 1);
            std::vector<std::pair<uint32_t, uint32_t>> layer;
            for (uint32_t i = 0; i < s.size; ++i)
                if ((i & half) == 0) layer.emplace_back(i, i | half);
            s.layers.push_back(std::move(layer));
        }
    }
    return s;
}

void apply_schedule(const CompareSchedule& s, std::vector<int64_t>& a) {
    check(a.size() == s.size, "SizeMismatch", "schedule built for a different size");
    for (const auto& layer : s.layers)
        for (auto [i, j] : layer)
            if (a[i] > a[j]) std::swap(a[i], a[j]);
}

std::vector<int64_t> bitonic_merge(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
    check(is_pow2(a.size() + b.size()), "SizeNotPow2", "merge wants |a|+|b| a power of two");
    check(std::is_sorted(a.begin(), a.end()), "InputUnsorted", "first input not sorted");
    check(std::is_sorted(b.begin(), b.end()), "InputUnsorted", "second input not sorted");
    std::vector<int64_t> arr(a);
    arr.insert(arr.end(), b.rbegin(), b.rend()); // bitonic cycle layout
    if (arr.size() == 1) return arr;
    uint32_t k = 0;
    while ((1u << k) < arr.size()) ++k;
    apply_schedule(merge_schedule(k), arr);
    return arr;
}

SortResult batcher_sort(const std::vector<int64_t>& arr) {
    check(is_pow2(arr.size()), "SizeNotPow2", "batcher_sort wants a power-of-two size");
    SortResult out;
    out.sorted = arr;
    if (arr.size() == 1) return out;
    uint32_t k = 0;
    while ((1u << k) < arr.size()) ++k;
    CompareSchedule s = sort_schedule(k);
    apply_schedule(s, out.sorted);
    out.depth = s.depth();
    return out;
}

std::vector<int64_t> bitonic_merge_padded(std::vector<int64_t> a, std::vector<int64_t> b) {
    const int64_t inf = std::numeric_limits<int64_t>::max();
    size_t total = a.size() + b.size();
    size_t target = 1;
    while (target < total) target <<= 1;
    size_t pad = target - total;
    std::vector<int64_t> bp = b; // sentinels keep b sorted
    bp.insert(bp.end(), pad, inf);
    std::vector<int64_t> merged = bitonic_merge(a, bp);
    merged.resize(total);
    return merged;
}

} // namespace wb::batcher
