#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "workbench/batcher.hpp"
#include "workbench/rng.hpp"

using namespace wb;
using namespace wb::batcher;

TEST_CASE("merge_schedule pinned shapes") {
    CompareSchedule s1 = merge_schedule(1);
    REQUIRE(s1.layers.size() == 1);
    CHECK(s1.layers[0] == std::vector<std::pair<uint32_t, uint32_t>>{{0, 1}});

    CompareSchedule s2 = merge_schedule(2);
    REQUIRE(s2.layers.size() == 2);
    CHECK(s2.layers[0] == std::vector<std::pair<uint32_t, uint32_t>>{{0, 2}, {1, 3}});
    CHECK(s2.layers[1] == std::vector<std::pair<uint32_t, uint32_t>>{{0, 1}, {2, 3}});

    CompareSchedule s3 = merge_schedule(3);
    REQUIRE(s3.layers.size() == 3);
    for (const auto& layer : s3.layers) CHECK(layer.size() == 4);
}

TEST_CASE("schedule layers have disjoint in-range pairs") {
    for (uint32_t k : {1u, 2u, 3u, 4u}) {
        for (const CompareSchedule& s : {merge_schedule(k), sort_schedule(k)}) {
            for (const auto& layer : s.layers) {
                std::vector<bool> used(s.size, false);
                for (auto [i, j] : layer) {
                    CHECK(i < s.size);
                    CHECK(j < s.size);
                    CHECK(i != j);
                    CHECK_FALSE(used[i]);
                    CHECK_FALSE(used[j]);
                    used[i] = used[j] = true;
                }
            }
        }
    }
}

TEST_CASE("bitonic_merge pinned examples") {
    CHECK(bitonic_merge({1, 3, 5, 7}, {2, 4, 6, 8}) ==
          std::vector<int64_t>{1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(bitonic_merge({9}, {4}) == std::vector<int64_t>{4, 9});
    CHECK(bitonic_merge({5, 5}, {5, 5}) == std::vector<int64_t>{5, 5, 5, 5});
    CHECK_THROWS_AS((void)bitonic_merge({1, 2, 3}, {4, 5, 6}), Error);
    CHECK_THROWS_AS((void)bitonic_merge({2, 1}, {3, 4}), Error);
}

TEST_CASE("merge agrees with std::merge on random sorted inputs") {
    Rng rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        uint32_t k = 1 + uint32_t(rng.below(5));
        size_t na = rng.below((1u << k) - 1) + 1;
        std::vector<int64_t> a(na), b((1u << k) - na);
        for (auto& v : a) v = int64_t(rng.below(50));
        for (auto& v : b) v = int64_t(rng.below(50));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        std::vector<int64_t> want(a);
        want.insert(want.end(), b.begin(), b.end());
        std::sort(want.begin(), want.end());
        CHECK(bitonic_merge(a, b) == want);
    }
}

TEST_CASE("0-1 exhaustive sorting-network validity up to n = 16") {
    for (uint32_t n : {2u, 4u, 8u, 16u}) {
        for (uint64_t v = 0; v < (1ull << n); ++v) {
            std::vector<int64_t> arr(n);
            for (uint32_t i = 0; i < n; ++i) arr[i] = (v >> i) & 1;
            std::vector<int64_t> want = arr;
            std::sort(want.begin(), want.end());
            SortResult got = batcher_sort(arr);
            if (got.sorted != want) {
                CAPTURE(n);
                CAPTURE(v);
                REQUIRE(got.sorted == want);
            }
        }
    }
    CHECK(true);
}

TEST_CASE("sort depth is exactly k(k+1)/2 and multisets are preserved") {
    Rng rng(17);
    for (int trial = 0; trial < 2000; ++trial) {
        uint32_t k = 1 + uint32_t(rng.below(8));
        std::vector<int64_t> arr(1u << k);
        for (auto& v : arr) v = int64_t(rng.below(1000)) - 500;
        std::vector<int64_t> want = arr;
        std::sort(want.begin(), want.end());
        SortResult got = batcher_sort(arr);
        CHECK(got.sorted == want); // equal sorted output == equal multiset
        CHECK(got.depth == k * (k + 1) / 2);
    }
    CHECK(batcher_sort(std::vector<int64_t>(16, 0)).depth == 10);
    std::vector<int64_t> sorted{1, 2, 3, 4};
    CHECK(batcher_sort(sorted).sorted == sorted);
    CHECK_THROWS_AS((void)batcher_sort({1, 2, 3}), Error);
}

TEST_CASE("padded merge handles unequal lengths") {
    CHECK(bitonic_merge_padded({1, 4, 9}, {2, 3}) == std::vector<int64_t>{1, 2, 3, 4, 9});
    CHECK(bitonic_merge_padded({}, {5}) == std::vector<int64_t>{5});
    Rng rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<int64_t> a(rng.below(20)), b(rng.below(20));
        for (auto& v : a) v = int64_t(rng.below(100));
        for (auto& v : b) v = int64_t(rng.below(100));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a.empty() && b.empty()) continue;
        std::vector<int64_t> want(a);
        want.insert(want.end(), b.begin(), b.end());
        std::sort(want.begin(), want.end());
        CHECK(bitonic_merge_padded(a, b) == want);
    }
}
