#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "stegocoder/freq_table.hpp"

using namespace stego;

TEST_CASE("cumulative prefix sums") {
    FrequencyTable t({40, 10, 50});
    CHECK(t.cumulative(0) == 0);
    CHECK(t.cumulative(1) == 40);
    CHECK(t.cumulative(2) == 50);
    CHECK(t.cumulative(3) == 100);
    CHECK(t.total() == 100);
    CHECK_THROWS_AS((void)t.cumulative(4), Error);
}

TEST_CASE("table invariants are enforced") {
    CHECK_THROWS_AS(FrequencyTable({5}), Error);        // alphabet < 2
    CHECK_THROWS_AS(FrequencyTable({5, 0, 3}), Error);  // zero count
    CHECK_THROWS_AS(FrequencyTable({65535, 2}), Error); // total > 2^16
    CHECK_NOTHROW(FrequencyTable({65534, 2}));
}

TEST_CASE("quantize worked probabilities") {
    FrequencyTable t = quantize({0.40, 0.10, 0.50}, 100);
    CHECK(t.counts() == std::vector<std::uint32_t>{40, 10, 50});
}

TEST_CASE("quantize uniform at the minimum budget") {
    FrequencyTable t = quantize({1.0 / 3, 1.0 / 3, 1.0 / 3}, 3);
    CHECK(t.counts() == std::vector<std::uint32_t>{1, 1, 1});
}

TEST_CASE("quantize floors every symbol at one count") {
    FrequencyTable t = quantize({0.999, 0.0005, 0.0005}, 100);
    CHECK(t.counts() == std::vector<std::uint32_t>{98, 1, 1});
}

TEST_CASE("quantize rejects a budget below the alphabet size") {
    CHECK_THROWS_AS((void)quantize({0.5, 0.25, 0.25}, 2), Error);
    CHECK_THROWS_AS((void)quantize_counts({1, 1, 1}, 2), Error);
}

TEST_CASE("integer quantization ties break toward the lower index") {
    FrequencyTable t = quantize_counts({1, 1, 1}, 1u << 14);
    CHECK(t.counts() == std::vector<std::uint32_t>{5462, 5461, 5461});
}

TEST_CASE("quantization properties: sums, argmax, per-symbol error") {
    std::mt19937_64 rng(4321);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t a = 2 + rng() % 9;
        std::uint32_t budget = static_cast<std::uint32_t>(a) + static_cast<std::uint32_t>(rng() % 4000);
        std::vector<std::uint64_t> counts(a);
        for (auto& c : counts) c = rng() % 1000;
        if (std::all_of(counts.begin(), counts.end(), [](std::uint64_t c) { return c == 0; }))
            counts[0] = 1;

        FrequencyTable t = quantize_counts(counts, budget);
        CHECK(t.total() == budget);

        std::uint64_t total = 0;
        for (auto c : counts) total += c;
        // never zeroes a symbol
        for (std::size_t i = 0; i < a; ++i) CHECK(t.count(static_cast<Symbol>(i)) >= 1);
        // the raw argmax keeps a maximal quantized count (ties allowed:
        // a one-unit remainder can equalize neighbours, never overtake)
        std::size_t want = static_cast<std::size_t>(
            std::max_element(counts.begin(), counts.end()) - counts.begin());
        std::uint32_t max_q = *std::max_element(t.counts().begin(), t.counts().end());
        CHECK(t.count(static_cast<Symbol>(want)) == max_q);
        // |count/F - p| <= a/F per symbol
        for (std::size_t i = 0; i < a; ++i) {
            double p = static_cast<double>(counts[i]) / static_cast<double>(total);
            double q = static_cast<double>(t.count(static_cast<Symbol>(i))) / budget;
            CHECK(std::abs(q - p) <= static_cast<double>(a) / budget + 1e-12);
        }
    }
}
