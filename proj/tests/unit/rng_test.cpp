#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "dynbench/rng.hpp"

using dynbench::Rng;

TEST(Rng, SameSeedSameStream) {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.next(), b.next());
    }
}

TEST(Rng, UniformStaysInUnitInterval) {
    Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Rng, BelowCoversRange) {
    Rng rng(2);
    std::set<std::size_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const auto v = rng.below(7);
        ASSERT_LT(v, 7u);
        seen.insert(v);
    }
    EXPECT_EQ(seen.size(), 7u);
}

TEST(Rng, SimplexIsPositiveAndNormalized) {
    Rng rng(3);
    for (std::size_t n = 1; n < 20; ++n) {
        const auto w = rng.simplex(n);
        ASSERT_EQ(w.size(), n);
        EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
        for (double x : w) {
            EXPECT_GT(x, 0.0);
        }
    }
}

TEST(Rng, ShuffleIsAPermutation) {
    Rng rng(4);
    std::vector<int> v(50);
    std::iota(v.begin(), v.end(), 0);
    rng.shuffle(v);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 50; ++i) {
        EXPECT_EQ(sorted[i], i);
    }
}

TEST(Rng, DerivedSeedsDifferPerStream) {
    EXPECT_EQ(dynbench::derive_seed(7, 1), dynbench::derive_seed(7, 1));
    EXPECT_NE(dynbench::derive_seed(7, 1), dynbench::derive_seed(7, 2));
    EXPECT_NE(dynbench::derive_seed(7, 1), dynbench::derive_seed(8, 1));
}
