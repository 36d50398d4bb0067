#include <gtest/gtest.h>

#include "greenmo/rng.hpp"

using namespace greenmo;

TEST(Rng, SameKeySameSequence) {
    Rng a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, StreamsAndSeedsDiffer) {
    Rng a(42, 7), b(42, 8), c(43, 7);
    int same_b = 0, same_c = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        same_b += x == b.next_u64();
        same_c += x == c.next_u64();
    }
    EXPECT_EQ(same_b, 0);
    EXPECT_EQ(same_c, 0);
}

TEST(Rng, UniformInUnitInterval) {
    Rng r(1, 0);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / 100000.0, 0.5, 0.005);
}

TEST(Rng, BelowIsInRangeAndCoversIt) {
    Rng r(2, 0);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 70000; ++i) {
        const auto v = r.below(7);
        ASSERT_LT(v, 7u);
        ++hist[v];
    }
    for (int h : hist) EXPECT_NEAR(h, 10000, 500);
}

TEST(Rng, NormalMoments) {
    Rng r(3, 0);
    double s = 0.0, s2 = 0.0;
    constexpr int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double x = r.normal();
        s += x;
        s2 += x * x;
    }
    EXPECT_NEAR(s / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.01);
}

TEST(Rng, ComplexNormalVarianceAndCircularity) {
    Rng r(4, 0);
    double p = 0.0;
    cplx pseudo{};
    constexpr int n = 200000;
    for (int i = 0; i < n; ++i) {
        const cplx z = r.complex_normal(2.0);
        p += std::norm(z);
        pseudo += z * z;
    }
    EXPECT_NEAR(p / n, 2.0, 0.03);
    EXPECT_LT(std::abs(pseudo / static_cast<double>(n)), 0.03);
}

TEST(Rng, SplitStreamsUncorrelated) {
    const Rng root(5, 0);
    Rng a = root.split(1), b = root.split(2);
    double sab = 0.0;
    constexpr int n = 100000;
    for (int i = 0; i < n; ++i) sab += a.normal() * b.normal();
    EXPECT_LT(std::abs(sab / n), 0.01);
}

TEST(Rng, SplitDependsOnIdentityNotPosition) {
    Rng a(6, 0), b(6, 0);
    b.next_u64();
    b.next_u64();
    Rng ca = a.split(9), cb = b.split(9);
    EXPECT_EQ(ca.next_u64(), cb.next_u64());
}
