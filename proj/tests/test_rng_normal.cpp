#include "gar/error.hpp"
#include "gar/normal.hpp"
#include "gar/rng.hpp"

#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace gar;

TEST(RngStream, SameKeySameDraws) {
    RngStream a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStream, DifferentStreamsDiffer) {
    RngStream a(42, 0), b(42, 1);
    int equal = 0;
    for (int i = 0; i < 100; ++i) equal += a.next_u64() == b.next_u64();
    EXPECT_EQ(equal, 0);
}

TEST(RngStream, ChildIsPureFunctionOfParentKey) {
    RngStream parent(5, 3);
    parent.next_u64();  // consuming draws does not move children
    RngStream c1 = parent.child(9), c2 = RngStream(5, 3).child(9);
    EXPECT_EQ(c1.next_u64(), c2.next_u64());
    EXPECT_NE(RngStream(5, 3).child(9).next_u64(), RngStream(5, 3).child(10).next_u64());
}

TEST(RngStream, UniformOpenInterval) {
    RngStream rng(1, 1);
    double mean = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        mean += u;
    }
    EXPECT_NEAR(mean / 100000, 0.5, 0.005);
}

TEST(RngStream, BelowIsInRangeAndBalanced) {
    RngStream rng(2, 0);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) {
        const auto v = rng.below(7);
        ASSERT_LT(v, 7u);
        ++counts[v];
    }
    for (int c : counts) EXPECT_NEAR(c, 10000, 400);
}

TEST(RngStream, PermutationIsAPermutation) {
    RngStream rng(3, 0);
    std::vector<std::size_t> order(50);
    rng.permutation(order);
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) EXPECT_EQ(sorted[i], i);
}

TEST(RngStream, PermutationPositionsUniform) {
    RngStream rng(4, 0);
    std::vector<std::size_t> order(4);
    std::vector<int> first(4, 0);
    for (int i = 0; i < 40000; ++i) {
        rng.permutation(order);
        ++first[order[0]];
    }
    for (int c : first) EXPECT_NEAR(c, 10000, 350);
}

TEST(RngStream, NormalMoments) {
    RngStream rng(6, 0);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s += z;
        s2 += z * z;
    }
    EXPECT_NEAR(s / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.01);
}

TEST(NormalQuantile, MatchesBoostOracle) {
    const boost::math::normal_distribution<double> nd;
    for (double p : {1e-300, 1e-100, 1e-20, 1e-10, 1e-5, 0.001, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.9, 0.97575, 0.999,
                     1.0 - 1e-10, 1.0 - 1e-15}) {
        const double expect = boost::math::quantile(nd, p);
        EXPECT_NEAR(normal_quantile(p), expect, 1e-9 * std::max(1.0, std::abs(expect))) << p;
    }
    for (int i = 1; i < 1000; ++i) {
        const double p = i / 1000.0;
        ASSERT_NEAR(normal_quantile(p), boost::math::quantile(nd, p), 1e-12) << p;
    }
}

TEST(NormalQuantile, InvertsCdf) {
    // upper tail of the cdf rounds towards 1, so invert on the lower half only
    for (double x = -8.0; x <= 0.0; x += 0.25) EXPECT_NEAR(normal_quantile(normal_cdf(x)), x, 1e-9);
    for (double p : {0.01, 0.125, 0.25}) EXPECT_NEAR(normal_quantile(1.0 - p), -normal_quantile(p), 1e-9);
}

TEST(NormalQuantile, RejectsOutsideOpenInterval) {
    EXPECT_THROW(normal_quantile(0.0), ArgumentError);
    EXPECT_THROW(normal_quantile(1.0), ArgumentError);
    EXPECT_THROW(normal_quantile(std::nan("")), ArgumentError);
}

TEST(TruncatedNormalQuantile, InsideUnitInterval) {
    for (int i = 1; i < 10000; ++i) {
        const double q = truncated_normal_quantile(i / 10000.0);
        ASSERT_GT(q, 0.0);
        ASSERT_LT(q, 1.0);
    }
}

TEST(TruncatedNormalQuantile, Limits) {
    EXPECT_LT(truncated_normal_quantile(1e-9), 1e-6);
    EXPECT_GT(truncated_normal_quantile(1.0 - 1e-9), 1.0 - 1e-6);
}

TEST(TruncatedNormalQuantile, HalfPoint) {
    const double u = (normal_cdf(0.5) - normal_cdf(0.0)) / (normal_cdf(1.0) - normal_cdf(0.0));
    EXPECT_NEAR(truncated_normal_quantile(u), 0.5, 1e-12);
}

TEST(TruncatedNormalQuantile, RejectsEndpoints) {
    EXPECT_THROW(truncated_normal_quantile(0.0), ArgumentError);
    EXPECT_THROW(truncated_normal_quantile(1.0), ArgumentError);
}
