#include "gar/process.hpp"
#include "sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gar;

TEST(IterateOnce, ScalarHandValue) {
    RngStream rng(1, 0);
    const auto y = iterate_once(ScalarSpace{}, IdentityNoise{}, ScalarPoint{0.0}, 0.5, ScalarPoint{2.0}, rng);
    EXPECT_DOUBLE_EQ(y.value, 1.0);
}

TEST(IterateOnce, UnitPhiDegenerateNoiseKeepsState) {
    RngStream rng(1, 0);
    const SpdSpace sp(3);
    RngStream src(2, 0);
    const auto x = gar::testing::random_point(sp, src);
    EXPECT_EQ(iterate_once(sp, IdentityNoise{}, SpdPoint(3), 1.0, x, rng), x);
}

TEST(IterateOnce, ZeroPhiIgnoresState) {
    RngStream a(3, 0), b(3, 0);
    const MultiplicativeNoise noise{0.25};
    const auto y1 = iterate_once(ScalarSpace{}, noise, ScalarPoint{1.0}, 0.0, ScalarPoint{5.0}, a);
    const auto y2 = iterate_once(ScalarSpace{}, noise, ScalarPoint{1.0}, 0.0, ScalarPoint{-7.0}, b);
    EXPECT_EQ(y1, y2);
}

TEST(IterateOnce, RejectsPhiOutsideUnit) {
    RngStream rng(1, 0);
    EXPECT_THROW(iterate_once(ScalarSpace{}, IdentityNoise{}, ScalarPoint{0}, 1.2, ScalarPoint{1}, rng),
                 ArgumentError);
}

TEST(Simulate, Deterministic) {
    const WassersteinSpace sp(64);
    GarConfig<WassersteinSpace, TransportNoise> cfg{sp, truncated_normal_grid(64), 0.4, {}, 50, 100, RngStream(9, 0)};
    const auto a = simulate(cfg), b = simulate(cfg);
    ASSERT_EQ(a.points.size(), 50u);
    EXPECT_EQ(a.points, b.points);
    EXPECT_EQ(a.seed, 9u);
}

TEST(Simulate, DegenerateNoiseCollapsesToMean) {
    GarConfig<ScalarSpace, IdentityNoise> cfg{{}, ScalarPoint{3.0}, 0.7, {}, 20, 100, RngStream(1, 0)};
    for (const auto& p : simulate(cfg).points) EXPECT_EQ(p.value, 3.0);
    cfg.burn_in = 500;
    for (const auto& p : simulate(cfg).points) EXPECT_EQ(p.value, 3.0);
}

TEST(Simulate, IidMeanErrorShrinks) {
    double err_small = 0.0, err_large = 0.0;
    for (std::uint64_t r = 0; r < 100; ++r) {
        GarConfig<ScalarSpace, MultiplicativeNoise> cfg{{}, ScalarPoint{1.0}, 0.0, {0.25}, 40, 100, RngStream(r, 0)};
        auto mean = [](const auto& t) {
            double s = 0.0;
            for (const auto& p : t.points) s += p.value;
            return s / static_cast<double>(t.points.size());
        };
        err_small += std::abs(mean(simulate(cfg)) - 1.0);
        cfg.T = 640;
        err_large += std::abs(mean(simulate(cfg)) - 1.0);
    }
    EXPECT_LT(err_large, 0.5 * err_small);
}

TEST(Simulate, StationaryHalvesAgree) {
    const std::size_t T = 20000;
    GarConfig<ScalarSpace, MultiplicativeNoise> cfg{{}, ScalarPoint{1.0}, 0.3, {0.25}, T, 100, RngStream(17, 0)};
    const auto traj = simulate(cfg);
    double s1 = 0, s2 = 0, q1 = 0, q2 = 0;
    const std::size_t h = T / 2;
    for (std::size_t t = 0; t < T; ++t) {
        const double d = std::abs(traj.points[t].value - 1.0);
        (t < h ? s1 : s2) += d;
        (t < h ? q1 : q2) += d * d;
    }
    const double m1 = s1 / h, m2 = s2 / h;
    const double se = std::sqrt((q1 / h - m1 * m1 + q2 / h - m2 * m2) / h);
    // lag correlation inflates the se; 3 plain se is still generous at phi = 0.3
    EXPECT_LE(std::abs(m1 - m2), 3.0 * se * std::sqrt((1 + 0.09) / (1 - 0.09)));
}

TEST(Simulate, RejectsBadConfig) {
    GarConfig<ScalarSpace, IdentityNoise> cfg{{}, ScalarPoint{0.0}, 1.5, {}, 20, 0, RngStream(1, 0)};
    EXPECT_THROW(simulate(cfg), ArgumentError);
    cfg.phi = 0.5;
    cfg.T = 1;
    EXPECT_THROW(simulate(cfg), ArgumentError);
}

TEST(Contraction, ZeroPhiCollapsesImmediately) {
    const auto est = contraction_diagnostic(ScalarSpace{}, MultiplicativeNoise{0.25}, ScalarPoint{1.0}, 0.0,
                                            ScalarPoint{2.0}, ScalarPoint{1.0}, 5, 100, 2.0, RngStream(1, 0));
    for (double e : est) EXPECT_EQ(e, 0.0);
    EXPECT_EQ(fit_geometric_rate(est), 0.0);
}

TEST(Contraction, ScalarMatchesTheory) {
    for (double phi : {0.3, 0.5}) {
        const auto est = contraction_diagnostic(ScalarSpace{}, MultiplicativeNoise{0.25}, ScalarPoint{1.0}, phi,
                                                ScalarPoint{2.0}, ScalarPoint{1.0}, 5, 10000, 2.0, RngStream(2, 0));
        const double r = phi * phi * (1.0 + 0.0625);
        for (std::size_t t = 0; t < est.size(); ++t) {
            EXPECT_NEAR(est[t], std::pow(r, static_cast<double>(t + 1)), 0.2 * std::pow(r, static_cast<double>(t + 1)));
        }
        EXPECT_NEAR(fit_geometric_rate(est), r, 0.2 * r);
    }
}

TEST(Contraction, DegenerateNoiseExactPhiRate) {
    const SpdSpace sp(3);
    RngStream src(3, 0);
    const auto x = gar::testing::random_point(sp, src), x0 = gar::testing::random_point(sp, src);
    const auto est =
        contraction_diagnostic(sp, IdentityNoise{}, SpdPoint(3), 0.4, x, x0, 6, 1, 1.0, RngStream(4, 0));
    const double d0 = sp.distance(x, x0);
    for (std::size_t t = 0; t < est.size(); ++t) {
        EXPECT_NEAR(est[t], std::pow(0.4, static_cast<double>(t + 1)) * d0, 1e-9);
    }
}

TEST(Contraction, DecaysInAllSpaces) {
    auto decreasing = [](const std::vector<double>& v) {
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (!(v[i] < v[i - 1])) return false;
        }
        return true;
    };
    EXPECT_TRUE(decreasing(contraction_diagnostic(ScalarSpace{}, MultiplicativeNoise{0.25}, ScalarPoint{1.0}, 0.3,
                                                  ScalarPoint{2.0}, ScalarPoint{1.0}, 6, 2000, 2.0, RngStream(5, 0))));
    QuantileFunction uniform{0.0, 1.0, midpoint_grid(128)};
    const auto tn = truncated_normal_grid(128);
    EXPECT_TRUE(decreasing(contraction_diagnostic(WassersteinSpace(128), TransportNoise{4}, tn, 0.3, tn, uniform, 6,
                                                  500, 2.0, RngStream(6, 0))));
    SpdPoint two(4);
    for (double& v : two.log_diag()) v = std::log(2.0);
    EXPECT_TRUE(decreasing(contraction_diagnostic(SpdSpace(4), CongruenceNoise{}, SpdPoint(4), 0.3, SpdPoint(4), two,
                                                  6, 500, 2.0, RngStream(7, 0))));
}

TEST(Contraction, CoupledStepBound) {
    // one coupled step: d(X1(x), X1(x0)) <= Lip(eps) phi d(x, x0); Lip of (1+eta)x is |1+eta|
    RngStream rng(8, 0);
    for (int i = 0; i < 1000; ++i) {
        RngStream a = rng.child(i), b = a, c = a;
        const double x = rng.normal(), x0 = rng.normal();
        const auto ya = iterate_once(ScalarSpace{}, MultiplicativeNoise{0.25}, ScalarPoint{1.0}, 0.6, ScalarPoint{x}, a);
        const auto yb = iterate_once(ScalarSpace{}, MultiplicativeNoise{0.25}, ScalarPoint{1.0}, 0.6, ScalarPoint{x0}, b);
        const double lip = std::abs(1.0 + 0.25 * c.normal());
        ASSERT_LE(std::abs(ya.value - yb.value), lip * 0.6 * std::abs(x - x0) * (1 + 1e-12) + 1e-15);
    }
}

TEST(GeometricRate, RecoversExactRate) {
    std::vector<double> v;
    for (int t = 1; t <= 8; ++t) v.push_back(3.0 * std::pow(0.7, t));
    EXPECT_NEAR(fit_geometric_rate(v), 0.7, 1e-12);
}
