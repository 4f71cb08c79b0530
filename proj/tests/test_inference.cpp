#include "gar/harness.hpp"
#include "gar/inference.hpp"
#include "gar/process.hpp"
#include "sampling.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace gar;

namespace {

std::vector<ScalarPoint> scalars(std::initializer_list<double> v) {
    std::vector<ScalarPoint> out;
    for (double x : v) out.push_back({x});
    return out;
}

template <class S, class N>
std::vector<typename S::Point> gar_series(const S& sp, const typename S::Point& mu, N noise, double phi,
                                          std::size_t T, std::uint64_t seed) {
    GarConfig<S, N> cfg{sp, mu, phi, noise, T, 100, RngStream(seed, 0)};
    return simulate(cfg).points;
}

std::vector<ScalarPoint> scalar_series(double phi, std::size_t T, std::uint64_t seed) {
    return gar_series(ScalarSpace{}, ScalarPoint{1.0}, MultiplicativeNoise{0.25}, phi, T, seed);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

TEST(FitMean, ConstantAndArithmetic) {
    const auto c = scalars({2.5, 2.5, 2.5});
    EXPECT_EQ(fit_mean(ScalarSpace{}, std::span<const ScalarPoint>(c)).value, 2.5);
    const auto x = scalars({1.0, 2.0, 6.0});
    EXPECT_DOUBLE_EQ(fit_mean(ScalarSpace{}, std::span<const ScalarPoint>(x)).value, 3.0);
}

TEST(FitMean, PermutationInvariant) {
    const SpdSpace sp(3);
    RngStream rng(1, 0);
    auto pts = gar::testing::random_points(sp, 30, rng);
    const auto m1 = fit_mean(sp, std::span<const SpdPoint>(pts));
    std::reverse(pts.begin(), pts.end());
    EXPECT_EQ(fit_mean(sp, std::span<const SpdPoint>(pts)), m1);
}

TEST(EvalL, HandValue) {
    const auto x = scalars({0.0, 2.0, 0.0});
    const ScalarPoint mu{2.0 / 3.0};
    EXPECT_DOUBLE_EQ(eval_L(ScalarSpace{}, x, mu, 1.0), 4.0);
}

TEST(EvalL, ZeroWeightIsNullRisk) {
    const auto x = scalar_series(0.3, 50, 2);
    const ScalarPoint mu = fit_mean(ScalarSpace{}, std::span<const ScalarPoint>(x));
    double null = 0.0;
    for (std::size_t t = 1; t < x.size(); ++t) null += (x[t].value - mu.value) * (x[t].value - mu.value);
    EXPECT_NEAR(eval_L(ScalarSpace{}, x, mu, 0.0), null / 49.0, 1e-14);
}

TEST(EvalL, ConstantIsZero) {
    const auto c = scalars({1.0, 1.0, 1.0, 1.0});
    for (double u : {0.0, 0.3, 1.0}) EXPECT_EQ(eval_L(ScalarSpace{}, c, ScalarPoint{1.0}, u), 0.0);
}

TEST(EvalL, MidpointConvex) {
    const WassersteinSpace sp(128);
    const auto x = gar_series(sp, truncated_normal_grid(128), TransportNoise{4}, 0.4, 80, 3);
    const auto mu = fit_mean(sp, std::span<const QuantileFunction>(x));
    RngStream rng(3, 1);
    for (int i = 0; i < 100; ++i) {
        const double a = rng.uniform(), b = rng.uniform();
        const double mid = eval_L(sp, x, mu, 0.5 * (a + b));
        EXPECT_LE(mid, 0.5 * eval_L(sp, x, mu, a) + 0.5 * eval_L(sp, x, mu, b) + 1e-10);
    }
}

TEST(FitPhi, AgreesWithClosedForm) {
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 100; ++seed) {
        RngStream rng(seed, 99);
        const double phi = rng.uniform() * 0.8;
        const auto x = scalar_series(phi, 100, seed + 1000);
        const double closed = fit_phi_closed_form(x);
        if (closed >= 1.0) continue;
        const ScalarPoint mu = fit_mean(ScalarSpace{}, std::span<const ScalarPoint>(x));
        EXPECT_NEAR(fit_phi(ScalarSpace{}, x, mu), closed, 1e-6) << seed;
        ++checked;
    }
}

TEST(FitPhi, ClipsAtZeroExactly) {
    const auto x = scalars({1, 1, 1, 1, 1, 1, 1, 1, 1, 2});
    EXPECT_EQ(fit_phi_closed_form(x), 0.0);
    const ScalarPoint mu = fit_mean(ScalarSpace{}, std::span<const ScalarPoint>(x));
    EXPECT_EQ(fit_phi(ScalarSpace{}, x, mu), 0.0);
}

TEST(FitPhi, ClosedFormHandValue) {
    EXPECT_EQ(fit_phi_closed_form(scalars({1.0, 2.0, 3.0})), 0.0);
}

TEST(FitPhi, NearZeroUnderIndependence) {
    std::vector<double> est;
    for (std::uint64_t r = 0; r < 100; ++r) {
        const auto x = scalar_series(0.0, 160, 500 + r);
        est.push_back(fit_phi(ScalarSpace{}, x, fit_mean(ScalarSpace{}, std::span<const ScalarPoint>(x))));
    }
    EXPECT_LE(median(est), 0.1);
}

TEST(FitPhi, ClosedFormConsistentAtHalf) {
    int inside = 0;
    for (std::uint64_t r = 0; r < 200; ++r) {
        const double e = fit_phi_closed_form(scalar_series(0.5, 640, 900 + r));
        inside += e >= 0.4 && e <= 0.6;
    }
    EXPECT_GE(inside, 190);
}

TEST(FitPhi, ConstantTrajectoryIsDegenerate) {
    const auto c = scalars({2.0, 2.0, 2.0});
    EXPECT_THROW(fit_phi(ScalarSpace{}, c, ScalarPoint{2.0}), DegenerateInputError);
    EXPECT_THROW(fit(ScalarSpace{}, std::span<const ScalarPoint>(c)), DegenerateInputError);
}

TEST(FitPhi, IdentifiableWithTrueMean) {
    for (double phi : {0.1, 0.3, 0.5}) {
        ScenarioSpec spec;
        spec.m = 128;
        spec.p = 5;
        for (SpaceTag tag : {SpaceTag::Scalar, SpaceTag::Wasserstein, SpaceTag::Spd}) {
            spec.space = tag;
            const double worst = with_scenario(spec, [&](const auto& sp, const auto& mu, const auto& noise) {
                double w = 0.0;
                for (std::uint64_t r = 0; r < 50; ++r) {
                    const auto x = gar_series(sp, mu, noise, phi, 640, 7000 + r);
                    w = std::max(w, std::abs(fit_phi(sp, x, mu) - phi));
                }
                return w;
            });
            EXPECT_LE(worst, 0.1) << to_string(tag) << " phi=" << phi;
        }
    }
}

TEST(StatisticD, HandValuesAndReversal) {
    EXPECT_DOUBLE_EQ(statistic_D(ScalarSpace{}, scalars({0.0, 1.0, 3.0})), 2.5);
    EXPECT_EQ(statistic_D(ScalarSpace{}, scalars({4.0, 4.0, 4.0})), 0.0);
    auto x = scalar_series(0.5, 60, 4);
    const double d = statistic_D(ScalarSpace{}, x);
    std::reverse(x.begin(), x.end());
    EXPECT_NEAR(statistic_D(ScalarSpace{}, x), d, 1e-12 * d);
}

TEST(PermutationTest, ConstantTrajectoryPValueOne) {
    const auto c = scalars({1.0, 1.0, 1.0, 1.0, 1.0});
    const auto res = permutation_test(ScalarSpace{}, std::span<const ScalarPoint>(c), 50, 0.05, TestVariant::DT,
                                      RngStream(1, 1));
    EXPECT_EQ(res.p_value, 1.0);
    EXPECT_FALSE(res.reject);
    for (double s : res.permuted) EXPECT_EQ(s, res.statistic);
}

TEST(PermutationTest, ExactModeCountsIdentity) {
    const auto x = scalar_series(0.5, 40, 5);
    const std::span<const ScalarPoint> v(x);
    const auto plain = permutation_test(ScalarSpace{}, v, 99, 0.05, TestVariant::DT, RngStream(2, 1));
    const auto exact = permutation_test(ScalarSpace{}, v, 99, 0.05, TestVariant::DT, RngStream(2, 1),
                                        PValueMode::Exact);
    EXPECT_EQ(exact.permuted, plain.permuted);
    EXPECT_DOUBLE_EQ(exact.p_value, (plain.p_value * 99.0 + 1.0) / 100.0);
}

TEST(PermutationTest, PhiHatVariantDetectsDependence) {
    const auto x = scalar_series(0.6, 160, 6);
    const auto res = permutation_test(ScalarSpace{}, std::span<const ScalarPoint>(x), 100, 0.05, TestVariant::PhiHat,
                                      RngStream(3, 1));
    EXPECT_TRUE(res.reject);
    EXPECT_EQ(res.variant, TestVariant::PhiHat);
}

TEST(PermutationTest, SizeAndPowerScalar) {
    ScenarioSpec spec;
    spec.phi_grid = {0.0, 0.1, 0.3};
    spec.T_grid = {160};
    spec.reps = 500;
    spec.B = 200;
    spec.master_seed = 11;
    const auto rows = run_grid(spec, 0);
    double rate[3] = {0, 0, 0};
    std::vector<double> null_p;
    for (const auto& r : rows) {
        const int k = r.phi == 0.0 ? 0 : (r.phi == 0.1 ? 1 : 2);
        rate[k] += r.reject ? 1.0 / 500 : 0.0;
        if (k == 0) null_p.push_back(r.p_value);
    }
    EXPECT_GE(rate[0], 0.03);
    EXPECT_LE(rate[0], 0.07);
    EXPECT_GE(rate[2], 0.90);
    EXPECT_LE(rate[0], rate[1]);
    EXPECT_LE(rate[1], rate[2]);
    // p-values approximately uniform under the null; 0.1% KS critical value
    std::sort(null_p.begin(), null_p.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < null_p.size(); ++i) {
        ks = std::max(ks, std::abs(static_cast<double>(i + 1) / null_p.size() - null_p[i]));
    }
    EXPECT_LE(ks, 1.95 / std::sqrt(static_cast<double>(null_p.size())));
}

TEST(NullMoments, ConstantIsZero) {
    const auto c = scalars({3.0, 3.0, 3.0, 3.0});
    const auto m = estimate_null_moments(ScalarSpace{}, std::span<const ScalarPoint>(c), 20, RngStream(1, 2));
    EXPECT_EQ(m.mean_hat, 0.0);
    EXPECT_EQ(m.var_hat, 0.0);
}

TEST(NullMoments, IidNormalMeanIsTwiceVariance) {
    RngStream rng(2, 2);
    std::vector<ScalarPoint> x(200);
    for (auto& p : x) p.value = rng.normal();
    const auto m = estimate_null_moments(ScalarSpace{}, std::span<const ScalarPoint>(x), 500, RngStream(2, 3));
    EXPECT_NEAR(m.mean_hat, 2.0, 0.2);
    EXPECT_GE(m.var_hat, 0.0);
}

TEST(NullMoments, DivideByB) {
    const std::vector<double> d{1.0, 3.0};
    const auto m = null_moments_from(d);
    EXPECT_DOUBLE_EQ(m.mean_hat, 2.0);
    EXPECT_DOUBLE_EQ(m.var_hat, 1.0);
}

TEST(RSquared, NearZeroUnderIndependence) {
    const auto x = scalar_series(0.0, 640, 8);
    const std::span<const ScalarPoint> v(x);
    const ScalarPoint mu = fit_mean(ScalarSpace{}, v);
    EXPECT_NEAR(r_squared(ScalarSpace{}, v, mu, 0.0), 0.0, 0.1);
}

TEST(RSquared, PerfectFitIsOne) {
    // geodesic recursion toward mu = 0 with phi = 0.5 and no noise
    std::vector<ScalarPoint> x{{8.0}, {4.0}, {2.0}, {1.0}, {0.5}};
    const std::span<const ScalarPoint> v(x);
    EXPECT_DOUBLE_EQ(r_squared(ScalarSpace{}, v, ScalarPoint{0.0}, 0.5), 1.0);
    const auto rep = residuals(ScalarSpace{}, v, ScalarPoint{0.0}, 0.5);
    for (double g : rep.gar_residuals) EXPECT_EQ(g, 0.0);
}

TEST(RSquared, DenominatorUsesFirstTMinusOne) {
    const auto x = scalars({1.0, 3.0, 10.0});
    // numerator at phi 0: (3-0)^2 + (10-0)^2 = 109; denominator 1 + 9 = 10
    EXPECT_DOUBLE_EQ(r_squared(ScalarSpace{}, std::span<const ScalarPoint>(x), ScalarPoint{0.0}, 0.0), 1.0 - 10.9);
}

TEST(Residuals, ZeroPhiSeriesCoincide) {
    const auto x = scalar_series(0.3, 30, 9);
    const std::span<const ScalarPoint> v(x);
    const auto rep = residuals(ScalarSpace{}, v, fit_mean(ScalarSpace{}, v), 0.0);
    EXPECT_EQ(rep.gar_residuals, rep.null_residuals);
}

TEST(Residuals, MeanEqualsRisk) {
    const SpdSpace sp(4);
    const auto x = gar_series(sp, SpdPoint(4), CongruenceNoise{}, 0.4, 60, 10);
    const std::span<const SpdPoint> v(x);
    const auto f = fit(sp, v);
    const auto rep = residuals(sp, v, f.mu_hat, f.phi_hat);
    double s = 0.0;
    for (double g : rep.gar_residuals) s += g;
    EXPECT_NEAR(s / static_cast<double>(rep.gar_residuals.size()), eval_L(sp, v, f.mu_hat, f.phi_hat), 1e-13);
}

TEST(Fit, ReportsConsistentFields) {
    const auto x = scalar_series(0.5, 200, 12);
    const std::span<const ScalarPoint> v(x);
    const auto f = fit(ScalarSpace{}, v);
    EXPECT_NEAR(f.frechet_variance, eval_M(ScalarSpace{}, v, f.mu_hat), 1e-15);
    EXPECT_DOUBLE_EQ(f.r_squared, r_squared(ScalarSpace{}, v, f.mu_hat, f.phi_hat));
    EXPECT_GT(f.iterations, 30u);
    ASSERT_FALSE(f.L_curve.empty());
    EXPECT_TRUE(std::is_sorted(f.L_curve.begin(), f.L_curve.end()));
    for (const auto& [u, l] : f.L_curve) EXPECT_GE(l, eval_L(ScalarSpace{}, v, f.mu_hat, f.phi_hat));
}

TEST(GoldenSection, FindsInteriorAndBoundaryMinima) {
    const auto in = golden_section_minimize([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0);
    EXPECT_NEAR(in.x, 0.3, 1e-8);
    const auto edge = golden_section_minimize([](double x) { return x; }, 0.0, 1.0);
    EXPECT_EQ(edge.x, 0.0);
    const auto top = golden_section_minimize([](double x) { return -x; }, 0.0, 1.0);
    EXPECT_EQ(top.x, 1.0);
}
