#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sle2g/density.hpp"
#include "sle2g/green.hpp"
#include "sle2g/montecarlo.hpp"
#include "sle2g/timecurve.hpp"
#include "sle2g/trig.hpp"

using namespace sle2g;

TEST(SpeedFraction, Values) {
    EXPECT_DOUBLE_EQ(speed_fraction({kPi / 2, kPi / 2}, 1), 0.5);
    EXPECT_DOUBLE_EQ(speed_fraction({kPi / 2, kPi / 2}, 2), 0.5);
    EXPECT_NEAR(speed_fraction({kPi / 2, kPi / 6}, 1), 2.0 / 3.0, 1e-15);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(1e-3, kPi - 1e-3);
    for (int i = 0; i < 1000; ++i) {
        const ZState z{U(rng), U(rng)};
        EXPECT_NEAR(speed_fraction(z, 1) + speed_fraction(z, 2), 1.0, 1e-15);
    }
    EXPECT_THROW(speed_fraction({0.0, 1.0}, 1), std::domain_error);
}

TEST(ZStep, CoefficientsAtSymmetricPoint) {
    const auto ctx = KappaContext::make(6);
    const ZState z{kPi / 2, kPi / 2};
    const auto s = z_step(ctx, z, 1e-3, 0.0, 0.0);
    ASSERT_TRUE(s);
    EXPECT_NEAR(s->z1, kPi / 2, 1e-15);
    EXPECT_NEAR(s->z2, kPi / 2, 1e-15);
    const auto u = z_step(ctx, z, 1e-3, 1.0, -1.0);
    EXPECT_NEAR((u->z1 - kPi / 2) / std::sqrt(1e-3), std::sqrt(3.0), 1e-12);
    EXPECT_NEAR((u->z2 - kPi / 2) / std::sqrt(1e-3), -std::sqrt(3.0), 1e-12);
    EXPECT_FALSE(z_step(ctx, {0.01, 1.0}, 1e-3, -10.0, 0.0));
    EXPECT_THROW(z_step(ctx, z, 0.0, 0.0, 0.0), std::domain_error);
}

TEST(ZStep, OneStepMoments) {
    const auto ctx = KappaContext::make(6);
    const ZState z{1.0, 2.0};
    const double dt = 1e-3;
    const double S = std::sin(1.0) + std::sin(2.0);
    const double mu1 = 4 * std::cos(1.0) / S * dt, var1 = 6 * std::sin(1.0) / S * dt;
    const double mu2 = 4 * std::cos(2.0) / S * dt, var2 = 6 * std::sin(2.0) / S * dt;
    std::mt19937_64 rng(2);
    std::normal_distribution<double> N;
    const int n = 1000000;
    double m1 = 0, m2 = 0, q1 = 0, q2 = 0;
    for (int i = 0; i < n; ++i) {
        const auto s = z_step(ctx, z, dt, N(rng), N(rng));
        const double a = s->z1 - z.z1, b = s->z2 - z.z2;
        m1 += a;
        m2 += b;
        q1 += a * a;
        q2 += b * b;
    }
    m1 /= n;
    m2 /= n;
    EXPECT_NEAR(m1, mu1, 5 * std::sqrt(var1 / n));
    EXPECT_NEAR(m2, mu2, 5 * std::sqrt(var2 / n));
    EXPECT_NEAR(q1 / n - m1 * m1, var1, 5 * var1 * std::sqrt(2.0 / n));
    EXPECT_NEAR(q2 / n - m2 * m2, var2, 5 * var2 * std::sqrt(2.0 / n));
}

TEST(ZStep, XYCovariance) {
    const auto ctx = KappaContext::make(6);
    const ZState z{0.8, 2.0};
    const auto [X, Y] = xy_of_z(z);
    const double dt = 1e-4;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> N;
    const int n = 1000000;
    double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        const auto s = z_step(ctx, z, dt, N(rng), N(rng));
        const auto [x, y] = xy_of_z(*s);
        const double a = x - X, b = y - Y;
        sx += a;
        sy += b;
        sxy += a * b;
        sxx += a * a;
        syy += b * b;
    }
    const double cov = sxy / n - (sx / n) * (sy / n);
    const double se = std::sqrt(sxx / n * syy / n / n);
    EXPECT_NEAR(cov, -ctx.kappa / 4 * X * Y * dt, 5 * se + 10 * dt * dt);
}

TEST(XY, TransformIdentities) {
    const auto [x0, y0] = xy_of_z({kPi / 2, kPi / 2});
    EXPECT_NEAR(x0, 0.0, 1e-16);
    EXPECT_NEAR(y0, 0.0, 1e-16);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(1e-3, kPi - 1e-3);
    for (int i = 0; i < 1000; ++i) {
        const ZState z{U(rng), U(rng)};
        const auto [x, y] = xy_of_z(z);
        EXPECT_NEAR(x * x + y * y, 1 - std::sin(z.z1) * std::sin(z.z2), 1e-14);
        const ZState w = z_of_xy(x, y);
        EXPECT_NEAR(w.z1, z.z1, 1e-12);
        EXPECT_NEAR(w.z2, z.z2, 1e-12);
    }
    EXPECT_THROW(z_of_xy(0.8, 0.6), std::domain_error);
}

TEST(ImportanceWeight, Trivial) {
    const auto ctx = KappaContext::make(6);
    const ZState a{1.0, 2.0}, b{0.4, 0.9};
    EXPECT_NEAR(importance_log_weight(ctx, 3.0, a, a), -ctx.alpha0 * 3.0, 1e-14);
    EXPECT_EQ(importance_log_weight(ctx, 0.0, a, a), 0.0);
    EXPECT_NEAR(importance_log_weight(ctx, 1.0, a, b), -ctx.alpha0 + std::log(G_u(ctx, a) / G_u(ctx, b)), 1e-13);
    EXPECT_THROW(importance_log_weight(ctx, -1.0, a, b), std::domain_error);
}

TEST(ZGenerator, InverseGreenIsEigenfunction) {
    for (double k : {2.0, 4.0, 6.0, 7.5}) {
        const auto ctx = KappaContext::make(k);
        for (ZState z : {ZState{1.0, 2.0}, ZState{0.2, 0.3}, ZState{2.9, 1.1}}) {
            const double g = z_generator_apply(
                ctx, [&](const HyperDual& u, const HyperDual& v) { return exp(-log_G_u(ctx, u, v)); }, z.z1, z.z2);
            EXPECT_NEAR(g * G_u(ctx, z), ctx.alpha0, 1e-9);
        }
    }
}

TEST(Seeds, Derivation) {
    EXPECT_NE(path_seed(1, 0), path_seed(1, 1));
    EXPECT_NE(path_seed(1, 0), path_seed(2, 0));
    EXPECT_EQ(path_seed(5, 7), path_seed(5, 7));
    EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(ZEnsemble, DeterministicAndThreadIndependent) {
    const auto ctx = KappaContext::make(6);
    ZSimOptions o;
    o.record_times = {0.5, 1.0};
    const auto a = simulate_z_ensemble(ctx, {1.0, 2.0}, 1.0, 1e-3, 40, 99, o);
    const auto b = simulate_z_ensemble(ctx, {1.0, 2.0}, 1.0, 1e-3, 40, 99, o);
    o.threads = 3;
    const auto c = simulate_z_ensemble(ctx, {1.0, 2.0}, 1.0, 1e-3, 40, 99, o);
    std::stringstream sa, sb, sc;
    a.write_csv(sa);
    b.write_csv(sb);
    c.write_csv(sc);
    EXPECT_EQ(sa.str(), sb.str());
    EXPECT_EQ(sa.str(), sc.str());
    EXPECT_EQ(sa.str().substr(0, sa.str().find('\n')), "path_id,t,z1,z2,log_weight,absorbed");
    o.threads = 1;
    o.first_index = 20;
    const auto tail = simulate_z_ensemble(ctx, {1.0, 2.0}, 1.0, 1e-3, 20, 99, o);
    for (std::size_t p = 0; p < 20; ++p)
        for (std::size_t i = 0; i < 2; ++i) {
            EXPECT_EQ(tail.at(p, i).path_id, a.at(p + 20, i).path_id);
            EXPECT_EQ(tail.at(p, i).z1, a.at(p + 20, i).z1);
            EXPECT_EQ(tail.at(p, i).log_weight, a.at(p + 20, i).log_weight);
        }
}

TEST(ZEnsemble, PlainEulerAbsorptionDecreasesWithStep) {
    const auto ctx = KappaContext::make(6);
    const ZState z0{kPi / 2, kPi / 2};
    const int n = 4000;
    auto absorbed = [&](double dt) {
        int count = 0;
        for (int p = 0; p < n; ++p) {
            std::mt19937_64 rng(path_seed(17, p));
            std::normal_distribution<double> N;
            ZState z = z0;
            for (long s = 0; s < std::lround(2.0 / dt); ++s) {
                const auto nz = z_step(ctx, z, dt, N(rng), N(rng));
                if (!nz) {
                    ++count;
                    break;
                }
                z = *nz;
            }
        }
        return count;
    };
    const int a = absorbed(0.02), b = absorbed(0.01), c = absorbed(0.005);
    EXPECT_GT(a - b, 3 * std::sqrt(double(a)));
    EXPECT_GT(b - c, 3 * std::sqrt(double(b)));
    int adaptive = 0;
    for (int p = 0; p < n; ++p) {
        std::mt19937_64 rng(path_seed(17, p));
        std::normal_distribution<double> N;
        ZState z = z0;
        if (!z_advance(ctx, z, 2.0, rng, N)) ++adaptive;
    }
    EXPECT_LT(adaptive, c / 10);
}

TEST(ZEnsemble, WeightedSurvivalMatchesSpectral) {
    const auto ctx = KappaContext::make(6);
    const SpectralBasis basis(ctx, 40);
    const ZState z0{kPi / 2, kPi / 2};
    const auto recs = estimate_survival_weighted(ctx, z0, {0.0, 1.0, 5.0}, 10000, 1e-3, 2024);
    ASSERT_EQ(recs.size(), 3u);
    EXPECT_EQ(recs[0].estimate, 1.0);
    for (std::size_t i = 1; i < recs.size(); ++i) {
        const double s = survival_P2(basis, z0, recs[i].r_or_t).value;
        EXPECT_NEAR(recs[i].estimate, s, 3 * recs[i].std_error) << "t " << recs[i].r_or_t;
        EXPECT_GT(recs[i].ess, 100);
        EXPECT_TRUE(recs[i].has_flag("accepted"));
    }
}

TEST(ZEnsemble, InvariantLawIsPreserved) {
    const auto ctx = KappaContext::make(6);
    const int K = 5;
    const QuadRule rule = tanh_sinh_rule(0.0, kPi / K, 6);
    std::vector<double> prob(K * K, 0.0);
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b)
            for (std::size_t i = 0; i < rule.size(); ++i)
                for (std::size_t j = 0; j < rule.size(); ++j)
                    prob[a * K + b] += rule.weights[i] * rule.weights[j] *
                                       pZ_infty(ctx, {a * kPi / K + rule.nodes[i], b * kPi / K + rule.nodes[j]});
    ZSimOptions o;
    o.record_times = {0.0, 1.0, 2.0};
    o.initial = [&](std::mt19937_64& rng) { return sample_pZ_infty(ctx, rng); };
    const int n = 20000;
    const auto ens = simulate_z_ensemble(ctx, {kPi / 2, kPi / 2}, 2.0, 1e-3, n, 31, o);
    for (std::size_t ti = 0; ti < 3; ++ti) {
        std::vector<double> count(K * K, 0.0);
        int live = 0;
        for (int p = 0; p < n; ++p) {
            const auto& r = ens.at(p, ti);
            if (r.absorbed) continue;
            ++live;
            const int a = std::min(K - 1, int(r.z1 / kPi * K)), b = std::min(K - 1, int(r.z2 / kPi * K));
            count[a * K + b] += 1;
        }
        double chi2 = 0;
        for (int k = 0; k < K * K; ++k) chi2 += std::pow(count[k] - live * prob[k], 2) / (live * prob[k]);
        EXPECT_LT(chi2, 42.98) << "t index " << ti;  // 1% critical value, 24 degrees of freedom
    }
}
