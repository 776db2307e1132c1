#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sle2g/ensemble.hpp"
#include "sle2g/green.hpp"

using namespace sle2g;

namespace {

const double kKappas[] = {2.0, 3.0, 4.0, 6.0, 7.5};

EnsembleState symmetric_state() {
    EnsembleState s;
    s.W1 = kPi;
    s.V1 = kPi / 2;
    s.W2 = 0;
    s.V2 = -kPi / 2;
    return s;
}

}  // namespace

TEST(Ensemble, InitialStateAndValidation) {
    const auto s = EnsembleState::initial(BoundaryConfig::symmetric());
    EXPECT_EQ(s.W11, 1.0);
    EXPECT_EQ(s.W21, 1.0);
    EXPECT_EQ(s.W12, 0.0);
    EXPECT_EQ(s.W23, 0.0);
    EXPECT_EQ(s.mA, 0.0);
    EXPECT_THROW(EnsembleState::initial({0.0, 1.0, -1.0, -2.0}), std::domain_error);
    EnsembleState bad = s;
    bad.W11 = 1.5;
    EXPECT_THROW(bad.validate(), std::domain_error);
    bad = s;
    bad.t1 = 1.0;
    bad.mA = 2.0;
    EXPECT_THROW(bad.validate(), std::domain_error);
}

TEST(Ensemble, SymmetricRates) {
    const auto s = symmetric_state();
    const auto r = ode_rhs(s, 1);
    EXPECT_NEAR(r.dmA, 1.0, 1e-15);
    EXPECT_NEAR(r.dW[1], 0.0, 1e-15);
    EXPECT_NEAR(cross_ratio_R(s), 0.5, 1e-15);
    EXPECT_THROW(ode_rhs(s, 3), std::domain_error);
}

TEST(Ensemble, RatesAgainstDisplayedFormulas) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        const auto s = random_state(rng);
        for (int j = 1; j <= 2; ++j) {
            const int k = 3 - j;
            const auto r = ode_rhs(s, j);
            const double a2 = s.Wd1(j) * s.Wd1(j);
            EXPECT_NEAR(r.dmA, a2, 1e-14);
            EXPECT_NEAR(r.dW[k - 1], a2 * cot2(s.W(k) - s.W(j)), 1e-12);
            EXPECT_NEAR(r.dV[0], a2 * cot2(s.V1 - s.W(j)), 1e-12);
            EXPECT_NEAR(r.dV[1], a2 * cot2(s.V2 - s.W(j)), 1e-12);
            EXPECT_NEAR(r.dlogW1[k - 1], a2 * cot2_d1(s.W(k) - s.W(j)), 1e-12);
            EXPECT_LT(r.dlogW1[k - 1], 0.0);
            EXPECT_NEAR(r.dW[j - 1], -3.0 * s.Wd2(j), 1e-14);
            const double a = s.Wd1(j);
            EXPECT_NEAR(r.dlogW1[j - 1],
                        0.5 * std::pow(s.Wd2(j) / a, 2) - 4.0 / 3.0 * s.Wd3(j) / a - (a * a - 1.0) / 6.0, 1e-12);
            EXPECT_NEAR(r.dWS_other, a2 * s.Wd1(k) * s.Wd1(k) * cot2_d3(s.W(k) - s.W(j)), 1e-10);
        }
    }
}

TEST(Ensemble, CrossRatioIdentities) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const auto s = random_state(rng);
        const double R = cross_ratio_R(s);
        EXPECT_GT(R, 0.0);
        EXPECT_LT(R, 1.0);
        for (int j = 1; j <= 2; ++j) {
            const int k = 3 - j;
            const double one_minus = sin2(s.W(j) - s.V(j)) * sin2(s.W(k) - s.V(k)) /
                                     (sin2(s.W(j) - s.W(k)) * sin2(s.V(j) - s.V(k)));
            EXPECT_NEAR(1.0 - R, one_minus, 1e-12);
            EXPECT_NEAR(R * phi(s, j) / (1.0 - R), cot2(s.W(j) - s.W(k)) - cot2(s.W(j) - s.V(j)),
                        1e-12 * std::max(1.0, std::abs(phi(s, j)) / (1 - R)));
        }
    }
}

TEST(Ensemble, LogMAtInitialState) {
    for (double k : kKappas) {
        const auto ctx = KappaContext::make(k);
        const auto s = EnsembleState::initial({2.0, 0.5, -1.2, -2.6});
        const double sines = sin2(s.W1 - s.V1) * sin2(s.W2 - s.V2) * sin2(s.W1 - s.W2) * sin2(s.W1 - s.V2) *
                             sin2(s.V1 - s.W2) * sin2(s.V1 - s.V2);
        EXPECT_NEAR(log_M_iB_c4(ctx, s), (2.0 / k) * std::log(sines), 1e-13);
        const double R = cross_ratio_R(s);
        const double oracle = (2.0 / k) * std::log(R) + std::log(hyp_F(ctx, R)) -
                              (6.0 - k) / k * (std::log(sin2(s.W1 - s.V1)) + std::log(sin2(s.W2 - s.V2)));
        EXPECT_NEAR(log_M_iB_ch(ctx, s), oracle, 1e-13);
    }
    const auto ctx = KappaContext::make(6);
    const auto sym = EnsembleState::initial(BoundaryConfig::symmetric());
    EXPECT_NEAR(log_M_iB_ch(ctx, sym), std::log(std::pow(0.5, 1.0 / 3.0) * hyp_F(ctx, 0.5)), 1e-14);
}

TEST(Ensemble, LogMLinearInCapacity) {
    const auto ctx = KappaContext::make(6);
    std::mt19937_64 rng(4);
    const auto s = random_state(rng);
    auto t = s;
    const double d = 0.05;
    t.mA = std::min(s.mA + d, s.t1 + s.t2);
    const double delta = t.mA - s.mA;
    EXPECT_NEAR(log_M_iB_c4(ctx, t) - log_M_iB_c4(ctx, s), (60.0 / (8.0 * 6.0) + ctx.b / 6.0) * delta, 1e-13);
}

TEST(Ensemble, ChangeOfMeasureToGreenFunction) {
    std::mt19937_64 rng(5);
    for (double k : kKappas) {
        const auto ctx = KappaContext::make(k);
        for (int i = 0; i < 200; ++i) {
            const auto s = random_state(rng);
            const double lhs = log_M_iB_ch(ctx, s) - log_M_iB_c4(ctx, s);
            EXPECT_NEAR(lhs, log_M_c4_ch(ctx, s), 1e-12);
            const double rhs = -ctx.alpha0 * s.mA - std::log(G_quad(ctx, {s.W1, s.V1, s.W2, s.V2}));
            EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST(Ensemble, DriftResidualVanishes) {
    std::mt19937_64 rng(6);
    for (double k : kKappas) {
        const auto ctx = KappaContext::make(k);
        for (int i = 0; i < 200; ++i) {
            const auto s = random_state(rng);
            for (int j = 1; j <= 2; ++j)
                for (auto mode : {MartingaleMode::c4, MartingaleMode::ch}) {
                    EXPECT_LT(std::abs(drift_residual(ctx, s, j, mode)), 1e-9);
                    EXPECT_LT(diffusion_residual(ctx, s, j, mode), 1e-10);
                }
        }
    }
}

TEST(Ensemble, FiniteDifferenceItoCrossCheck) {
    std::mt19937_64 rng(8);
    for (double k : {3.0, 6.0}) {
        const auto ctx = KappaContext::make(k);
        for (int i = 0; i < 20; ++i) {
            const auto s = random_state(rng);
            for (int j = 1; j <= 2; ++j)
                for (auto mode : {MartingaleMode::c4, MartingaleMode::ch})
                    EXPECT_LT(std::abs(drift_residual_fd(ctx, s, j, mode)), 1e-4);
        }
    }
}

TEST(Ensemble, ResidualDetectsWrongExponent) {
    const auto ctx = KappaContext::make(6);
    std::mt19937_64 rng(9);
    const auto s = random_state(rng);
    auto wrong = [&](const FieldVec<HyperDual>& x) { return log_M_c4_fields(ctx, x) + 0.01 * x[fmA]; };
    const auto it = ito_terms(ctx, s, 1, wrong);
    const double C = martingale_coefficient(ctx, s, 1, MartingaleMode::c4);
    EXPECT_NEAR(std::abs(it.drift + 0.5 * ctx.kappa * C * C), 0.01 * s.W11 * s.W11, 1e-9);
}

TEST(Ensemble, RandomStatesRespectInvariants) {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 1000; ++i) {
        const auto s = random_state(rng, 0.1);
        EXPECT_NO_THROW(s.validate());
        EXPECT_GE(s.W1 - s.V1, 0.1 - 1e-12);
        EXPECT_GE(s.mA, std::max(s.t1, s.t2) - 1e-12);
        EXPECT_LE(s.mA, s.t1 + s.t2 + 1e-12);
    }
}
