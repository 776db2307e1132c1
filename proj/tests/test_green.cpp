#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "oracles/oracle_values.hpp"
#include "sle2g/green.hpp"
#include "sle2g/trig.hpp"

using namespace sle2g;
using cd = std::complex<double>;

namespace {

BoundaryConfig matched_config(const ZState& z) { return {kPi / 2 + z.z1, kPi / 2, -kPi / 2 + z.z2, -kPi / 2}; }

}  // namespace

TEST(Exponents, Values) {
    const auto ctx = KappaContext::make(6);
    EXPECT_NEAR(alpha0(ctx), 1.25, 1e-15);
    EXPECT_NEAR(beta0(ctx), 11.0 / 15.0, 1e-15);
    EXPECT_NEAR(alpha0(KappaContext::make(4)), 2.0, 1e-15);
}

TEST(GQuad, OracleValues) {
    EXPECT_NEAR(G_quad(KappaContext::make(6), BoundaryConfig::symmetric()), oracle::kGquad_sym_k6, 1e-14);
    EXPECT_NEAR(G_quad(KappaContext::make(6), {2.0, 0.5, -1.2, -2.6}), oracle::kGquad_asym_k6, 1e-14);
    EXPECT_NEAR(G_quad(KappaContext::make(3), {2.0, 0.5, -1.2, -2.6}), oracle::kGquad_asym_k3, 1e-14);
    EXPECT_NEAR(G_u(KappaContext::make(6), {kPi / 2, kPi / 2}), oracle::kGu_half_k6, 1e-14);
}

TEST(GQuad, RotationAndRelabelling) {
    const auto ctx = KappaContext::make(6);
    const BoundaryConfig c{2.0, 0.5, -1.2, -2.6};
    const double g = G_quad(ctx, c);
    for (double s : {0.3, -1.1, 4.0}) EXPECT_NEAR(G_quad(ctx, {c.w1 + s, c.v1 + s, c.w2 + s, c.v2 + s}), g, 1e-14);
    EXPECT_NEAR(G_quad(ctx, {c.w2 + kTwoPi, c.v2 + kTwoPi, c.w1, c.v1}), g, 1e-14);
    EXPECT_NEAR(G_quad(ctx, {-c.v2, -c.w2, -c.v1, -c.w1}), g, 1e-14);
}

TEST(GQuad, DomainErrors) {
    const auto ctx = KappaContext::make(6);
    EXPECT_THROW(G_quad(ctx, {0.5, 2.0, -1.2, -2.6}), std::domain_error);
    EXPECT_THROW(G_quad(ctx, {2.0, 0.5, -1.2, -5.0}), std::domain_error);
    EXPECT_THROW(G_u(ctx, {0.0, 1.0}), std::domain_error);
    EXPECT_THROW(greens_disc(ctx, cd(1.0, 0.0), BoundaryConfig::symmetric()), std::domain_error);
    EXPECT_THROW(greens_disc(ctx, cd(0.0, 0.0), cd(1, 0), cd(-1, 0), cd(0, 1), cd(0, -1)), std::domain_error);
    EXPECT_THROW(greens_disc(ctx, cd(0.0, 0.0), cd(1.1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)), std::domain_error);
}

TEST(GU, MatchesQuadrilateralForm) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(0.05, kPi - 0.05);
    for (double k : {2.0, 4.0, 6.0, 7.5}) {
        const auto ctx = KappaContext::make(k);
        for (int i = 0; i < 200; ++i) {
            const ZState z{U(rng), U(rng)};
            const double g = G_u(ctx, z);
            EXPECT_NEAR(g, G_quad(ctx, matched_config(z)), 1e-12 * g);
            EXPECT_NEAR(g, G_u(ctx, {z.z2, z.z1}), 1e-13 * g);
        }
    }
}

TEST(GreensDisc, OriginAndCovariance) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(-0.6, 0.6), P(-kPi, kPi);
    for (double k : {3.0, 6.0}) {
        const auto ctx = KappaContext::make(k);
        for (const BoundaryConfig& c : {BoundaryConfig::symmetric(), BoundaryConfig{2.0, 0.5, -1.2, -2.6}}) {
            EXPECT_NEAR(greens_disc(ctx, 0.0, c), G_quad(ctx, c), 1e-12);
            for (int i = 0; i < 20; ++i) {
                const DiscAutomorphism T{{U(rng), U(rng)}, P(rng)};
                const cd z0(U(rng), U(rng));
                const cd a1 = std::polar(1.0, c.w1), b1 = std::polar(1.0, c.v1), a2 = std::polar(1.0, c.w2),
                         b2 = std::polar(1.0, c.v2);
                const double lhs = greens_disc(ctx, T(z0), T(a1), T(b1), T(a2), T(b2));
                const double rhs = std::pow(std::abs(T.derivative(z0)), -ctx.alpha0) * greens_disc(ctx, z0, c);
                EXPECT_NEAR(lhs, rhs, 1e-10 * rhs);
            }
        }
    }
}

TEST(GreensDisc, BoundedByConformalRadius) {
    const auto ctx = KappaContext::make(6);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-0.99, 0.99);
    const BoundaryConfig c{2.0, 0.5, -1.2, -2.6};
    for (int i = 0; i < 500; ++i) {
        const cd z0(U(rng), U(rng));
        if (std::abs(z0) >= 0.99) continue;
        const double g = greens_disc(ctx, z0, c);
        EXPECT_GT(g, 0.0);
        EXPECT_LE(g, std::pow(4.0, 1.0 - 12.0 / ctx.kappa) * std::pow(1.0 - std::norm(z0), -ctx.alpha0) *
                         std::pow(4.0, 4.0 / ctx.kappa + ctx.psi_exponent()));
    }
}
