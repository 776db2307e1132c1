#include <gtest/gtest.h>

#include "sle2g/checks.hpp"

using namespace sle2g;

TEST(Checks, IdentitySuitePasses) {
    for (double k : {3.0, 6.0}) {
        const auto ctx = KappaContext::make(k);
        for (const auto& c : run_identity_suite(ctx)) {
            EXPECT_TRUE(c.passed()) << c.name << " residual " << c.residual << " tolerance " << c.tolerance;
            EXPECT_GE(c.residual, 0.0) << c.name;
        }
    }
}

TEST(Checks, AlphaShiftBreaksQuasiInvariance) {
    const auto ctx = KappaContext::make(6).with_alpha0_shift(1e-3);
    const SpectralBasis basis(ctx, 40);
    const auto c = check_quasi_invariance(basis);
    EXPECT_FALSE(c.passed());
    EXPECT_NEAR(c.residual, 1e-3, 1e-4);
}
