#pragma once

#include <cmath>
#include <memory>

#include "sle2g/autodiff.hpp"

namespace sle2g {

namespace detail {
struct HypChain;
}

// κ and every constant derived from it. Construct through make(); the
// hypergeometric continuation table is shared between copies.
struct KappaContext {
    double kappa = 0;
    double alpha0 = 0;
    double beta0 = 0;
    double b = 0;
    double c = 0;
    double ha = 0, hb = 0, hc = 0;   // 2F1 parameters 4/κ, 1−4/κ, 8/κ
    std::shared_ptr<const detail::HypChain> chain;

    static KappaContext make(double kappa);

    // Copy with α₀ shifted by delta; used by sensitivity probes only.
    KappaContext with_alpha0_shift(double delta) const;

    double eigenvalue(int n) const { return -(kappa / 8.0) * n * (n + 16.0 / kappa); }
    double psi_exponent() const { return 8.0 / kappa - 1.0; }
};

double log_gamma(double x);

struct HypValue {
    double f = 0, df = 0, d2f = 0;
};

double hyp_F(const KappaContext& ctx, double x);
// F, F′, F″ on [0,1). At x = 1 only f is finite in general.
HypValue hyp_F_derivs(const KappaContext& ctx, double x);
double hyp_G(const KappaContext& ctx, double x);
double hyp_tilde_G(const KappaContext& ctx, double x);

// Closed-form F(1) = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)).
double hyp_F_at_one(const KappaContext& ctx);
// F(1) obtained independently by integrating the hypergeometric ODE in
// t = −log(1−x) from x = 1/2 to t → ∞ with an adaptive Dormand–Prince scheme.
double hyp_F_at_one_by_ode(const KappaContext& ctx);

double jacobi(int j, double alpha, double beta, double x);
double jacobi_l2_norm_sq(int j, double alpha, double beta);
double jacobi_sup_norm(int j, double alpha, double beta);

double log_h_const(const KappaContext& ctx, int n, int j);
double h_const(const KappaContext& ctx, int n, int j);

// log F and log F̃ = (2/κ)log x + log F lifted to scalar types carrying
// derivatives; x must lie in (0,1).
template <class T>
T log_hyp_F(const KappaContext& ctx, const T& x) {
    const HypValue h = hyp_F_derivs(ctx, value_of(x));
    const double l1 = h.df / h.f;
    return lift(x, std::log(h.f), l1, h.d2f / h.f - l1 * l1);
}

template <class T>
T log_hyp_tilde_F(const KappaContext& ctx, const T& x) {
    using std::log;
    return (2.0 / ctx.kappa) * log(x) + log_hyp_F(ctx, x);
}

}  // namespace sle2g
