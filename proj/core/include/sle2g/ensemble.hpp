#pragma once

#include <array>
#include <cmath>
#include <random>

#include "sle2g/autodiff.hpp"
#include "sle2g/specfun.hpp"
#include "sle2g/trig.hpp"
#include "sle2g/types.hpp"

namespace sle2g {

// Two-curve boundary data at a point (t1, t2) of the growth region.
// Wj1, Wj2, Wj3 are the first three derivatives of the covering map at the
// j-th driving point; Vs1 is the derivative at the s-th marked point.
struct EnsembleState {
    double W1 = 0, W2 = 0, V1 = 0, V2 = 0;
    double W11 = 1, W21 = 1, W12 = 0, W22 = 0, W13 = 0, W23 = 0;
    double V11 = 1, V21 = 1;
    double mA = 0;
    double Icc = 0;
    double t1 = 0, t2 = 0;

    static EnsembleState initial(const BoundaryConfig& cfg);
    void validate() const;

    double W(int j) const { return j == 1 ? W1 : W2; }
    double V(int s) const { return s == 1 ? V1 : V2; }
    double Wd1(int j) const { return j == 1 ? W11 : W21; }
    double Wd2(int j) const { return j == 1 ? W12 : W22; }
    double Wd3(int j) const { return j == 1 ? W13 : W23; }
    // Schwarzian W_{j,S} = W_{j,3}/W_{j,1} − (3/2)(W_{j,2}/W_{j,1})²
    double WS(int j) const;
};

enum class MartingaleMode { c4, ch };

// Time derivatives of every field under growth of curve j at unit rate.
// For the growing index the entries are the deterministic parts of the
// own-tip dynamics: dW[j] = ∂_{t_j} g̃_k at ŵ_j = −3W_{j,2} and
// dlogW1[j] = ½(W_{j,2}/W_{j,1})² − (4/3)W_{j,3}/W_{j,1} − (1/6)(W_{j,1}² − 1).
struct EnsembleRates {
    std::array<double, 2> dW{}, dV{}, dlogW1{}, dlogV1{};
    double dWS_other = 0;  // d W_{k,S}
    double dmA = 0;
    double dIcc = 0;
    std::array<double, 2> dt{};
};

EnsembleRates ode_rhs(const EnsembleState& s, int j);

double cross_ratio_R(const EnsembleState& s);
double phi(const EnsembleState& s, int j);

// Variables on which log M depends; ordered as in EnsembleState.
enum Field : int { fW1, fW2, fV1, fV2, fL1, fL2, fLV1, fLV2, fmA, ft1, ft2, fIcc, kNumFields };

template <class T>
using FieldVec = std::array<T, kNumFields>;

FieldVec<double> fields_of(const EnsembleState& s);

template <class T>
T log_M_c4_fields(const KappaContext& ctx, const FieldVec<T>& x) {
    using std::log;
    const double k = ctx.kappa;
    T sines = log(sin2(x[fW1] - x[fV1])) + log(sin2(x[fW2] - x[fV2])) + log(sin2(x[fW1] - x[fW2])) +
              log(sin2(x[fW1] - x[fV2])) + log(sin2(x[fV1] - x[fW2])) + log(sin2(x[fV1] - x[fV2]));
    return (60.0 / (8.0 * k)) * x[fmA] + (ctx.b / 6.0) * (x[fmA] - x[ft1] - x[ft2]) +
           ctx.b * (x[fL1] + x[fL2] + x[fLV1] + x[fLV2]) + (2.0 / k) * sines - (ctx.c / 6.0) * x[fIcc];
}

template <class T>
T cross_ratio_fields(const FieldVec<T>& x) {
    return sin2(x[fW1] - x[fV2]) * sin2(x[fV1] - x[fW2]) / (sin2(x[fW1] - x[fW2]) * sin2(x[fV1] - x[fV2]));
}

template <class T>
T log_M_ch_fields(const KappaContext& ctx, const FieldVec<T>& x) {
    using std::log;
    const double k = ctx.kappa;
    return ((k - 6.0) * (k - 2.0) / (8.0 * k)) * x[fmA] + (ctx.b / 6.0) * (x[fmA] - x[ft1] - x[ft2]) +
           log_hyp_tilde_F(ctx, cross_ratio_fields(x)) + ctx.b * (x[fL1] + x[fL2] + x[fLV1] + x[fLV2]) -
           2.0 * ctx.b * (log(sin2(x[fW1] - x[fV1])) + log(sin2(x[fW2] - x[fV2]))) - (ctx.c / 6.0) * x[fIcc];
}

double log_M_iB_c4(const KappaContext& ctx, const EnsembleState& s);
double log_M_iB_ch(const KappaContext& ctx, const EnsembleState& s);
// log M_{c4→ch} = log M_{iB→ch} − log M_{iB→c4}
double log_M_c4_ch(const KappaContext& ctx, const EnsembleState& s);

// Drift μ and diffusion σ (per unit dŵ_j) of the fields under the
// ℙ_iB dynamics dŵ_j = √κ dB_j, growth of curve j.
struct FieldDynamics {
    FieldVec<double> mu{}, sigma{};
};
FieldDynamics field_dynamics(const KappaContext& ctx, const EnsembleState& s, int j);

struct ItoTerms {
    double drift = 0;      // dt coefficient
    double diffusion = 0;  // dŵ_j coefficient
};

// Itô differential of f(fields) under growth of curve j, exact through
// hyper-dual differentiation.
template <class F>
ItoTerms ito_terms(const KappaContext& ctx, const EnsembleState& s, int j, F&& f) {
    const auto dyn = field_dynamics(ctx, s, j);
    const auto x0 = fields_of(s);
    FieldVec<HyperDual> a, b;
    for (int i = 0; i < kNumFields; ++i) {
        a[i] = HyperDual(x0[i], dyn.mu[i], 0.0, 0.0);
        b[i] = HyperDual(x0[i], dyn.sigma[i], dyn.sigma[i], 0.0);
    }
    const HyperDual fa = f(a), fb = f(b);
    return {fa.d1 + 0.5 * ctx.kappa * fb.d12, fb.d1};
}

// Coefficient C of dŵ_j in d M/M as displayed for each mode.
double martingale_coefficient(const KappaContext& ctx, const EnsembleState& s, int j, MartingaleMode mode);

// drift(log M) + (κ/2)·C²; vanishes exactly when M is a local martingale with
// dM/M = C dŵ_j.
double drift_residual(const KappaContext& ctx, const EnsembleState& s, int j, MartingaleMode mode);
// |diffusion(log M) − C|, the companion check on the noise coefficient.
double diffusion_residual(const KappaContext& ctx, const EnsembleState& s, int j, MartingaleMode mode);
// The same drift residual with derivatives from fourth-order central
// differences of step h along μ (10h along σ).
double drift_residual_fd(const KappaContext& ctx, const EnsembleState& s, int j, MartingaleMode mode,
                         double h = 1e-5);

// Random valid state: ordered angles with pairwise gaps ≥ min_gap,
// W_{j,1} ∈ [0.2,1], W_{j,2}, W_{j,3} ∈ [−2,2], consistent capacities.
EnsembleState random_state(std::mt19937_64& rng, double min_gap = 0.1);

}  // namespace sle2g
