#include "sle2g/ensemble.hpp"

#include <algorithm>
#include <stdexcept>

namespace sle2g {

namespace {

void check_index(int j) {
    if (j != 1 && j != 2) throw std::domain_error("curve index must be 1 or 2");
}

}  // namespace

EnsembleState EnsembleState::initial(const BoundaryConfig& cfg) {
    cfg.validate();
    EnsembleState s;
    s.W1 = cfg.w1;
    s.V1 = cfg.v1;
    s.W2 = cfg.w2;
    s.V2 = cfg.v2;
    return s;
}

void EnsembleState::validate() const {
    BoundaryConfig{W1, V1, W2, V2}.validate();
    if (!(W11 > 0 && W11 <= 1 && W21 > 0 && W21 <= 1)) throw std::domain_error("W_{j,1} must lie in (0,1]");
    if (!(V11 > 0 && V21 > 0)) throw std::domain_error("V_{s,1} must be positive");
    if (!(t1 >= 0 && t2 >= 0)) throw std::domain_error("growth times must be nonnegative");
    const double tol = 1e-12 * (1 + t1 + t2);
    if (!(mA >= std::max(t1, t2) - tol && mA <= t1 + t2 + tol)) throw std::domain_error("mA must lie in [t1 v t2, t1 + t2]");
    for (double x : {W12, W22, W13, W23, Icc})
        if (!std::isfinite(x)) throw std::domain_error("ensemble state has a non-finite field");
}

double EnsembleState::WS(int j) const {
    const double r = Wd2(j) / Wd1(j);
    return Wd3(j) / Wd1(j) - 1.5 * r * r;
}

EnsembleRates ode_rhs(const EnsembleState& s, int j) {
    check_index(j);
    s.validate();
    const int k = 3 - j;
    const double wj = s.W(j), a = s.Wd1(j), a2 = a * a;
    EnsembleRates r;
    r.dW[k - 1] = a2 * cot2(s.W(k) - wj);
    r.dlogW1[k - 1] = a2 * cot2_d1(s.W(k) - wj);
    for (int v = 1; v <= 2; ++v) {
        r.dV[v - 1] = a2 * cot2(s.V(v) - wj);
        r.dlogV1[v - 1] = a2 * cot2_d1(s.V(v) - wj);
    }
    const double q = s.Wd2(j) / a;
    r.dW[j - 1] = -3.0 * s.Wd2(j);
    r.dlogW1[j - 1] = 0.5 * q * q - (4.0 / 3.0) * s.Wd3(j) / a - (a2 - 1.0) / 6.0;
    const double b = s.Wd1(k);
    r.dWS_other = a2 * b * b * cot2_d3(s.W(k) - wj);
    r.dmA = a2;
    r.dIcc = s.WS(j);
    r.dt[j - 1] = 1.0;
    return r;
}

double cross_ratio_R(const EnsembleState& s) {
    s.validate();
    return cross_ratio_fields(fields_of(s));
}

double phi(const EnsembleState& s, int j) {
    check_index(j);
    s.validate();
    const int k = 3 - j;
    return cot2(s.W(j) - s.V(k)) - cot2(s.W(j) - s.W(k));
}

FieldVec<double> fields_of(const EnsembleState& s) {
    return {s.W1, s.W2, s.V1, s.V2, std::log(s.W11), std::log(s.W21), std::log(s.V11), std::log(s.V21),
            s.mA, s.t1, s.t2, s.Icc};
}

double log_M_iB_c4(const KappaContext& ctx, const EnsembleState& s) {
    s.validate();
    return log_M_c4_fields(ctx, fields_of(s));
}

double log_M_iB_ch(const KappaContext& ctx, const EnsembleState& s) {
    s.validate();
    return log_M_ch_fields(ctx, fields_of(s));
}

double log_M_c4_ch(const KappaContext& ctx, const EnsembleState& s) { return log_M_iB_ch(ctx, s) - log_M_iB_c4(ctx, s); }

FieldDynamics field_dynamics(const KappaContext& ctx, const EnsembleState& s, int j) {
    check_index(j);
    s.validate();
    const int k = 3 - j;
    const double kap = ctx.kappa, wj = s.W(j), a = s.Wd1(j), a2 = a * a, q = s.Wd2(j) / a;
    const int fw[2] = {fW1, fW2}, fl[2] = {fL1, fL2}, fv[2] = {fV1, fV2}, flv[2] = {fLV1, fLV2};
    FieldDynamics d;
    d.mu[fw[j - 1]] = (0.5 * kap - 3.0) * s.Wd2(j);
    d.sigma[fw[j - 1]] = a;
    d.mu[fl[j - 1]] = 0.5 * q * q + (0.5 * kap - 4.0 / 3.0) * s.Wd3(j) / a - (a2 - 1.0) / 6.0 - 0.5 * kap * q * q;
    d.sigma[fl[j - 1]] = q;
    d.mu[fw[k - 1]] = a2 * cot2(s.W(k) - wj);
    d.mu[fl[k - 1]] = a2 * cot2_d1(s.W(k) - wj);
    for (int v = 0; v < 2; ++v) {
        d.mu[fv[v]] = a2 * cot2(s.V(v + 1) - wj);
        d.mu[flv[v]] = a2 * cot2_d1(s.V(v + 1) - wj);
    }
    d.mu[fmA] = a2;
    d.mu[j == 1 ? ft1 : ft2] = 1.0;
    d.mu[fIcc] = s.WS(j);
    return d;
}

double martingale_coefficient(const KappaContext& ctx, const EnsembleState& s, int j, MartingaleMode mode) {
    check_index(j);
    s.validate();
    const int k = 3 - j;
    const double a = s.Wd1(j), wj = s.W(j);
    const double base = ctx.b * s.Wd2(j) / a;
    if (mode == MartingaleMode::c4)
        return base + (cot2(wj - s.W(k)) + cot2(wj - s.V1) + cot2(wj - s.V2)) * a / ctx.kappa;
    const double R = cross_ratio_R(s);
    return base + hyp_tilde_G(ctx, R) * a * phi(s, j) / (2.0 * ctx.kappa) - ctx.b * cot2(wj - s.V(j)) * a;
}

namespace {

template <class T>
T log_M(const KappaContext& ctx, const FieldVec<T>& x, MartingaleMode mode) {
    return mode == MartingaleMode::c4 ? log_M_c4_fields(ctx, x) : log_M_ch_fields(ctx, x);
}

}  // namespace

double drift_residual(const KappaContext& ctx, const EnsembleState& s, int j, MartingaleMode mode) {
    const auto it = ito_terms(ctx, s, j, [&](const FieldVec<HyperDual>& x) { return log_M(ctx, x, mode); });
    const double C = martingale_coefficient(ctx, s, j, mode);
    return it.drift + 0.5 * ctx.kappa * C * C;
}

double diffusion_residual(const KappaContext& ctx, const EnsembleState& s, int j, MartingaleMode mode) {
    const auto it = ito_terms(ctx, s, j, [&](const FieldVec<HyperDual>& x) { return log_M(ctx, x, mode); });
    return std::abs(it.diffusion - martingale_coefficient(ctx, s, j, mode));
}

double drift_residual_fd(const KappaContext& ctx, const EnsembleState& s, int j, MartingaleMode mode, double h) {
    const auto dyn = field_dynamics(ctx, s, j);
    const auto x0 = fields_of(s);
    auto at = [&](const FieldVec<double>& dir, double step) {
        FieldVec<double> x = x0;
        for (int i = 0; i < kNumFields; ++i) x[i] += step * dir[i];
        return log_M(ctx, x, mode);
    };
    const double f0 = log_M(ctx, x0, mode);
    const double first = (8.0 * (at(dyn.mu, h) - at(dyn.mu, -h)) - at(dyn.mu, 2 * h) + at(dyn.mu, -2 * h)) / (12.0 * h);
    const double h2 = 10.0 * h;
    const double second = (16.0 * (at(dyn.sigma, h2) + at(dyn.sigma, -h2)) - at(dyn.sigma, 2 * h2) -
                           at(dyn.sigma, -2 * h2) - 30.0 * f0) /
                          (12.0 * h2 * h2);
    const double C = martingale_coefficient(ctx, s, j, mode);
    return first + 0.5 * ctx.kappa * second + 0.5 * ctx.kappa * C * C;
}

EnsembleState random_state(std::mt19937_64& rng, double min_gap) {
    if (!(min_gap > 0 && 4 * min_gap < kTwoPi)) throw std::domain_error("random_state: invalid minimum gap");
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::exponential_distribution<double> E(1.0);
    double g[4], sum = 0;
    for (double& x : g) sum += (x = E(rng));
    const double free = kTwoPi - 4 * min_gap;
    for (double& x : g) x = min_gap + free * x / sum;
    EnsembleState s;
    s.W1 = -kPi + kTwoPi * U(rng);
    s.V1 = s.W1 - g[0];
    s.W2 = s.V1 - g[1];
    s.V2 = s.W2 - g[2];
    auto u = [&](double lo, double hi) { return lo + (hi - lo) * U(rng); };
    s.W11 = u(0.2, 1.0);
    s.W21 = u(0.2, 1.0);
    s.W12 = u(-2, 2);
    s.W22 = u(-2, 2);
    s.W13 = u(-2, 2);
    s.W23 = u(-2, 2);
    s.V11 = u(0.2, 1.0);
    s.V21 = u(0.2, 1.0);
    s.t1 = u(0, 2);
    s.t2 = u(0, 2);
    s.mA = u(std::max(s.t1, s.t2), s.t1 + s.t2);
    s.Icc = u(-1, 1);
    return s;
}

}  // namespace sle2g
