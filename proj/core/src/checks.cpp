#include "sle2g/checks.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "sle2g/ensemble.hpp"
#include "sle2g/green.hpp"
#include "sle2g/timecurve.hpp"
#include "sle2g/trig.hpp"

namespace sle2g {

namespace {

double psi_at(double a, double x, double y) { return std::pow(1.0 - x * x - y * y, a); }

const std::vector<std::pair<double, double>>& disc_samples() {
    static const std::vector<std::pair<double, double>> pts{
        {0.0, 0.0}, {0.3, -0.2}, {-0.1, 0.5}, {0.6, 0.1}, {-0.45, -0.55}, {0.05, 0.85}};
    return pts;
}

const std::vector<ZState>& z_samples() {
    static const std::vector<ZState> pts{{kPi / 2, kPi / 2}, {1.0, 2.0}, {0.3, 2.5}, {2.8, 0.4}, {0.7, 0.9}};
    return pts;
}

std::vector<BoundaryConfig> sample_configs() {
    return {BoundaryConfig::symmetric(), {2.0, 0.5, -1.2, -2.6}, {0.4, 0.1, -2.0, -5.0}};
}

double ratio_defect(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

CheckResult check_hyp_ode(const KappaContext& ctx, double tol) {
    const double k = ctx.kappa;
    const double c0 = (4.0 / k) * (1.0 - 4.0 / k);
    auto f = [&](double s) { return hyp_F(ctx, s); };
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        const double x = 0.99 * i / 199.0;
        double d1, d2;
        if (x == 0.0) {
            const double h = 1e-3;
            const double f0 = f(0), f1 = f(h), f2 = f(2 * h), f3 = f(3 * h), f4 = f(4 * h), f5 = f(5 * h);
            d1 = (-25 * f0 + 48 * f1 - 36 * f2 + 16 * f3 - 3 * f4) / (12 * h);
            d2 = (45 * f0 - 154 * f1 + 214 * f2 - 156 * f3 + 61 * f4 - 10 * f5) / (12 * h * h);
        } else {
            const double h = std::min({1e-3, (1.0 - x) / 150.0, x / 2.0});
            const double fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2 * h);
            d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h);
            d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
        }
        const double r = x * (1 - x) * d2 + (8.0 / k - 2.0 * x) * d1 - c0 * f(x);
        worst = std::max(worst, std::abs(r));
    }
    return {"hyp_ode", worst, tol};
}

CheckResult check_hyp_at_one(const KappaContext& ctx, double tol) {
    return {"hyp_at_one", ratio_defect(hyp_F_at_one_by_ode(ctx), hyp_F_at_one(ctx)), tol};
}

CheckResult check_orthonormality(const SpectralBasis& basis, int n_max, double tol) {
    const int count = SpectralBasis::count(n_max);
    const DiscRule rule = disc_rule(basis.alpha(), n_max + 4, 2 * n_max + 8);
    std::vector<double> gram(count * count, 0.0), v;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        basis.eval_all(n_max, rule.x[q], rule.y[q], v);
        for (int a = 0; a < count; ++a)
            for (int b = a; b < count; ++b) gram[a * count + b] += rule.w[q] * v[a] * v[b];
    }
    double worst = 0;
    for (int a = 0; a < count; ++a)
        for (int b = a; b < count; ++b) worst = std::max(worst, std::abs(gram[a * count + b] - (a == b ? 1.0 : 0.0)));
    return {"orthonormality", worst, tol};
}

CheckResult check_eigenfunctions(const SpectralBasis& basis, int n_max, double tol, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> rad(0.0, 0.95), ang(0.0, kTwoPi);
    double worst = 0;
    for (int p = 0; p < 20; ++p) {
        const double r = rad(rng), th = ang(rng), x = r * std::cos(th), y = r * std::sin(th);
        for (int n = 0; n <= n_max; ++n)
            for (int j = 0; 2 * j <= n; ++j)
                for (int i = 1; i <= 2; ++i) {
                    if (i == 2 && 2 * j == n) continue;
                    const double Lv = generator_apply_exact(
                        basis.ctx(), [&](const HyperDual& a, const HyperDual& b) { return basis.value(n, j, i, a, b); },
                        x, y);
                    worst = std::max(worst, std::abs(Lv - basis.eigenvalue(n) * basis.value(n, j, i, x, y)));
                }
    }
    return {"eigenfunction", worst, tol};
}

CheckResult check_chapman_kolmogorov(const SpectralBasis& basis, double s, double t, double tol) {
    const double a = basis.alpha();
    const DiscRule rule = disc_rule(a, 24, 96);
    const auto& pts = disc_samples();
    double worst = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto [ax, ay] = pts[i];
        const auto [bx, by] = pts[i + 1];
        double sum = 0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double mx = rule.x[q], my = rule.y[q];
            sum += rule.w[q] * p_t(basis, ax, ay, mx, my, s).value / psi_at(a, mx, my) *
                   p_t(basis, mx, my, bx, by, t).value;
        }
        worst = std::max(worst, std::abs(sum - p_t(basis, ax, ay, bx, by, s + t).value));
    }
    return {"chapman_kolmogorov", worst, tol};
}

CheckResult check_stationarity(const SpectralBasis& basis, double t, double tol) {
    const auto& ctx = basis.ctx();
    const DiscRule rule = disc_rule(basis.alpha(), 24, 96);
    double worst = 0;
    for (const auto& [bx, by] : disc_samples()) {
        double sum = 0;
        for (std::size_t q = 0; q < rule.size(); ++q) sum += rule.w[q] * p_t(basis, rule.x[q], rule.y[q], bx, by, t).value;
        sum *= 8.0 / (kPi * ctx.kappa);
        worst = std::max(worst, std::abs(sum - p_infty(ctx, bx, by)));
    }
    return {"stationarity", worst, tol};
}

CheckResult check_quasi_invariance(const SpectralBasis& basis, double t, double tol) {
    const auto& ctx = basis.ctx();
    const double a = basis.alpha();
    const DiscRule rule = disc_rule(a, 24, 96);
    std::vector<ZState> nodes;
    std::vector<double> base;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const ZState m = z_of_xy(rule.x[q], rule.y[q]);
        nodes.push_back(m);
        base.push_back(rule.w[q] * tilde_pZ_infty(basis, m) / (z_jacobian(m) * psi_at(a, rule.x[q], rule.y[q])));
    }
    double worst = 0;
    for (const ZState& b : z_samples()) {
        double sum = 0;
        for (std::size_t q = 0; q < nodes.size(); ++q) sum += base[q] * tilde_pZ_t(basis, nodes[q], b, t).value;
        worst = std::max(worst, std::abs(sum - std::exp(-ctx.alpha0 * t) * tilde_pZ_infty(basis, b)));
    }
    for (const ZState& z : z_samples()) {
        const double g = z_generator_apply(
            ctx, [&](const HyperDual& u, const HyperDual& v) { return exp(-log_G_u(ctx, u, v)); }, z.z1, z.z2);
        worst = std::max(worst, std::abs(g * G_u(ctx, z) - ctx.alpha0));
    }
    return {"quasi_invariance", worst, tol};
}

CheckResult check_drift_residual(const KappaContext& ctx, int n_states, double tol, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0;
    for (int i = 0; i < n_states; ++i) {
        const EnsembleState s = random_state(rng);
        for (int j = 1; j <= 2; ++j)
            for (auto mode : {MartingaleMode::c4, MartingaleMode::ch})
                worst = std::max(worst, std::abs(drift_residual(ctx, s, j, mode)));
    }
    return {"drift_residual", worst, tol};
}

CheckResult check_drift_residual_fd(const KappaContext& ctx, int n_states, double tol, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0;
    for (int i = 0; i < n_states; ++i) {
        const EnsembleState s = random_state(rng);
        for (int j = 1; j <= 2; ++j)
            for (auto mode : {MartingaleMode::c4, MartingaleMode::ch})
                worst = std::max(worst, std::abs(drift_residual_fd(ctx, s, j, mode)));
    }
    return {"drift_residual_fd", worst, tol};
}

CheckResult check_survival_slope(const SpectralBasis& basis, double tol) {
    const ZState z0{kPi / 2, kPi / 2};
    double st = 0, sl = 0, stt = 0, stl = 0;
    int n = 0;
    for (double t = 4.0; t <= 8.0 + 1e-12; t += 0.5, ++n) {
        const double l = std::log(survival_P2(basis, z0, t).value);
        st += t;
        sl += l;
        stt += t * t;
        stl += t * l;
    }
    const double slope = (n * stl - st * sl) / (n * stt - st * st);
    return {"survival_slope", std::abs(slope + basis.ctx().alpha0), tol};
}

CheckResult check_survival_envelope(const SpectralBasis& basis) {
    const ZState z0{kPi / 2, kPi / 2};
    const double d = 2.0 + basis.ctx().kappa / 8.0;
    auto scaled = [&](double t) {
        const double ratio = survival_P2(basis, z0, t).value / survival_asymptote(basis, z0, t);
        return std::abs(ratio - 1.0) * std::exp(d * t);
    };
    double C = 0;
    for (double t = 1.0; t < 4.0 - 1e-12; t += 0.25) C = std::max(C, scaled(t));
    double worst = 0;
    for (double t = 4.0; t <= 8.0 + 1e-12; t += 0.25) worst = std::max(worst, scaled(t) / C);
    return {"survival_envelope", worst, 1.0};
}

CheckResult check_green_origin(const KappaContext& ctx, double tol) {
    double worst = 0;
    for (const auto& cfg : sample_configs())
        worst = std::max(worst, ratio_defect(greens_disc(ctx, {0.0, 0.0}, cfg), G_quad(ctx, cfg)));
    return {"green_origin", worst, tol};
}

CheckResult check_green_mobius(const KappaContext& ctx, double tol) {
    const std::vector<DiscAutomorphism> maps{{{0.3, 0.2}, 0.7}, {{-0.5, 0.1}, -2.0}, {{0.0, 0.8}, 0.0}};
    const std::vector<std::complex<double>> z0s{{0.0, 0.0}, {0.1, -0.4}, {-0.6, 0.3}};
    double worst = 0;
    for (const auto& cfg : sample_configs()) {
        const std::complex<double> a1 = std::polar(1.0, cfg.w1), b1 = std::polar(1.0, cfg.v1);
        const std::complex<double> a2 = std::polar(1.0, cfg.w2), b2 = std::polar(1.0, cfg.v2);
        for (const auto& T : maps)
            for (auto z0 : z0s) {
                const double lhs = greens_disc(ctx, T(z0), T(a1), T(b1), T(a2), T(b2));
                const double rhs = std::pow(std::abs(T.derivative(z0)), -ctx.alpha0) * greens_disc(ctx, z0, a1, b1, a2, b2);
                worst = std::max(worst, ratio_defect(lhs, rhs));
            }
    }
    return {"green_mobius", worst, tol};
}

CheckResult check_green_cross_ratio(const KappaContext& ctx, double tol) {
    double worst = 0;
    for (const auto& cfg : sample_configs()) {
        const std::complex<double> a1 = std::polar(1.0, cfg.w1), b1 = std::polar(1.0, cfg.v1);
        const std::complex<double> a2 = std::polar(1.0, cfg.w2), b2 = std::polar(1.0, cfg.v2);
        double lo = INFINITY, hi = -INFINITY;
        for (double r : {0.0, 0.3, 0.6, 0.85})
            for (int k = 0; k < 8; ++k) {
                const auto z0 = std::polar(r, kTwoPi * k / 8.0 + 0.1);
                const double q = greens_disc(ctx, z0, a1, b2, a2, b1) / greens_disc(ctx, z0, a1, b1, a2, b2);
                lo = std::min(lo, q);
                hi = std::max(hi, q);
            }
        worst = std::max(worst, (hi - lo) / hi);
    }
    return {"green_cross_ratio", worst, tol};
}

std::vector<CheckResult> run_identity_suite(const KappaContext& ctx, int n_max) {
    const SpectralBasis basis(ctx, n_max);
    return {check_hyp_ode(ctx),
            check_hyp_at_one(ctx),
            check_orthonormality(basis),
            check_eigenfunctions(basis),
            check_chapman_kolmogorov(basis),
            check_stationarity(basis),
            check_quasi_invariance(basis),
            check_drift_residual(ctx),
            check_drift_residual_fd(ctx),
            check_survival_slope(basis),
            check_survival_envelope(basis),
            check_green_origin(ctx),
            check_green_mobius(ctx),
            check_green_cross_ratio(ctx)};
}

}  // namespace sle2g
