#include "sle2g/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace sle2g {

namespace detail {

// Analytic continuation of F from x = 1/2 towards 1 by Taylor expansions
// about x_m = 1 − 2^{-(m+1)}. Each expansion is used on [x_m, x_{m+1}], half
// of its radius of convergence, so every evaluation is a fixed short sum.
struct HypChain {
    static constexpr int kCenters = 53;
    static constexpr int kTerms = 80;
    struct Center {
        double x0, rho;
        std::array<double, kTerms> d;  // c_k ρ^k
    };
    std::vector<Center> centers;
};

}  // namespace detail

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void domain(const std::string& what) { throw std::domain_error(what); }

double series(double a, double b, double c, double x) {
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 2000; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) {
            if (k > 2) break;
        }
        if (term == 0.0) break;
    }
    return sum;
}

HypValue series_derivs(double a, double b, double c, double x) {
    HypValue v;
    v.f = series(a, b, c, x);
    v.df = a * b / c * series(a + 1, b + 1, c + 1, x);
    v.d2f = a * (a + 1) * b * (b + 1) / (c * (c + 1)) * series(a + 2, b + 2, c + 2, x);
    return v;
}

detail::HypChain::Center make_center(double a, double b, double c, double x0, double f0, double df0) {
    detail::HypChain::Center ce;
    ce.x0 = x0;
    ce.rho = (1.0 - x0) / 2.0;
    const double ab = a * b, q = x0 * (1.0 - x0), rho = ce.rho;
    ce.d[0] = f0;
    ce.d[1] = df0 * rho;
    for (int k = 0; k + 2 < detail::HypChain::kTerms; ++k) {
        const double lin = ((1.0 - 2.0 * x0) * k + c - 2.0 * x0) * (k + 1.0);
        ce.d[k + 2] = ((k * (k + 1.0) + ab) * rho * rho * ce.d[k] - lin * rho * ce.d[k + 1]) /
                      (q * (k + 1.0) * (k + 2.0));
    }
    return ce;
}

HypValue eval_center(const detail::HypChain::Center& ce, double x) {
    const double s = (x - ce.x0) / ce.rho;
    double f = 0, df = 0, d2f = 0;
    for (int k = detail::HypChain::kTerms - 1; k >= 0; --k) {
        f = f * s + ce.d[k];
        if (k >= 1) df = df * s + k * ce.d[k];
        if (k >= 2) d2f = d2f * s + k * (k - 1.0) * ce.d[k];
    }
    return {f, df / ce.rho, d2f / (ce.rho * ce.rho)};
}

std::shared_ptr<const detail::HypChain> build_chain(double a, double b, double c) {
    auto chain = std::make_shared<detail::HypChain>();
    HypValue v = series_derivs(a, b, c, 0.5);
    double x0 = 0.5;
    for (int m = 0; m < detail::HypChain::kCenters; ++m) {
        chain->centers.push_back(make_center(a, b, c, x0, v.f, v.df));
        const double x1 = 1.0 - std::ldexp(1.0, -(m + 2));
        v = eval_center(chain->centers.back(), x1);
        x0 = x1;
    }
    return chain;
}

}  // namespace

KappaContext KappaContext::make(double kappa) {
    if (!(kappa > 0.0 && kappa < 8.0)) domain("kappa must lie in (0,8), got " + std::to_string(kappa));
    KappaContext ctx;
    ctx.kappa = kappa;
    ctx.alpha0 = (12.0 - kappa) * (kappa + 4.0) / (8.0 * kappa);
    ctx.beta0 = (2.0 + kappa / 8.0) / (3.0 + kappa / 8.0);
    ctx.b = (6.0 - kappa) / (2.0 * kappa);
    ctx.c = (3.0 * kappa - 8.0) * (6.0 - kappa) / (2.0 * kappa);
    ctx.ha = 4.0 / kappa;
    ctx.hb = 1.0 - 4.0 / kappa;
    ctx.hc = 8.0 / kappa;
    ctx.chain = build_chain(ctx.ha, ctx.hb, ctx.hc);
    return ctx;
}

KappaContext KappaContext::with_alpha0_shift(double delta) const {
    KappaContext out = *this;
    out.alpha0 += delta;
    return out;
}

double log_gamma(double x) {
    if (!(x > 0.0)) domain("log_gamma requires x > 0");
    return std::lgamma(x);
}

double hyp_F_at_one(const KappaContext& ctx) {
    const double a = ctx.ha, b = ctx.hb, c = ctx.hc;
    return std::exp(std::lgamma(c) + std::lgamma(c - a - b) - std::lgamma(c - a) - std::lgamma(c - b));
}

HypValue hyp_F_derivs(const KappaContext& ctx, double x) {
    if (!(x >= 0.0 && x <= 1.0)) domain("hypergeometric argument outside [0,1]");
    if (x <= 0.5) return series_derivs(ctx.ha, ctx.hb, ctx.hc, x);
    if (x == 1.0) {
        HypValue v;
        v.f = hyp_F_at_one(ctx);
        const double gamma = ctx.hc - 1.0;
        const double ab = ctx.ha * ctx.hb;
        if (ab == 0.0) {
            v.df = v.d2f = 0.0;
        } else if (gamma > 1.0) {
            v.df = ab * v.f / (ctx.hc - 2.0);
            v.d2f = gamma > 2.0 ? (ab + 2.0) * v.df / (ctx.hc - 3.0) : std::numeric_limits<double>::infinity();
        } else {
            v.df = v.d2f = std::numeric_limits<double>::infinity();
        }
        return v;
    }
    const int m = std::min(detail::HypChain::kCenters - 1,
                           static_cast<int>(std::floor(-std::log2(1.0 - x))) - 1);
    const auto& centers = ctx.chain->centers;
    int idx = std::max(0, m);
    while (idx > 0 && centers[idx].x0 > x) --idx;
    while (idx + 1 < detail::HypChain::kCenters && centers[idx + 1].x0 <= x) ++idx;
    return eval_center(centers[idx], x);
}

double hyp_F(const KappaContext& ctx, double x) { return hyp_F_derivs(ctx, x).f; }

double hyp_G(const KappaContext& ctx, double x) {
    if (!(x > 0.0 && x <= 1.0)) domain("hyp_G requires x in (0,1]");
    const HypValue v = hyp_F_derivs(ctx, x);
    if (std::isinf(v.df)) return v.df;
    return ctx.kappa * x * v.df / v.f;
}

double hyp_tilde_G(const KappaContext& ctx, double x) {
    if (x == 0.0) return 2.0;
    return hyp_G(ctx, x) + 2.0;
}

double hyp_F_at_one_by_ode(const KappaContext& ctx) {
    const double a = ctx.ha, b = ctx.hb, c = ctx.hc, ab = a * b;
    const HypValue start = series_derivs(a, b, c, 0.5);
    if (ab == 0.0) return start.f;
    using State = std::array<double, 2>;
    auto rhs = [&](const State& s, State& ds, double t) {
        const double y = std::exp(-t);
        const double x = -std::expm1(-t);
        ds[0] = s[1];
        ds[1] = -s[1] + (ab * y * s[0] - (c - 2.0 * x) * s[1]) / x;
    };
    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-16, 1e-14);
    State s{start.f, 0.5 * start.df};
    const double rate = std::min(1.0, c - 1.0);
    double t = std::log(2.0);
    const double chunk = 4.0 / rate;
    for (int it = 0; it < 4000; ++it) {
        ode::integrate_adaptive(stepper, rhs, s, t, t + chunk, 1e-3);
        t += chunk;
        if (std::abs(s[1]) / rate < 1e-17 * std::abs(s[0])) break;
    }
    return s[0] + s[1] / rate;
}

double jacobi(int j, double alpha, double beta, double x) {
    if (j < 0) domain("jacobi degree must be nonnegative");
    if (!(alpha > -1.0 && beta > -1.0)) domain("jacobi parameters must exceed -1");
    if (j == 0) return 1.0;
    double p0 = 1.0;
    double p1 = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0;
    const double ab = alpha + beta;
    for (int n = 2; n <= j; ++n) {
        const double s = 2.0 * n + ab;
        const double c0 = 2.0 * n * (n + ab) * (s - 2.0);
        const double c1 = (s - 1.0) * (s * (s - 2.0) * x + alpha * alpha - beta * beta);
        const double c2 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * s;
        const double p2 = (c1 * p1 - c2 * p0) / c0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double jacobi_l2_norm_sq(int j, double alpha, double beta) {
    if (j < 0 || !(alpha > -1.0 && beta > -1.0)) domain("jacobi_l2_norm_sq: invalid parameters");
    const double ab = alpha + beta;
    if (j == 0) {
        return std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                        std::lgamma(ab + 2.0));
    }
    return std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(j + alpha + 1.0) + std::lgamma(j + beta + 1.0) -
                    std::lgamma(j + 1.0) - std::log(2.0 * j + ab + 1.0) - std::lgamma(j + ab + 1.0));
}

double jacobi_sup_norm(int j, double alpha, double beta) {
    const double q = std::max(alpha, beta);
    if (j < 0 || !(q >= -0.5) || !(std::min(alpha, beta) > -1.0)) domain("jacobi_sup_norm: invalid parameters");
    return std::exp(std::lgamma(q + j + 1.0) - std::lgamma(j + 1.0) - std::lgamma(q + 1.0));
}

double log_h_const(const KappaContext& ctx, int n, int j) {
    if (n < 0 || j < 0 || 2 * j > n) domain("h_const requires 0 <= 2j <= n");
    const double e = 8.0 / ctx.kappa;
    const double ind = (n != 2 * j) ? 2.0 : 1.0;
    return 0.5 * (std::log(ind / kPi) + std::lgamma(j + 1.0) + std::log(n + e) + std::lgamma(n - j + e) -
                  std::lgamma(j + e) - std::lgamma(n - j + 1.0));
}

double h_const(const KappaContext& ctx, int n, int j) { return std::exp(log_h_const(ctx, n, j)); }

}  // namespace sle2g
