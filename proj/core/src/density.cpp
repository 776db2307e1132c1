#include "sle2g/density.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "sle2g/green.hpp"
#include "sle2g/timecurve.hpp"
#include "sle2g/trig.hpp"

namespace sle2g {

namespace {

double log_binom_at_one(int j, double alpha) {
    // log P_j^{(α,β)}(1) = log Γ(j+α+1) − log j! − log Γ(α+1)
    return std::lgamma(j + alpha + 1.0) - std::lgamma(j + 1.0) - std::lgamma(alpha + 1.0);
}

double kernel_bound_raw(const KappaContext& ctx, int n) {
    double k = 0;
    const double a = ctx.psi_exponent();
    for (int j = 0; 2 * j <= n; ++j) k += std::exp(2.0 * log_h_const(ctx, n, j) + 2.0 * log_binom_at_one(j, a));
    return k;
}

double psi(double alpha, double x, double y) {
    const double s = 1.0 - x * x - y * y;
    return s > 0 ? std::pow(s, alpha) : (alpha == 0.0 ? 1.0 : 0.0);
}

void check_disc(double x, double y) {
    if (!(x * x + y * y <= 1.0 + 1e-12)) throw std::domain_error("point outside the closed unit disc");
}

std::pair<double, double> xy(const ZState& z) {
    return {std::cos(0.5 * (z.z1 + z.z2)), std::sin(0.5 * (z.z1 - z.z2))};
}

}  // namespace

SpectralBasis::SpectralBasis(const KappaContext& ctx, int n_max) : ctx_(ctx), n_max_(n_max) {
    if (n_max < 0) throw std::domain_error("SpectralBasis: n_max must be nonnegative");
    h_.resize(n_max + 1);
    k_.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        for (int j = 0; 2 * j <= n; ++j) h_[n].push_back(h_const(ctx, n, j));
        k_[n] = kernel_bound_raw(ctx, n);
    }
    cache_ = std::make_shared<SurvivalCache>();
    cache_once_ = std::make_shared<std::once_flag>();
}

void SpectralBasis::eval_all(int N, double x, double y, std::vector<double>& out) const {
    if (N > n_max_) throw std::domain_error("eval_all: degree exceeds n_max");
    out.assign(count(N), 0.0);
    const double a = alpha(), u = 2.0 * (x * x + y * y) - 1.0;
    double re = 1.0, im = 0.0;
    for (int m = 0; m <= N; ++m) {
        const double beta = m, ab = a + beta;
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; m + 2 * j <= N; ++j) {
            double P;
            if (j == 0) {
                P = 1.0;
            } else if (j == 1) {
                p1 = (a + 1.0) + (ab + 2.0) * (u - 1.0) * 0.5;
                P = p1;
            } else {
                const double s = 2.0 * j + ab;
                const double c0 = 2.0 * j * (j + ab) * (s - 2.0);
                const double c2 = 2.0 * (j + a - 1.0) * (j + beta - 1.0) * s;
                const double p2 = ((s - 1.0) * (s * (s - 2.0) * u + a * a - beta * beta) * p1 - c2 * p0) / c0;
                p0 = p1;
                p1 = p2;
                P = p2;
            }
            const int n = m + 2 * j;
            out[slot(n, j, 1)] = h_[n][j] * P * re;
            if (m > 0) out[slot(n, j, 2)] = h_[n][j] * P * im;
        }
        const double nr = re * x - im * y;
        im = re * y + im * x;
        re = nr;
    }
}

double SpectralBasis::sup_bound(int n, int j) const {
    if (j < 0 || 2 * j > n || n > n_max_) throw std::domain_error("sup_bound: index out of range");
    const double a = alpha() + 1.0;
    const double l1 = std::lgamma(a + j) - std::lgamma(j + 1.0) - std::lgamma(a);
    const double l2 = std::lgamma(n - j + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - 2.0 * j + 1.0);
    return h_[n][j] * std::exp(std::max(l1, l2));
}

double SpectralBasis::tail_bound(int N, double t) const {
    double sum = 0;
    for (int n = N + 1; n <= N + 4000; ++n) {
        const double e = ctx_.eigenvalue(n) * t;
        if (e < -745.0) break;
        const double k = n <= n_max_ ? k_[n] : kernel_bound_raw(ctx_, n);
        const double term = std::exp(e) * k;
        sum += term;
        if (n > N + 4 && term < 1e-20 * sum) break;
    }
    return sum;
}

const SurvivalCache& SpectralBasis::survival_cache() const {
    std::call_once(*cache_once_, [this] {
        const int total = count(n_max_);
        std::vector<double> prev, cur(total), v;
        double Z = 0;
        SurvivalCache& c = *cache_;
        for (int level = 4; level <= 8; ++level) {
            const QuadRule r = tanh_sinh_rule(0.0, kPi, level);
            std::fill(cur.begin(), cur.end(), 0.0);
            double zsum = 0;
            for (std::size_t a = 0; a < r.size(); ++a) {
                for (std::size_t b = 0; b < r.size(); ++b) {
                    const double g = tilted_weight(ctx_, r.nodes[a], r.nodes[b]);
                    if (g == 0.0) continue;
                    const double w = r.weights[a] * r.weights[b] * g;
                    zsum += w;
                    const auto [x, y] = xy({r.nodes[a], r.nodes[b]});
                    eval_all(n_max_, x, y, v);
                    for (int s = 0; s < total; ++s) cur[s] += w * v[s];
                }
            }
            Z = 8.0 / (kPi * ctx_.kappa) * zsum;
            c.level = level;
            if (!prev.empty()) {
                double d = 0, mx = 0;
                for (int s = 0; s < total; ++s) {
                    d = std::max(d, std::abs(cur[s] - prev[s]));
                    mx = std::max(mx, std::abs(cur[s]));
                }
                c.level_change = d;
                if (d <= 1e-12 * std::max(1.0, mx)) break;
            }
            prev = cur;
        }
        c.coeff = cur;
        c.Z = Z;
    });
    return *cache_;
}

double eigenvalue(const KappaContext& ctx, int n) {
    if (n < 0) throw std::domain_error("eigenvalue: n must be nonnegative");
    return ctx.eigenvalue(n);
}

double basis_eval(const SpectralBasis& basis, int n, int j, int i, double x, double y) {
    if (n < 0 || n > basis.n_max() || j < 0 || (i != 1 && i != 2) || (i == 1 && 2 * j > n) ||
        (i == 2 && 2 * j > n - 1))
        throw std::domain_error("basis_eval: index out of range");
    check_disc(x, y);
    return basis.value(n, j, i, x, y);
}

double generator_apply(const KappaContext& ctx, const std::function<double(double, double)>& f, double x, double y,
                       double h) {
    static constexpr int off[4] = {-2, -1, 1, 2};
    static constexpr double c1[4] = {1.0, -8.0, 8.0, -1.0};
    const double f0 = f(x, y);
    const double fxp = f(x + h, y), fxm = f(x - h, y), fxp2 = f(x + 2 * h, y), fxm2 = f(x - 2 * h, y);
    const double fyp = f(x, y + h), fym = f(x, y - h), fyp2 = f(x, y + 2 * h), fym2 = f(x, y - 2 * h);
    const double fx = (fxm2 - 8 * fxm + 8 * fxp - fxp2) / (12 * h);
    const double fy = (fym2 - 8 * fym + 8 * fyp - fyp2) / (12 * h);
    const double fxx = (-fxp2 + 16 * fxp - 30 * f0 + 16 * fxm - fxm2) / (12 * h * h);
    const double fyy = (-fyp2 + 16 * fyp - 30 * f0 + 16 * fym - fym2) / (12 * h * h);
    double fxy = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) fxy += c1[a] * c1[b] * f(x + off[a] * h, y + off[b] * h);
    fxy /= 144 * h * h;
    const double k = ctx.kappa, d = 2.0 + k / 8.0;
    return k / 8.0 * (1 - x * x) * fxx + k / 8.0 * (1 - y * y) * fyy - k / 4.0 * x * y * fxy - d * x * fx - d * y * fy;
}

double p_t_truncated(const SpectralBasis& basis, double x, double y, double xs, double ys, double t, int N) {
    check_disc(x, y);
    check_disc(xs, ys);
    std::vector<double> a, b;
    basis.eval_all(N, x, y, a);
    basis.eval_all(N, xs, ys, b);
    double sum = 0;
    for (int n = N; n >= 0; --n) {
        double s = 0;
        for (int k = SpectralBasis::offset(n); k < SpectralBasis::offset(n + 1); ++k) s += a[k] * b[k];
        sum += std::exp(basis.eigenvalue(n) * t) * s;
    }
    return psi(basis.alpha(), xs, ys) * sum;
}

SeriesResult p_t(const SpectralBasis& basis, double x, double y, double xs, double ys, double t, double tol) {
    if (!(t > 0)) throw std::domain_error("p_t: t must be positive");
    SeriesResult r;
    int N = 0;
    double tail = basis.tail_bound(0, t);
    while (N < basis.n_max() && tail > tol) tail = basis.tail_bound(++N, t);
    const double ps = psi(basis.alpha(), xs, ys);
    r.value = p_t_truncated(basis, x, y, xs, ys, t, N);
    r.n_used = N;
    r.tail_bound = ps * tail;
    r.converged = r.tail_bound <= tol;
    return r;
}

double p_infty(double kappa, double x, double y) {
    if (!(kappa > 0)) throw std::domain_error("p_infty: kappa must be positive");
    check_disc(x, y);
    return 8.0 / (kPi * kappa) * psi(8.0 / kappa - 1.0, x, y);
}

double p_infty(const KappaContext& ctx, double x, double y) { return p_infty(ctx.kappa, x, y); }

double z_jacobian(const ZState& z) { return 0.25 * (std::sin(z.z1) + std::sin(z.z2)); }

SeriesResult pZ_t(const SpectralBasis& basis, const ZState& from, const ZState& to, double t, double tol) {
    from.validate();
    to.validate();
    const auto [x, y] = xy(from);
    const auto [xs, ys] = xy(to);
    const double J = z_jacobian(to);
    SeriesResult r = p_t(basis, x, y, xs, ys, t, tol / J);
    r.value *= J;
    r.tail_bound *= J;
    return r;
}

double pZ_infty(const KappaContext& ctx, const ZState& z) {
    z.validate();
    const auto [x, y] = xy(z);
    return p_infty(ctx, x, y) * z_jacobian(z);
}

SeriesResult tilde_pZ_t(const SpectralBasis& basis, const ZState& from, const ZState& to, double t, double tol) {
    const auto& ctx = basis.ctx();
    const double scale =
        std::exp(-ctx.alpha0 * t + log_G_u(ctx, from.z1, from.z2) - log_G_u(ctx, to.z1, to.z2));
    SeriesResult r = pZ_t(basis, from, to, t, tol / scale);
    r.value *= scale;
    r.tail_bound *= scale;
    return r;
}

double tilted_weight(const KappaContext& ctx, double z1, double z2) {
    const double c1 = std::cos(0.5 * z1), c2 = std::cos(0.5 * z2), cd = std::cos(0.5 * (z1 - z2));
    const double J = 0.25 * (std::sin(z1) + std::sin(z2));
    if (!(c1 > 0 && c2 > 0 && cd > 0 && J > 0)) return 0.0;
    const double q = std::min(1.0, c1 * c2 / cd);
    return std::exp(ctx.psi_exponent() * std::log(4.0 * c1 * c2) - (4.0 / ctx.kappa) * std::log(cd) +
                    std::log(hyp_F(ctx, q)) + std::log(J));
}

double pZ_over_Gu(const KappaContext& ctx, const ZState& z) {
    return 8.0 / (kPi * ctx.kappa) * tilted_weight(ctx, z.z1, z.z2);
}

double Z_constant(const KappaContext& ctx, double tol) {
    boost::math::quadrature::tanh_sinh<double> outer, inner;
    auto f = [&](double z1) {
        return inner.integrate([&](double z2) { return tilted_weight(ctx, z1, z2); }, 0.0, kPi, tol);
    };
    return 8.0 / (kPi * ctx.kappa) * outer.integrate(f, 0.0, kPi, tol);
}

double Z_constant_tensor(const KappaContext& ctx, int level) {
    const QuadRule r = tanh_sinh_rule(0.0, kPi, level);
    double s = 0;
    for (std::size_t a = 0; a < r.size(); ++a)
        for (std::size_t b = 0; b < r.size(); ++b)
            s += r.weights[a] * r.weights[b] * tilted_weight(ctx, r.nodes[a], r.nodes[b]);
    return 8.0 / (kPi * ctx.kappa) * s;
}

double tilde_pZ_infty(const KappaContext& ctx, const ZState& z, double Z) {
    if (!(Z > 0)) throw std::domain_error("tilde_pZ_infty: normalization must be positive");
    return pZ_over_Gu(ctx, z) / Z;
}

double tilde_pZ_infty(const SpectralBasis& basis, const ZState& z) {
    return tilde_pZ_infty(basis.ctx(), z, basis.survival_cache().Z);
}

SeriesResult survival_P2(const SpectralBasis& basis, const ZState& z0, double t, double tol) {
    z0.validate();
    if (t < 0) throw std::domain_error("survival_P2: t must be nonnegative");
    SeriesResult r;
    if (t == 0) {
        r.value = 1.0;
        r.converged = true;
        return r;
    }
    const auto& ctx = basis.ctx();
    const auto& c = basis.survival_cache();
    const int N = basis.n_max();
    const auto [x, y] = xy(z0);
    std::vector<double> v;
    basis.eval_all(N, x, y, v);
    const double pre = std::exp(-ctx.alpha0 * t + log_G_u(ctx, z0.z1, z0.z2));
    std::vector<double> term(N + 1), bound(N + 1);
    double last_norm = 0;
    for (int n = 0; n <= N; ++n) {
        double s = 0, vn = 0, cn = 0;
        for (int k = SpectralBasis::offset(n); k < SpectralBasis::offset(n + 1); ++k) {
            s += v[k] * c.coeff[k];
            vn += v[k] * v[k];
            cn += c.coeff[k] * c.coeff[k];
        }
        const double e = std::exp(ctx.eigenvalue(n) * t);
        term[n] = pre * e * s;
        bound[n] = pre * e * std::sqrt(vn * cn);
        last_norm = std::sqrt(cn);
    }
    // beyond n_max: Cauchy–Schwarz with the kernel bound and the last coefficient norm
    double beyond = 0;
    for (int n = N + 1; n <= N + 200; ++n) {
        const double e = ctx.eigenvalue(n) * t;
        if (e < -745.0) break;
        beyond += pre * std::exp(e) * std::sqrt(kernel_bound_raw(ctx, n)) * last_norm;
    }
    std::vector<double> suffix(N + 2, beyond);
    for (int n = N; n >= 0; --n) suffix[n] = suffix[n + 1] + bound[n];
    int used = 0;
    while (used < N && suffix[used + 1] > tol) ++used;
    double sum = 0;
    for (int n = used; n >= 0; --n) sum += term[n];
    r.value = sum;
    r.n_used = used;
    r.tail_bound = suffix[used + 1];
    r.converged = r.tail_bound <= tol;
    return r;
}

double survival_asymptote(const SpectralBasis& basis, const ZState& z0, double t) {
    const auto& ctx = basis.ctx();
    return basis.survival_cache().Z * G_u(ctx, z0) * std::exp(-ctx.alpha0 * t);
}

DiscRule disc_rule(double a, int n_r, int n_theta) {
    if (n_r < 1 || n_theta < 1) throw std::domain_error("disc_rule: node counts must be positive");
    const QuadRule g = gauss_jacobi(n_r, a, 0.0);
    DiscRule d;
    const double scale = std::pow(2.0, -a) * 0.25 * kTwoPi / n_theta;
    for (int i = 0; i < n_r; ++i) {
        const double r = std::sqrt(0.5 * (1.0 + g.nodes[i]));
        for (int k = 0; k < n_theta; ++k) {
            const double th = kTwoPi * (k + 0.5) / n_theta;
            d.x.push_back(r * std::cos(th));
            d.y.push_back(r * std::sin(th));
            d.w.push_back(g.weights[i] * scale);
        }
    }
    return d;
}

std::pair<double, double> sample_p_infty(const KappaContext& ctx, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double a1 = ctx.psi_exponent() + 1.0;
    double s;
    do s = 1.0 - std::pow(U(rng), 1.0 / a1);
    while (!(s < 1.0));
    const double r = std::sqrt(s), th = kTwoPi * U(rng);
    return {r * std::cos(th), r * std::sin(th)};
}

ZState sample_pZ_infty(const KappaContext& ctx, std::mt19937_64& rng) {
    const auto [x, y] = sample_p_infty(ctx, rng);
    return z_of_xy(x, y);
}

}  // namespace sle2g
