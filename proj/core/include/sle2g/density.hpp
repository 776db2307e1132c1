#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <utility>
#include <vector>

#include "sle2g/autodiff.hpp"
#include "sle2g/quadrature.hpp"
#include "sle2g/specfun.hpp"
#include "sle2g/types.hpp"

namespace sle2g {

// Truncated series value with its truncation certificate.
struct SeriesResult {
    double value = 0;
    int n_used = 0;
    double tail_bound = 0;
    bool converged = false;
};

template <class T>
T jacobi_t(int j, double alpha, double beta, const T& x) {
    if (j == 0) return T(1.0);
    T p0(1.0);
    T p1 = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) * 0.5;
    const double ab = alpha + beta;
    for (int n = 2; n <= j; ++n) {
        const double s = 2.0 * n + ab;
        const double c0 = 2.0 * n * (n + ab) * (s - 2.0);
        const double c2 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * s;
        T p2 = ((s - 1.0) * (s * (s - 2.0) * x + (alpha * alpha - beta * beta)) * p1 - c2 * p0) / c0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

struct SurvivalCache;

// Orthonormal eigenbasis v_{n,j,i} of the generator for the weight
// Ψ = (1 − x² − y²)^{8/κ−1}, truncated at degree n_max.
class SpectralBasis {
public:
    explicit SpectralBasis(const KappaContext& ctx, int n_max = 60);

    const KappaContext& ctx() const { return ctx_; }
    int n_max() const { return n_max_; }
    double alpha() const { return ctx_.psi_exponent(); }
    double h(int n, int j) const { return h_[n][j]; }
    double eigenvalue(int n) const { return ctx_.eigenvalue(n); }

    // Flat index of (n, j, i) among the n+1 functions of degree n.
    static int offset(int n) { return n * (n + 1) / 2; }
    static int slot(int n, int j, int i) { return offset(n) + (i == 1 ? j : n / 2 + 1 + j); }
    static int count(int n_max) { return offset(n_max + 1); }

    template <class T>
    T value(int n, int j, int i, const T& x, const T& y) const {
        const int m = n - 2 * j;
        T re(1.0), im(0.0);
        for (int k = 0; k < m; ++k) {
            T nr = re * x - im * y;
            im = re * y + im * x;
            re = nr;
        }
        const T P = jacobi_t(j, alpha(), static_cast<double>(m), 2.0 * (x * x + y * y) - 1.0);
        return h_[n][j] * P * (i == 1 ? re : im);
    }

    // All basis values of degree ≤ N at (x, y), laid out by slot().
    void eval_all(int N, double x, double y, std::vector<double>& out) const;

    // Right-hand side of the displayed sup-norm formula; an upper bound for
    // sup |v_{n,j,i}| over the closed disc.
    double sup_bound(int n, int j) const;
    // k_n = Σ_j h²_{n,j} P_j^{(α,n−2j)}(1)², the degree-n diagonal kernel at a
    // boundary point; bounds Σ_s v_{n,s}(x,y)² on the disc.
    double kernel_bound(int n) const { return k_[n]; }
    // Σ_{n>N} e^{λ_n t} k_n, the truncation bound for p_t(·,·)/Ψ.
    double tail_bound(int N, double t) const;

    // 𝒵 and the coefficients c_{n,s} = ∫∫ Ψ v_{n,s} J/G^u dz of 1/G^u,
    // computed once on first use.
    const SurvivalCache& survival_cache() const;

private:
    KappaContext ctx_;
    int n_max_;
    std::vector<std::vector<double>> h_;
    std::vector<double> k_;
    std::shared_ptr<SurvivalCache> cache_;
    std::shared_ptr<std::once_flag> cache_once_;
};

struct SurvivalCache {
    double Z = 0;                  // 𝒵 from the tensor tanh–sinh rule
    std::vector<double> coeff;     // c_{n,s} by slot
    int level = 0;                 // tanh–sinh level reached
    double level_change = 0;       // max |Δc| between the last two levels
};

double eigenvalue(const KappaContext& ctx, int n);
double basis_eval(const SpectralBasis& basis, int n, int j, int i, double x, double y);

// 𝓛f by fourth-order central differences of step h.
double generator_apply(const KappaContext& ctx, const std::function<double(double, double)>& f, double x, double y,
                       double h = 1e-3);

// 𝓛f with exact derivatives for functors accepting HyperDual arguments.
template <class F>
double generator_apply_exact(const KappaContext& ctx, F&& f, double x, double y) {
    const HyperDual ax = f(HyperDual(x, 1, 1, 0), HyperDual(y));
    const HyperDual ay = f(HyperDual(x), HyperDual(y, 1, 1, 0));
    const HyperDual axy = f(HyperDual(x, 1, 0, 0), HyperDual(y, 0, 1, 0));
    const double k = ctx.kappa, d = 2.0 + k / 8.0;
    return k / 8.0 * (1 - x * x) * ax.d12 + k / 8.0 * (1 - y * y) * ay.d12 - k / 4.0 * x * y * axy.d12 -
           d * x * ax.d1 - d * y * ay.d1;
}

// Transition density of (X, Y); N is chosen from tail_bound and capped at n_max.
SeriesResult p_t(const SpectralBasis& basis, double x, double y, double xs, double ys, double t, double tol = 1e-13);
// The series truncated at a fixed degree N.
double p_t_truncated(const SpectralBasis& basis, double x, double y, double xs, double ys, double t, int N);

double p_infty(const KappaContext& ctx, double x, double y);
// Same formula for a raw κ > 0, including the endpoint κ = 8.
double p_infty(double kappa, double x, double y);

// Jacobian (sin z1 + sin z2)/4 of (z1, z2) ↦ (X, Y).
double z_jacobian(const ZState& z);

SeriesResult pZ_t(const SpectralBasis& basis, const ZState& from, const ZState& to, double t, double tol = 1e-13);
double pZ_infty(const KappaContext& ctx, const ZState& z);
SeriesResult tilde_pZ_t(const SpectralBasis& basis, const ZState& from, const ZState& to, double t, double tol = 1e-13);

// (Ψ/G^u)·J in z-coordinates; continuous on [0,π]², zero at the corners.
double tilted_weight(const KappaContext& ctx, double z1, double z2);
// pZ_∞/G^u
double pZ_over_Gu(const KappaContext& ctx, const ZState& z);

// 𝒵 by nested adaptive tanh–sinh quadrature.
double Z_constant(const KappaContext& ctx, double tol = 1e-12);
// 𝒵 by a fixed tensor tanh–sinh rule of the given level.
double Z_constant_tensor(const KappaContext& ctx, int level);

double tilde_pZ_infty(const KappaContext& ctx, const ZState& z, double Z);
double tilde_pZ_infty(const SpectralBasis& basis, const ZState& z);

// ℙ₂[T^u > t] from the spectral expansion of 1/G^u.
SeriesResult survival_P2(const SpectralBasis& basis, const ZState& z0, double t, double tol = 1e-13);
// 𝒵 G^u(z0) e^{−α₀ t}
double survival_asymptote(const SpectralBasis& basis, const ZState& z0, double t);

// Polar product rule for ∫∫_D f (1 − x² − y²)^a dx dy: Gauss–Jacobi in r² and the
// trapezoid rule in angle. Exact for f a polynomial of degree ≤ min(4n_r − 2, n_theta − 1).
struct DiscRule {
    std::vector<double> x, y, w;
    std::size_t size() const { return w.size(); }
};
DiscRule disc_rule(double weight_exponent, int n_r, int n_theta);

std::pair<double, double> sample_p_infty(const KappaContext& ctx, std::mt19937_64& rng);
ZState sample_pZ_infty(const KappaContext& ctx, std::mt19937_64& rng);

}  // namespace sle2g
