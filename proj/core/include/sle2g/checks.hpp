#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sle2g/density.hpp"
#include "sle2g/specfun.hpp"

namespace sle2g {

// Outcome of one identity check: the largest measured residual against its tolerance.
struct CheckResult {
    std::string name;
    double residual = 0;
    double tolerance = 0;
    bool passed() const { return residual < tolerance; }
};

// x(1−x)F″ + (8/κ − 2x)F′ − (4/κ)(1−4/κ)F with fourth-order central
// differences, maximized over 200 points of [0, 0.99].
CheckResult check_hyp_ode(const KappaContext& ctx, double tol = 1e-7);
// Relative gap between F(1) from the ODE and the Γ-ratio.
CheckResult check_hyp_at_one(const KappaContext& ctx, double tol = 1e-10);

// max |⟨v_a, v_b⟩_Ψ − δ_ab| over all basis functions of degree ≤ n_max.
CheckResult check_orthonormality(const SpectralBasis& basis, int n_max = 12, double tol = 1e-8);
// max |𝓛v − λ_n v| at random interior points, n ≤ n_max.
CheckResult check_eigenfunctions(const SpectralBasis& basis, int n_max = 10, double tol = 1e-6,
                                 std::uint64_t seed = 1);
// max |∫∫ p_s(a,m)p_t(m,b) dm − p_{s+t}(a,b)| over sample pairs.
CheckResult check_chapman_kolmogorov(const SpectralBasis& basis, double s = 0.5, double t = 0.5,
                                     double tol = 1e-6);
// max |∫∫ p_∞(m)p_t(m,b) dm − p_∞(b)|.
CheckResult check_stationarity(const SpectralBasis& basis, double t = 0.5, double tol = 1e-8);
// max of |∫∫ p̃^Z_∞(m)p̃^Z_t(m,b) dm − e^{−α₀t}p̃^Z_∞(b)| and of
// |G^u 𝓛_Z(1/G^u) − α₀|, the generator identity behind the e^{−α₀t} decay.
CheckResult check_quasi_invariance(const SpectralBasis& basis, double t = 0.5, double tol = 1e-6);

// max drift_residual over random states, both indices and both modes.
CheckResult check_drift_residual(const KappaContext& ctx, int n_states = 1000, double tol = 1e-9,
                                 std::uint64_t seed = 7);
// max |drift_residual_fd| over random states.
CheckResult check_drift_residual_fd(const KappaContext& ctx, int n_states = 20, double tol = 1e-4,
                                    std::uint64_t seed = 11);

// |slope of log survival_P2 over t ∈ [4,8] + α₀|.
CheckResult check_survival_slope(const SpectralBasis& basis, double tol = 1e-4);
// max over t ∈ [4,8] of |ratio − 1|/(C e^{−(2+κ/8)t}) with C calibrated on t ∈ [1,4];
// passes while the ratio stays inside the envelope.
CheckResult check_survival_envelope(const SpectralBasis& basis);

// |greens_disc(0) − G_quad| relative.
CheckResult check_green_origin(const KappaContext& ctx, double tol = 1e-12);
// Relative defect of G(T z0; T·) = |T′(z0)|^{−α₀} G(z0; ·) over sample automorphisms.
CheckResult check_green_mobius(const KappaContext& ctx, double tol = 1e-10);
// Relative spread of G_{a1,b2;a2,b1}(z0)/G_{a1,b1;a2,b2}(z0) over an interior grid.
CheckResult check_green_cross_ratio(const KappaContext& ctx, double tol = 1e-9);

// The suite run by `sle2g check`.
std::vector<CheckResult> run_identity_suite(const KappaContext& ctx, int n_max = 40);

}  // namespace sle2g
