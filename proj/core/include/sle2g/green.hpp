#pragma once

#include <complex>

#include "sle2g/specfun.hpp"
#include "sle2g/trig.hpp"
#include "sle2g/types.hpp"

namespace sle2g {

double alpha0(const KappaContext& ctx);
double beta0(const KappaContext& ctx);

double G_quad(const KappaContext& ctx, const BoundaryConfig& cfg);

// log G^u(z1,z2); templated so that generators can differentiate it exactly.
template <class T>
T log_G_u(const KappaContext& ctx, const T& z1, const T& z2) {
    using std::log;
    const T cd = cos2(z1 - z2);
    const T q = cos2(z1) * cos2(z2) / cd;
    return ctx.psi_exponent() * (log(sin2(z1)) + log(sin2(z2))) + (4.0 / ctx.kappa) * log(cd) - log_hyp_F(ctx, q);
}

double G_u(const KappaContext& ctx, const ZState& z);

// Two-curve Green's function in the unit disc. Boundary points
// are given either as unit complex numbers or as angles.
double greens_disc(const KappaContext& ctx, std::complex<double> z0, std::complex<double> a1,
                   std::complex<double> b1, std::complex<double> a2, std::complex<double> b2);
double greens_disc(const KappaContext& ctx, std::complex<double> z0, const BoundaryConfig& cfg);

// Disc automorphism z ↦ e^{iφ}(z − p)/(1 − p̄ z) and its derivative.
struct DiscAutomorphism {
    std::complex<double> p;
    double phi = 0;
    std::complex<double> operator()(std::complex<double> z) const;
    std::complex<double> derivative(std::complex<double> z) const;
};

}  // namespace sle2g
