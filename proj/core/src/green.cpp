#include "sle2g/green.hpp"

#include <cmath>
#include <stdexcept>

namespace sle2g {

void BoundaryConfig::validate() const {
    if (!(std::isfinite(w1) && std::isfinite(v1) && std::isfinite(w2) && std::isfinite(v2)))
        throw std::domain_error("boundary angles must be finite");
    if (!(w1 > v1 && v1 > w2 && w2 > v2 && v2 > w1 - kTwoPi))
        throw std::domain_error("boundary angles must satisfy w1 > v1 > w2 > v2 > w1 - 2pi");
}

BoundaryConfig BoundaryConfig::symmetric() { return {3 * kPi / 4, kPi / 4, -kPi / 4, -3 * kPi / 4}; }

void ZState::validate() const {
    if (!(z1 > 0 && z1 < kPi && z2 > 0 && z2 < kPi)) throw std::domain_error("ZState coordinates must lie in (0,pi)");
}

double alpha0(const KappaContext& ctx) { return ctx.alpha0; }
double beta0(const KappaContext& ctx) { return ctx.beta0; }

double G_quad(const KappaContext& ctx, const BoundaryConfig& cfg) {
    cfg.validate();
    const double s11 = std::abs(sin2(cfg.w1 - cfg.v1)), s22 = std::abs(sin2(cfg.w2 - cfg.v2));
    const double sww = std::abs(sin2(cfg.w1 - cfg.w2)), svv = std::abs(sin2(cfg.v1 - cfg.v2));
    const double x = std::abs(sin2(cfg.w1 - cfg.v2) * sin2(cfg.v1 - cfg.w2) / (sww * svv));
    return std::pow(s11 * s22, ctx.psi_exponent()) * std::pow(sww * svv, 4.0 / ctx.kappa) /
           hyp_F(ctx, std::min(x, 1.0));
}

double G_u(const KappaContext& ctx, const ZState& z) {
    z.validate();
    return std::exp(log_G_u(ctx, z.z1, z.z2));
}

std::complex<double> DiscAutomorphism::operator()(std::complex<double> z) const {
    return std::polar(1.0, phi) * (z - p) / (1.0 - std::conj(p) * z);
}

std::complex<double> DiscAutomorphism::derivative(std::complex<double> z) const {
    const auto d = 1.0 - std::conj(p) * z;
    return std::polar(1.0, phi) * (1.0 - std::norm(p)) / (d * d);
}

double greens_disc(const KappaContext& ctx, std::complex<double> z0, std::complex<double> a1,
                   std::complex<double> b1, std::complex<double> a2, std::complex<double> b2) {
    if (!(std::abs(z0) < 1.0)) throw std::domain_error("greens_disc: z0 must lie in the open unit disc");
    for (auto p : {a1, b1, a2, b2})
        if (std::abs(std::abs(p) - 1.0) > 1e-12) throw std::domain_error("greens_disc: marked points must lie on the circle");
    // angles measured clockwise from a1 must alternate a1, b1, a2, b2
    auto ang = [&](std::complex<double> p) {
        double t = std::arg(a1 / p);
        if (t < 0) t += kTwoPi;
        return t;
    };
    const double tb1 = ang(b1), ta2 = ang(a2), tb2 = ang(b2);
    const bool cw = tb1 > 0 && tb1 < ta2 && ta2 < tb2 && tb2 < kTwoPi;
    const bool ccw = tb2 > 0 && tb2 < ta2 && ta2 < tb1 && tb1 < kTwoPi;
    if (!(cw || ccw)) throw std::domain_error("greens_disc: a1, a2 must separate b1 from b2");

    const DiscAutomorphism f{z0, 0.0};
    const double fp = 1.0 / (1.0 - std::norm(z0));
    const auto A1 = f(a1), B1 = f(b1), A2 = f(a2), B2 = f(b2);
    const double d11 = std::abs(A1 - B1), d22 = std::abs(A2 - B2);
    const double daa = std::abs(A1 - A2), dbb = std::abs(B1 - B2);
    const double x = std::abs(A1 - B2) * std::abs(A2 - B1) / (daa * dbb);
    const double k = ctx.kappa;
    const double logv = (1.0 - 12.0 / k) * std::log(4.0) + ctx.alpha0 * std::log(fp) +
                        ctx.psi_exponent() * std::log(d11 * d22) + (4.0 / k) * std::log(daa * dbb);
    return std::exp(logv) / hyp_F(ctx, std::min(x, 1.0));
}

double greens_disc(const KappaContext& ctx, std::complex<double> z0, const BoundaryConfig& cfg) {
    cfg.validate();
    return greens_disc(ctx, z0, std::polar(1.0, cfg.w1), std::polar(1.0, cfg.v1), std::polar(1.0, cfg.w2),
                       std::polar(1.0, cfg.v2));
}

}  // namespace sle2g
