#include "sle2g/hsle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sle2g/trig.hpp"

namespace sle2g {

namespace {

double drift_unchecked(const KappaContext& ctx, const HsleMarks& m) {
    double R = sin2(m.w0 - m.v1) * sin2(m.v2 - m.winf) / (sin2(m.w0 - m.v2) * sin2(m.v1 - m.winf));
    R = std::clamp(R, 0.0, std::nextafter(1.0, 0.0));
    return 0.5 * (ctx.kappa - 6.0) * cot2(m.w0 - m.winf) +
           0.5 * (cot2(m.w0 - m.v1) - cot2(m.w0 - m.v2)) * hyp_tilde_G(ctx, R);
}

bool ordered(const HsleMarks& m) {
    return (m.w0 > m.v1 && m.v1 > m.v2 && m.v2 > m.winf && m.winf > m.w0 - kTwoPi) ||
           (m.w0 < m.v1 && m.v1 < m.v2 && m.v2 < m.winf && m.winf < m.w0 + kTwoPi);
}

}  // namespace

void HsleMarks::validate() const {
    if (!std::isfinite(w0) || !std::isfinite(v1) || !std::isfinite(v2) || !std::isfinite(winf) || !ordered(*this))
        throw std::domain_error("hSLE marks must satisfy w0 > v1 > v2 > winf > w0 - 2pi or the reverse");
}

double HsleMarks::gap() const { return std::min(std::abs(v1 - w0), kTwoPi - std::abs(winf - w0)); }

double HsleMarks::min_separation() const {
    return std::min({gap(), std::abs(v2 - v1), std::abs(winf - v2)});
}

double hsle_drift(const KappaContext& ctx, double w0, double winf, double v1, double v2) {
    const HsleMarks m{w0, v1, v2, winf};
    m.validate();
    return drift_unchecked(ctx, m);
}

HsleMarks hsle_marks(const BoundaryConfig& cfg, int j) {
    cfg.validate();
    if (j == 1) return {cfg.w1, cfg.v2 + kTwoPi, cfg.w2 + kTwoPi, cfg.v1 + kTwoPi};
    if (j == 2) return {cfg.w2, cfg.v1, cfg.w1, cfg.v2 + kTwoPi};
    throw std::domain_error("hsle_marks: curve index must be 1 or 2");
}

HsleChain::HsleChain(const KappaContext& ctx, const HsleMarks& marks, double dt, std::uint64_t seed,
                     double collision_gap)
    : ctx_(&ctx), m_(marks), dt_(dt), tol_(collision_gap), rng_(seed) {
    if (!(dt > 0)) throw std::domain_error("HsleChain: dt must be positive");
    if (!(collision_gap > 0)) throw std::domain_error("HsleChain: collision gap must be positive");
    m_.validate();
}

std::size_t HsleChain::add_companion(double v) {
    extra_.push_back(v);
    return extra_.size() - 1;
}

bool HsleChain::step() {
    if (dead_) return false;
    const double g = m_.gap();
    const double k = ctx_->kappa;
    const double h = std::min(dt_, g * g / (16.0 * k));
    const double cap = capacity();
    if (!(g > tol_) || cap + h == cap) {
        dead_ = true;
        return false;
    }
    drift_ = drift_unchecked(*ctx_, m_);
    const double w = m_.w0;
    trace_.push(w, h);
    m_.v1 = covering_slit_forward(m_.v1, w, h);
    m_.v2 = covering_slit_forward(m_.v2, w, h);
    m_.winf = covering_slit_forward(m_.winf, w, h);
    for (double& v : extra_) v = covering_slit_forward(v, w, h);
    m_.w0 = w + drift_ * h + std::sqrt(k * h) * normal_(rng_);
    if (!ordered(m_)) dead_ = true;
    return true;
}

HsleRun simulate_hsle(const KappaContext& ctx, const BoundaryConfig& cfg, int j, double dt, std::uint64_t seed,
                      const HsleStop& stop) {
    if (!(stop.value > 0)) throw std::domain_error("simulate_hsle: stop value must be positive");
    HsleChain chain(ctx, hsle_marks(cfg, j), dt, seed);
    HsleRun run;
    std::vector<double> times{0.0}, values{chain.marks().w0};
    auto record = [&] {
        run.v1.push_back(chain.marks().v1);
        run.v2.push_back(chain.marks().v2);
        run.winf.push_back(chain.marks().winf);
    };
    record();
    const bool by_radius = stop.kind == HsleStop::radius;
    if (by_radius && stop.value >= 1.0) run.reached = true;
    const double window = by_radius ? -std::log(4.0 * stop.value) : 0.0;
    while (!run.reached && !chain.terminated()) {
        if (!chain.step()) break;
        run.drift.push_back(chain.last_drift());
        times.push_back(chain.capacity());
        values.push_back(chain.marks().w0);
        record();
        const double cap = chain.capacity();
        if (by_radius) {
            if (cap >= window) {
                run.min_distance = std::min(run.min_distance, std::abs(chain.trace().tip(chain.steps())));
                if (run.min_distance < stop.value || std::exp(-cap) <= stop.value) run.reached = true;
            }
        } else if (cap >= stop.value) {
            run.reached = true;
        }
    }
    run.terminated = chain.terminated() && !run.reached;
    run.path = DrivingPath::from_samples(std::move(times), std::move(values));
    return run;
}

}  // namespace sle2g
