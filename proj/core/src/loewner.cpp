#include "sle2g/loewner.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sle2g/trig.hpp"

namespace sle2g {

namespace {

// The map z ↦ the root in the closed disc of Q g² + (2Q − 1) g + Q = 0 with
// Q = scale · z/(1+z)², i.e. K(g) = scale · K(z) for K(z) = z/(1+z)².
inline cplx koebe_solve(cplx zr, double scale) {
    const cplx d = 1.0 + zr;
    const cplx q = scale * zr / (d * d);
    const cplx a = 1.0 - 2.0 * q;
    cplx s = std::sqrt(1.0 - 4.0 * q);
    if ((a * std::conj(s)).real() < 0) s = -s;
    return 2.0 * q / (a + s);
}

inline double wrap_positive(double x, double& shift) {
    const double k = std::floor(x / kTwoPi);
    shift = k * kTwoPi;
    return x - shift;
}

double driver_distance(cplx g, double w) { return std::abs(g - std::polar(1.0, w)); }

std::vector<SlitStep> build_steps(const DrivingPath& path, double t, double micro_dt) {
    path.validate();
    if (!(micro_dt > 0)) throw std::domain_error("micro step must be positive");
    if (t < 0) throw std::domain_error("flow time must be nonnegative");
    const double total = path.total_capacity();
    if (t > total * (1 + 1e-12) + 1e-14) throw std::domain_error("flow time exceeds path capacity");
    std::vector<SlitStep> steps;
    double remaining = t;
    for (std::size_t i = 0; i + 1 < path.times.size() && remaining > 0; ++i) {
        const double ci = path.speed[i] * (path.times[i + 1] - path.times[i]);
        if (ci <= 0) continue;
        const double frac = std::min(1.0, remaining / ci);
        const double cap = frac * ci;
        const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(cap / micro_dt - 1e-9)));
        const double w0 = path.values[i], w1 = path.values[i + 1];
        for (std::size_t k = 0; k < n; ++k) {
            const double s = (k + 0.5) / n * frac;
            steps.push_back({w0 + (w1 - w0) * s, cap / n});
        }
        remaining -= cap;
    }
    return steps;
}

}  // namespace

DrivingPath DrivingPath::constant(double w, double total, double dt) {
    if (!(total >= 0 && dt > 0)) throw std::domain_error("constant path needs total >= 0 and dt > 0");
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(total / dt - 1e-9)));
    DrivingPath p;
    for (std::size_t i = 0; i <= n; ++i) {
        p.times.push_back(total * static_cast<double>(i) / n);
        p.values.push_back(w);
    }
    p.speed.assign(n, 1.0);
    return p;
}

DrivingPath DrivingPath::from_samples(std::vector<double> times, std::vector<double> values) {
    DrivingPath p;
    p.times = std::move(times);
    p.values = std::move(values);
    p.speed.assign(p.times.empty() ? 0 : p.times.size() - 1, 1.0);
    p.validate();
    return p;
}

void DrivingPath::validate() const {
    if (times.empty()) throw std::domain_error("driving path is empty");
    if (values.size() != times.size()) throw std::domain_error("driving path: times/values size mismatch");
    if (speed.size() + 1 != times.size()) throw std::domain_error("driving path: speed must have one entry per interval");
    if (times.front() != 0.0) throw std::domain_error("driving path must start at time 0");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || !std::isfinite(values[i])) throw std::domain_error("driving path: non-finite sample");
        if (i > 0 && !(times[i] > times[i - 1])) throw std::domain_error("driving path: times must increase strictly");
    }
    for (double s : speed)
        if (!(s >= 0) || !std::isfinite(s)) throw std::domain_error("driving path: speed must be nonnegative");
}

double DrivingPath::total_capacity() const {
    double c = 0;
    for (std::size_t i = 0; i < speed.size(); ++i) c += speed[i] * (times[i + 1] - times[i]);
    return c;
}

DrivingPath DrivingPath::shifted(double s) const {
    validate();
    if (s < 0 || s > total_capacity() * (1 + 1e-12)) throw std::domain_error("shift outside path capacity");
    double acc = 0;
    std::size_t i = 0;
    double t0 = 0, w0 = values.front();
    for (; i < speed.size(); ++i) {
        const double ci = speed[i] * (times[i + 1] - times[i]);
        if (acc + ci >= s && ci > 0) {
            const double f = std::clamp((s - acc) / ci, 0.0, 1.0);
            t0 = times[i] + f * (times[i + 1] - times[i]);
            w0 = values[i] + f * (values[i + 1] - values[i]);
            break;
        }
        acc += ci;
    }
    DrivingPath out;
    if (i == speed.size()) {
        out.times = {0.0};
        out.values = {values.back()};
        return out;
    }
    out.times.push_back(0.0);
    out.values.push_back(w0);
    for (std::size_t k = i + 1; k < times.size(); ++k) {
        if (times[k] - t0 <= 1e-15 * std::max(1.0, times[k])) continue;
        out.times.push_back(times[k] - t0);
        out.values.push_back(values[k]);
        out.speed.push_back(speed[k - 1]);
    }
    return out;
}

void DrivingPath::write_csv(std::ostream& os) const {
    os << "t,w,speed\n";
    os.precision(17);
    for (std::size_t i = 0; i < times.size(); ++i)
        os << times[i] << ',' << values[i] << ',' << (i < speed.size() ? speed[i] : 0.0) << '\n';
}

DrivingPath DrivingPath::read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("t,w", 0) != 0) throw std::runtime_error("driving path CSV: missing header t,w,speed");
    DrivingPath p;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b, c;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        std::getline(ss, c, ',');
        p.times.push_back(std::stod(a));
        p.values.push_back(std::stod(b));
        p.speed.push_back(c.empty() ? 1.0 : std::stod(c));
    }
    if (!p.speed.empty()) p.speed.pop_back();
    p.validate();
    return p;
}

std::vector<SlitStep> slit_steps(const DrivingPath& path, double t, double micro_dt) {
    return build_steps(path, t, micro_dt);
}

double slit_tip_modulus(double delta) {
    // x = (1 − s)/(1 + s) with s² = 1 − e^{−δ}
    const double s = std::sqrt(-std::expm1(-delta));
    return (1.0 - s) / (1.0 + s);
}

cplx radial_slit_forward(cplx z, double w, double delta) {
    if (std::abs(std::abs(z) - 1.0) < 1e-14) {
        const double th = covering_slit_forward(std::arg(z), w, delta);
        return std::polar(1.0, th);
    }
    const cplx u = std::polar(1.0, w);
    return koebe_solve(z * std::conj(u), std::exp(delta)) * u;
}

cplx radial_slit_inverse(cplx h, double w, double delta) {
    const cplx u = std::polar(1.0, w);
    return koebe_solve(h * std::conj(u), std::exp(-delta)) * u;
}

double covering_slit_forward(double v, double w, double delta) {
    double shift;
    const double th = wrap_positive(v - w, shift);
    return w + shift + 2.0 * std::acos(std::exp(-0.5 * delta) * std::cos(0.5 * th));
}

cplx covering_slit_forward(cplx zeta, double w, double delta) {
    if (zeta.imag() == 0.0) return covering_slit_forward(zeta.real(), w, delta);
    double shift;
    const double re = wrap_positive(zeta.real() - w, shift);
    cplx a = std::acos(std::cos(0.5 * cplx(re, zeta.imag())) * std::exp(-0.5 * delta));
    if (a.imag() < 0) a = std::conj(a);
    return w + shift + 2.0 * a;
}

FlowResult radial_flow(const DrivingPath& path, const std::vector<cplx>& points, double t, double micro_dt) {
    const auto steps = build_steps(path, t, micro_dt);
    for (auto z : points)
        if (std::abs(z) > 1.0 + 1e-12) throw std::domain_error("radial_flow: points must lie in the closed unit disc");
    FlowResult res;
    res.capacity = t;
    const double tol = 10.0 * micro_dt;
    for (auto z : points) {
        FlowPoint fp{z, false, 0.0};
        if (driver_distance(z, path.values.front()) < tol) {
            fp.swallowed = true;
        } else {
            double cap = 0;
            for (const auto& s : steps) {
                fp.image = radial_slit_forward(fp.image, s.w, s.delta);
                cap += s.delta;
                if (driver_distance(fp.image, s.w) < tol) {
                    fp.swallowed = true;
                    fp.exit_capacity = cap;
                    break;
                }
            }
        }
        res.points.push_back(fp);
    }
    return res;
}

FlowResult covering_flow(const DrivingPath& path, const std::vector<cplx>& points, double t, double micro_dt) {
    const auto steps = build_steps(path, t, micro_dt);
    for (auto z : points)
        if (z.imag() < 0) throw std::domain_error("covering_flow: points must lie in the closed upper half-plane");
    FlowResult res;
    res.capacity = t;
    const double tol = 10.0 * micro_dt;
    auto near = [&](cplx g, double w) { return driver_distance(std::exp(cplx(0, 1) * g), w) < tol; };
    for (auto z : points) {
        FlowPoint fp{z, false, 0.0};
        if (near(z, path.values.front())) {
            fp.swallowed = true;
        } else {
            double cap = 0;
            for (const auto& s : steps) {
                fp.image = covering_slit_forward(fp.image, s.w, s.delta);
                cap += s.delta;
                if (near(fp.image, s.w)) {
                    fp.swallowed = true;
                    fp.exit_capacity = cap;
                    break;
                }
            }
        }
        res.points.push_back(fp);
    }
    return res;
}

FlowResult chordal_flow(const DrivingPath& path, const std::vector<cplx>& points, double t, double micro_dt) {
    const auto steps = build_steps(path, t, micro_dt);
    for (auto z : points)
        if (z.imag() < 0) throw std::domain_error("chordal_flow: points must lie in the closed upper half-plane");
    FlowResult res;
    res.capacity = t;
    const double tol = 10.0 * micro_dt;
    for (auto z : points) {
        FlowPoint fp{z, false, 0.0};
        if (std::abs(z - path.values.front()) < tol) {
            fp.swallowed = true;
        } else {
            double cap = 0;
            for (const auto& s : steps) {
                const cplx d = fp.image - s.w;
                cplx r = std::sqrt(d * d + 4.0 * s.delta);
                if (r.imag() < 0 || (r.imag() == 0 && (r.real() > 0) != (d.real() > 0))) r = -r;
                fp.image = s.w + r;
                cap += s.delta;
                if (std::abs(fp.image - s.w) < tol) {
                    fp.swallowed = true;
                    fp.exit_capacity = cap;
                    break;
                }
            }
        }
        res.points.push_back(fp);
    }
    return res;
}

cplx tip_position(const DrivingPath& path, double t, double micro_dt) {
    const auto steps = build_steps(path, t, micro_dt);
    if (steps.empty()) return std::polar(1.0, path.values.front());
    RadialTrace tr;
    for (const auto& s : steps) tr.push(s.w, s.delta);
    return tr.tip(tr.size());
}

double min_distance_to_origin(const DrivingPath& path, double t, double micro_dt) {
    const auto steps = build_steps(path, t, micro_dt);
    if (steps.empty()) return 1.0;
    RadialTrace tr;
    for (const auto& s : steps) tr.push(s.w, s.delta);
    std::vector<std::size_t> ns(tr.size());
    for (std::size_t i = 0; i < ns.size(); ++i) ns[i] = i + 1;
    std::vector<cplx> tips;
    tr.tips(ns, tips);
    double m = 1.0;
    for (auto z : tips) m = std::min(m, std::abs(z));
    return m;
}

void RadialTrace::push(double w, double delta) {
    w_.push_back(w);
    cw_.push_back(std::cos(w));
    sw_.push_back(std::sin(w));
    e_.push_back(std::exp(-delta));
    tipx_.push_back(slit_tip_modulus(delta));
    cap_.push_back(cap_.back() + delta);
}

void RadialTrace::truncate(std::size_t n) {
    if (n >= size()) return;
    w_.resize(n);
    cw_.resize(n);
    sw_.resize(n);
    e_.resize(n);
    tipx_.resize(n);
    cap_.resize(n + 1);
}

namespace {

// One inverse slit step in real arithmetic.
inline void inverse_step(double& x, double& y, double c, double s, double e) {
    // h_rel = h·conj(u)
    const double hx = x * c + y * s, hy = y * c - x * s;
    // q = e·h_rel/(1 + h_rel)²
    const double ax = 1.0 + hx, ay = hy;
    const double dx = ax * ax - ay * ay, dy = 2.0 * ax * ay;
    const double dn = dx * dx + dy * dy;
    const double qx = e * (hx * dx + hy * dy) / dn, qy = e * (hy * dx - hx * dy) / dn;
    // s = √(1 − 4q), sign chosen so that |1 − 2q + s| is maximal
    const double rx = 1.0 - 4.0 * qx, ry = -4.0 * qy;
    const double m = std::sqrt(rx * rx + ry * ry);
    double sx = std::sqrt(0.5 * (m + rx));
    double sy = std::copysign(std::sqrt(0.5 * (m - rx)), ry);
    const double Ax = 1.0 - 2.0 * qx, Ay = -2.0 * qy;
    if (Ax * sx + Ay * sy < 0) {
        sx = -sx;
        sy = -sy;
    }
    const double Dx = Ax + sx, Dy = Ay + sy;
    const double Dn = Dx * Dx + Dy * Dy;
    const double zx = 2.0 * (qx * Dx + qy * Dy) / Dn, zy = 2.0 * (qy * Dx - qx * Dy) / Dn;
    x = zx * c - zy * s;
    y = zx * s + zy * c;
}

}  // namespace

cplx RadialTrace::pullback(cplx h, std::size_t n) const {
    double x = h.real(), y = h.imag();
    for (std::size_t k = n; k-- > 0;) inverse_step(x, y, cw_[k], sw_[k], e_[k]);
    return {x, y};
}

cplx RadialTrace::tip(std::size_t n) const {
    if (n == 0 || n > size()) throw std::out_of_range("RadialTrace::tip: step count out of range");
    double x = tipx_[n - 1] * cw_[n - 1], y = tipx_[n - 1] * sw_[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) inverse_step(x, y, cw_[k], sw_[k], e_[k]);
    return {x, y};
}

void RadialTrace::tips(const std::vector<std::size_t>& ns, std::vector<cplx>& out) const {
    tips_through(ns, nullptr, 0, out);
}

void RadialTrace::tips_through(const std::vector<std::size_t>& ns, const RadialTrace* base, std::size_t base_n,
                               std::vector<cplx>& out) const {
    const std::size_t m = ns.size();
    out.assign(m, cplx{});
    if (m == 0) return;
    for (std::size_t i = 0; i < m; ++i)
        if (ns[i] == 0 || ns[i] > size() || (i > 0 && ns[i] <= ns[i - 1]))
            throw std::out_of_range("RadialTrace::tips: counts must be increasing and within the trace");
    std::vector<double> xs(m), ys(m);
    // points are activated from the largest count downwards; slot i holds ns[i]
    std::size_t next = m;
    for (std::size_t k = ns.back(); k-- > 0;) {
        for (std::size_t i = next; i < m; ++i) inverse_step(xs[i], ys[i], cw_[k], sw_[k], e_[k]);
        while (next > 0 && ns[next - 1] == k + 1) {
            --next;
            xs[next] = tipx_[k] * cw_[k];
            ys[next] = tipx_[k] * sw_[k];
        }
    }
    if (base)
        for (std::size_t k = base_n; k-- > 0;)
            for (std::size_t i = 0; i < m; ++i) inverse_step(xs[i], ys[i], base->cw_[k], base->sw_[k], base->e_[k]);
    for (std::size_t i = 0; i < m; ++i) out[i] = {xs[i], ys[i]};
}

}  // namespace sle2g
