#include "sle2g/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sle2g/green.hpp"
#include "sle2g/trig.hpp"

namespace sle2g {

namespace {

template <class F>
void parallel_for(std::uint64_t n, unsigned threads, F&& f) {
    const unsigned T = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(n, 1))));
    auto run = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) f(i);
    };
    if (T == 1) {
        run(0, n);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < T; ++k) pool.emplace_back(run, n * k / T, n * (k + 1) / T);
    for (auto& th : pool) th.join();
}

void check_radii(const std::vector<double>& r_list) {
    if (r_list.empty()) throw std::domain_error("radius list must be nonempty");
    for (double r : r_list)
        if (!(r > 0) || !std::isfinite(r)) throw std::domain_error("radii must be positive and finite");
}

void check_dt(double dt) {
    if (!(dt > 0) || !std::isfinite(dt)) throw std::domain_error("dt must be positive");
}

void add_flag(std::string& flags, const std::string& f) {
    if (!flags.empty()) flags += ';';
    flags += f;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

bool ordered_marks(const HsleMarks& m) {
    try {
        m.validate();
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

// State of η₁ at the moment it was stopped, seen from the second curve.
struct FirstCurveSnapshot {
    std::size_t n = 0;
    double capacity = 0;
    HsleMarks second;  // marks of the conditional hSLE for η₂
};

FirstCurveSnapshot snapshot(const HsleChain& c1) {
    const auto& m = c1.marks();
    FirstCurveSnapshot s;
    s.n = c1.steps();
    s.capacity = c1.capacity();
    s.second = {m.v2 - kTwoPi, m.winf - kTwoPi, c1.trace().driver(s.n - 1), m.v1};
    return s;
}

std::uint64_t second_seed(std::uint64_t master, std::uint64_t index) {
    return path_seed(path_seed(master, index), 1);
}

}  // namespace

const char* EstimateRecord::csv_header() { return "kappa,method,r_or_t,estimate,stderr,ess,n_paths,dt,seed,flags"; }

void EstimateRecord::write_csv_row(std::ostream& os) const {
    const auto p = os.precision(17);
    os << kappa << ',' << method << ',' << r_or_t << ',' << estimate << ',' << std_error << ',' << ess << ','
       << n_paths << ',' << dt << ',' << seed << ',' << flags << '\n';
    os.precision(p);
}

bool EstimateRecord::has_flag(const std::string& f) const {
    std::stringstream ss(flags);
    std::string tok;
    while (std::getline(ss, tok, ';'))
        if (tok == f || tok.rfind(f + "=", 0) == 0) return true;
    return false;
}

void write_records_csv(std::ostream& os, const std::vector<EstimateRecord>& recs) {
    os << EstimateRecord::csv_header() << '\n';
    for (const auto& r : recs) r.write_csv_row(os);
}

std::string describe(const BoundaryConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "w1=" << cfg.w1 << ";v1=" << cfg.v1 << ";w2=" << cfg.w2 << ";v2=" << cfg.v2;
    return os.str();
}

std::string describe(const ZState& z) {
    std::ostringstream os;
    os.precision(17);
    os << "z1=" << z.z1 << ";z2=" << z.z2;
    return os.str();
}

CurvePathResult sample_two_curve_path(const KappaContext& ctx, const BoundaryConfig& cfg,
                                      const std::vector<double>& r_list, double dt, std::uint64_t master_seed,
                                      std::uint64_t index, int check_stride) {
    check_radii(r_list);
    check_dt(dt);
    if (check_stride < 1) throw std::domain_error("check_stride must be at least 1");
    const std::size_t m = r_list.size();
    CurvePathResult res;
    res.path_id = index;
    res.hit_first.assign(m, 0);
    res.hit.assign(m, 0);
    res.terminated.assign(m, 0);

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return r_list[a] > r_list[b]; });
    std::size_t next = 0;
    while (next < m && r_list[order[next]] >= 1.0) {
        res.hit_first[order[next]] = res.hit[order[next]] = 1;
        ++next;
    }
    if (next == m) return res;

    HsleChain c1(ctx, hsle_marks(cfg, 1), dt, path_seed(master_seed, index));
    std::vector<FirstCurveSnapshot> snaps(m);
    const double window = -std::log(4.0 * r_list[order[next]]);
    const double check_every = dt * check_stride;
    double next_check = window;
    while (next < m) {
        if (!c1.step()) break;
        const double cap = c1.capacity();
        const std::size_t n = c1.steps();
        if (cap >= next_check || (c1.terminated() && cap >= window)) {
            next_check = cap + check_every;
            const double d = std::abs(c1.trace().tip(n));
            const double e = std::exp(-cap);
            while (next < m && (d < r_list[order[next]] || e <= r_list[order[next]])) {
                snaps[order[next]] = snapshot(c1);
                res.hit_first[order[next]] = 1;
                ++next;
            }
        }
        if (c1.terminated()) break;
    }
    for (std::size_t i = next; i < m; ++i) res.terminated[order[i]] = 1;

    const RadialTrace& base = c1.trace();
    for (std::size_t i = 0; i < m; ++i) {
        const double r = r_list[i];
        if (!res.hit_first[i] || r >= 1.0) continue;
        const auto& s = snaps[i];
        if (!ordered_marks(s.second)) {
            res.terminated[i] = 1;
            continue;
        }
        HsleChain c2(ctx, s.second, dt, second_seed(master_seed, index));
        const double scale = std::exp(-s.capacity);
        const double window2 = -std::log(4.0 * r) - s.capacity;
        double next_check2 = window2;
        bool hit = false;
        while (!hit) {
            if (!c2.step()) break;
            const double cap2 = c2.capacity();
            const std::size_t n2 = c2.steps();
            if (cap2 >= next_check2 || (c2.terminated() && cap2 >= window2)) {
                next_check2 = cap2 + check_every;
                const cplx zeta = c2.trace().tip(n2);
                const double a = std::abs(zeta);
                if (scale * a / ((1 + a) * (1 + a)) < r) {
                    if (a < 1 && scale * a / ((1 - a) * (1 - a)) < r) hit = true;
                    else hit = std::abs(base.pullback(zeta, s.n)) < r;
                }
            }
            const double e = std::exp(-cap2);
            if (scale * e / ((1 - e) * (1 - e)) < r) hit = true;
            if (c2.terminated()) break;
        }
        res.hit[i] = hit;
        if (!hit && c2.terminated()) res.terminated[i] = 1;
    }
    return res;
}

std::vector<CurvePathResult> sample_two_curve_paths(const KappaContext& ctx, const BoundaryConfig& cfg,
                                                    const std::vector<double>& r_list, std::uint64_t n_paths,
                                                    double dt, std::uint64_t master_seed, const CurveOptions& opt) {
    cfg.validate();
    check_radii(r_list);
    check_dt(dt);
    std::vector<CurvePathResult> out(n_paths);
    parallel_for(n_paths, opt.threads, [&](std::uint64_t p) {
        out[p] = sample_two_curve_path(ctx, cfg, r_list, dt, master_seed, opt.first_index + p, opt.check_stride);
    });
    return out;
}

std::vector<EstimateRecord> aggregate_two_curve(const KappaContext& ctx, const BoundaryConfig& cfg,
                                                const std::vector<double>& r_list,
                                                const std::vector<CurvePathResult>& paths, double dt,
                                                std::uint64_t master_seed) {
    check_radii(r_list);
    if (paths.empty()) throw std::domain_error("aggregate_two_curve: no paths");
    std::vector<EstimateRecord> out;
    const double n = static_cast<double>(paths.size());
    for (std::size_t i = 0; i < r_list.size(); ++i) {
        std::uint64_t hits = 0, first = 0, term = 0;
        for (const auto& p : paths) {
            if (p.hit.size() != r_list.size()) throw std::domain_error("aggregate_two_curve: radius count mismatch");
            hits += p.hit[i];
            first += p.hit_first[i];
            term += p.terminated[i];
        }
        EstimateRecord rec;
        rec.kappa = ctx.kappa;
        rec.method = "curves";
        rec.config = describe(cfg);
        rec.r_or_t = r_list[i];
        rec.estimate = hits / n;
        rec.n_paths = paths.size();
        rec.ess = n;
        rec.dt = dt;
        rec.seed = master_seed;
        if (r_list[i] >= 1.0) {
            add_flag(rec.flags, "degenerate");
        } else if (hits == 0 || hits == paths.size()) {
            rec.std_error = 3.0 / n;
            add_flag(rec.flags, "insufficient");
        } else {
            rec.std_error = std::sqrt(rec.estimate * (1 - rec.estimate) / n);
            if (hits < 10) add_flag(rec.flags, "low_count");
        }
        add_flag(rec.flags, "first_hits=" + std::to_string(first));
        if (term) add_flag(rec.flags, "early_terminated=" + std::to_string(term));
        out.push_back(rec);
    }
    return out;
}

std::vector<EstimateRecord> estimate_two_curve_hit(const KappaContext& ctx, const BoundaryConfig& cfg,
                                                   const std::vector<double>& r_list, std::uint64_t n_paths,
                                                   double dt, std::uint64_t master_seed, const CurveOptions& opt) {
    if (n_paths < 1) throw std::domain_error("estimate_two_curve_hit: need at least one path");
    const auto paths = sample_two_curve_paths(ctx, cfg, r_list, n_paths, dt, master_seed, opt);
    return aggregate_two_curve(ctx, cfg, r_list, paths, dt, master_seed);
}

void write_curve_paths_csv(std::ostream& os, const std::vector<double>& r_list,
                           const std::vector<CurvePathResult>& paths) {
    const auto p = os.precision(17);
    os << "path_id,r,hit_first,hit,terminated\n";
    for (const auto& path : paths)
        for (std::size_t i = 0; i < r_list.size(); ++i)
            os << path.path_id << ',' << r_list[i] << ',' << int(path.hit_first[i]) << ',' << int(path.hit[i]) << ','
               << int(path.terminated[i]) << '\n';
    os.precision(p);
}

std::vector<CurvePathResult> read_curve_paths_csv(std::istream& is, std::vector<double>& r_list) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("curve path CSV is empty");
    std::vector<CurvePathResult> out;
    r_list.clear();
    bool radii_done = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto c = split(line);
        if (c.size() != 5) throw std::runtime_error("curve path CSV: expected 5 columns");
        const std::uint64_t id = std::stoull(c[0]);
        const double r = std::stod(c[1]);
        if (out.empty() || out.back().path_id != id) {
            if (!out.empty()) radii_done = true;
            out.push_back({});
            out.back().path_id = id;
        }
        auto& p = out.back();
        const std::size_t k = p.hit.size();
        if (!radii_done) r_list.push_back(r);
        else if (k >= r_list.size() || r_list[k] != r) throw std::runtime_error("curve path CSV: inconsistent radii");
        p.hit_first.push_back(static_cast<std::uint8_t>(std::stoi(c[2])));
        p.hit.push_back(static_cast<std::uint8_t>(std::stoi(c[3])));
        p.terminated.push_back(static_cast<std::uint8_t>(std::stoi(c[4])));
    }
    for (const auto& p : out)
        if (p.hit.size() != r_list.size()) throw std::runtime_error("curve path CSV: incomplete path");
    return out;
}

IntersectionPathResult sample_intersection_path(const KappaContext& ctx, const BoundaryConfig& cfg, double r_min,
                                                double dt, std::uint64_t master_seed, std::uint64_t index) {
    if (!(r_min > 0 && r_min < 1)) throw std::domain_error("sample_intersection_path: r_min must lie in (0,1)");
    check_dt(dt);
    IntersectionPathResult res;
    res.path_id = index;
    res.distance = std::numeric_limits<double>::infinity();
    const double cap_max = -std::log(r_min) + 8.0;

    HsleChain c1(ctx, hsle_marks(cfg, 1), dt, path_seed(master_seed, index));
    if (!c1.step()) {
        res.invalid = true;
        return res;
    }
    // prime ends of the base point of η₁ on either side of its first slit
    const double spread = 2.0 * std::acos(std::exp(-0.5 * c1.capacity()));
    const std::size_t lo = c1.add_companion(c1.trace().driver(0) - spread);
    const std::size_t hi = c1.add_companion(c1.trace().driver(0) + spread);
    // η₂ is conditioned on η₁ up to the last step whose marks stay separated;
    // near its collision the marks merge in floating point
    constexpr double kMinSeparation = 1e-6;
    FirstCurveSnapshot s;
    double arc_lo = 0, arc_hi = 0;
    bool have = false;
    for (;;) {
        const auto cur = snapshot(c1);
        if (cur.second.min_separation() > kMinSeparation && ordered_marks(cur.second)) {
            s = cur;
            arc_lo = c1.companion(lo);
            arc_hi = c1.companion(hi);
            have = true;
        }
        if (c1.terminated() || c1.capacity() >= cap_max || !c1.step()) break;
    }
    if (c1.capacity() >= cap_max) res.truncated = true;
    if (!have) {
        res.invalid = true;
        return res;
    }
    HsleChain c2(ctx, s.second, dt, second_seed(master_seed, index));
    while (!c2.terminated() && c2.capacity() < cap_max)
        if (!c2.step()) break;
    if (!c2.terminated()) {
        res.truncated = true;
        return res;
    }
    if (c2.steps() == 0) {
        res.invalid = true;
        return res;
    }
    const cplx zeta = c2.trace().tip(c2.steps());
    double th = std::arg(zeta);
    th += kTwoPi * std::floor((arc_lo - th) / kTwoPi + 1.0);
    if (th > arc_lo && th < arc_hi) res.distance = std::abs(c1.trace().pullback(zeta, s.n));
    return res;
}

std::vector<IntersectionPathResult> sample_intersection_paths(const KappaContext& ctx, const BoundaryConfig& cfg,
                                                              double r_min, std::uint64_t n_paths, double dt,
                                                              std::uint64_t master_seed, const CurveOptions& opt) {
    cfg.validate();
    std::vector<IntersectionPathResult> out(n_paths);
    parallel_for(n_paths, opt.threads, [&](std::uint64_t p) {
        out[p] = sample_intersection_path(ctx, cfg, r_min, dt, master_seed, opt.first_index + p);
    });
    return out;
}

std::vector<EstimateRecord> aggregate_intersection(const KappaContext& ctx, const BoundaryConfig& cfg,
                                                   const std::vector<double>& r_list,
                                                   const std::vector<IntersectionPathResult>& paths, double dt,
                                                   std::uint64_t master_seed) {
    check_radii(r_list);
    if (paths.empty()) throw std::domain_error("aggregate_intersection: no paths");
    const double n = static_cast<double>(paths.size());
    std::uint64_t truncated = 0, invalid = 0;
    for (const auto& p : paths) {
        truncated += p.truncated;
        invalid += p.invalid;
    }
    std::vector<EstimateRecord> out;
    for (double r : r_list) {
        std::uint64_t hits = 0;
        for (const auto& p : paths) hits += p.distance < r;
        EstimateRecord rec;
        rec.kappa = ctx.kappa;
        rec.method = "intersection";
        rec.config = describe(cfg);
        rec.r_or_t = r;
        rec.estimate = hits / n;
        rec.n_paths = paths.size();
        rec.ess = n;
        rec.dt = dt;
        rec.seed = master_seed;
        if (hits == 0 || hits == paths.size()) {
            rec.std_error = 3.0 / n;
            add_flag(rec.flags, "insufficient");
        } else {
            rec.std_error = std::sqrt(rec.estimate * (1 - rec.estimate) / n);
            if (hits < 10) add_flag(rec.flags, "low_count");
        }
        if (truncated) add_flag(rec.flags, "truncated=" + std::to_string(truncated));
        if (invalid) add_flag(rec.flags, "invalid=" + std::to_string(invalid));
        out.push_back(rec);
    }
    return out;
}

std::vector<EstimateRecord> estimate_intersection_hit(const KappaContext& ctx, const BoundaryConfig& cfg,
                                                      const std::vector<double>& r_list, std::uint64_t n_paths,
                                                      double dt, std::uint64_t master_seed,
                                                      const CurveOptions& opt) {
    if (!(ctx.kappa > 4 && ctx.kappa < 8))
        throw std::domain_error("estimate_intersection_hit: kappa must lie in (4,8)");
    check_radii(r_list);
    if (n_paths < 1) throw std::domain_error("estimate_intersection_hit: need at least one path");
    const double r_min = *std::min_element(r_list.begin(), r_list.end());
    if (!(r_min < 1)) throw std::domain_error("estimate_intersection_hit: radii must be below 1");
    const auto paths = sample_intersection_paths(ctx, cfg, r_min, n_paths, dt, master_seed, opt);
    return aggregate_intersection(ctx, cfg, r_list, paths, dt, master_seed);
}

void write_intersection_paths_csv(std::ostream& os, const std::vector<IntersectionPathResult>& paths) {
    const auto p = os.precision(17);
    os << "path_id,distance,truncated,invalid\n";
    for (const auto& path : paths)
        os << path.path_id << ',' << path.distance << ',' << int(path.truncated) << ',' << int(path.invalid) << '\n';
    os.precision(p);
}

std::vector<IntersectionPathResult> read_intersection_paths_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("intersection path CSV is empty");
    std::vector<IntersectionPathResult> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto c = split(line);
        if (c.size() != 4) throw std::runtime_error("intersection path CSV: expected 4 columns");
        IntersectionPathResult r;
        r.path_id = std::stoull(c[0]);
        r.distance = std::strtod(c[1].c_str(), nullptr);
        r.truncated = std::stoi(c[2]) != 0;
        r.invalid = std::stoi(c[3]) != 0;
        out.push_back(r);
    }
    return out;
}

std::vector<EstimateRecord> survival_records(const KappaContext& ctx, const ZState& z0, const ZPathEnsemble& ens) {
    if (ens.n_paths < 1) throw std::domain_error("survival_records: empty ensemble");
    std::vector<EstimateRecord> out;
    const double n = static_cast<double>(ens.n_paths);
    for (std::size_t i = 0; i < ens.t_grid.size(); ++i) {
        double s1 = 0, s2 = 0;
        std::uint64_t absorbed = 0;
        for (std::size_t p = 0; p < ens.n_paths; ++p) {
            const auto& r = ens.at(p, i);
            const double w = r.absorbed ? 0.0 : std::exp(r.log_weight);
            s1 += w;
            s2 += w * w;
            absorbed += r.absorbed;
        }
        EstimateRecord rec;
        rec.kappa = ctx.kappa;
        rec.method = "z-weighted";
        rec.config = describe(z0);
        rec.r_or_t = ens.t_grid[i];
        rec.estimate = s1 / n;
        const double var = ens.n_paths > 1 ? std::max(0.0, (s2 - s1 * s1 / n) / (n - 1)) : 0.0;
        rec.std_error = std::sqrt(var / n);
        rec.ess = s2 > 0 ? s1 * s1 / s2 : 0.0;
        rec.n_paths = ens.n_paths;
        rec.dt = ens.dt;
        rec.seed = ens.master_seed;
        add_flag(rec.flags, rec.ess > 100 ? "accepted" : "low_ess");
        if (absorbed) add_flag(rec.flags, "absorbed=" + std::to_string(absorbed));
        out.push_back(rec);
    }
    return out;
}

std::vector<EstimateRecord> estimate_survival_weighted(const KappaContext& ctx, const ZState& z0,
                                                       const std::vector<double>& t_list, std::uint64_t n_paths,
                                                       double dt, std::uint64_t master_seed,
                                                       const ZSimOptions& opt) {
    if (t_list.empty()) throw std::domain_error("estimate_survival_weighted: time list must be nonempty");
    for (double t : t_list)
        if (!(t >= 0) || !std::isfinite(t)) throw std::domain_error("estimate_survival_weighted: times must be nonnegative");
    ZSimOptions o = opt;
    o.record_times = t_list;
    std::sort(o.record_times.begin(), o.record_times.end());
    const auto ens = simulate_z_ensemble(ctx, z0, o.record_times.back(), dt, n_paths, master_seed, o);
    auto recs = survival_records(ctx, z0, ens);
    std::vector<EstimateRecord> out;
    for (double t : t_list)
        for (const auto& r : recs)
            if (r.r_or_t == t) {
                out.push_back(r);
                break;
            }
    return out;
}

PowerLawFit fit_power_law(const std::vector<PowerLawPoint>& points) {
    if (points.size() < 2) throw std::domain_error("fit_power_law: need at least two points");
    bool any_err = false;
    for (const auto& p : points) {
        if (!(p.r > 0 && p.p > 0) || !std::isfinite(p.r) || !std::isfinite(p.p))
            throw std::domain_error("fit_power_law: r and p must be positive");
        if (p.std_error < 0) throw std::domain_error("fit_power_law: stderr must be nonnegative");
        any_err = any_err || p.std_error > 0;
    }
    if (any_err)
        for (const auto& p : points)
            if (!(p.std_error > 0)) throw std::domain_error("fit_power_law: stderr must be positive for every point");
    double S = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
    for (const auto& p : points) {
        const double w = any_err ? (p.p * p.p) / (p.std_error * p.std_error) : 1.0;
        const double x = std::log(p.r), y = std::log(p.p);
        S += w;
        Sx += w * x;
        Sy += w * y;
        Sxx += w * x * x;
        Sxy += w * x * y;
    }
    const double D = S * Sxx - Sx * Sx;
    if (!(D > 0)) throw std::domain_error("fit_power_law: radii must not all coincide");
    PowerLawFit f;
    f.exponent = (S * Sxy - Sx * Sy) / D;
    const double a = (Sxx * Sy - Sx * Sxy) / D;
    f.intercept = std::exp(a);
    double scale = 1.0;
    if (!any_err) {
        // residual variance stands in for the unknown errors
        double rss = 0;
        for (const auto& p : points) {
            const double e = std::log(p.p) - a - f.exponent * std::log(p.r);
            rss += e * e;
        }
        scale = points.size() > 2 ? rss / (points.size() - 2) : 0.0;
    }
    f.cov[0][0] = scale * S / D;
    f.cov[1][1] = scale * Sxx / D;
    f.cov[0][1] = f.cov[1][0] = -scale * Sx / D;
    f.exponent_stderr = std::sqrt(f.cov[0][0]);
    f.intercept_stderr = f.intercept * std::sqrt(f.cov[1][1]);
    return f;
}

EstimateRecord pool_records(const std::vector<EstimateRecord>& recs) {
    double sw = 0, swx = 0;
    std::uint64_t n = 0;
    EstimateRecord out;
    for (const auto& r : recs) {
        if (!(r.std_error > 0) || r.has_flag("insufficient") || r.has_flag("degenerate")) continue;
        const double w = 1.0 / (r.std_error * r.std_error);
        sw += w;
        swx += w * r.estimate;
        n += r.n_paths;
        if (out.method.empty()) out = r;
    }
    if (!(sw > 0)) throw std::domain_error("pool_records: no record with a usable standard error");
    out.estimate = swx / sw;
    out.std_error = 1.0 / std::sqrt(sw);
    out.n_paths = n;
    out.flags = "pooled";
    return out;
}

EstimateRecord c0_from_hits(const KappaContext& ctx, const BoundaryConfig& cfg,
                            const std::vector<EstimateRecord>& hits) {
    const double G = G_quad(ctx, cfg);
    std::vector<EstimateRecord> scaled;
    for (auto r : hits) {
        if (r.r_or_t >= 1.0) continue;
        const double s = G * std::pow(r.r_or_t, ctx.alpha0);
        r.estimate /= s;
        r.std_error /= s;
        scaled.push_back(r);
    }
    EstimateRecord out = pool_records(scaled);
    out.method = "C0";
    out.config = describe(cfg);
    out.r_or_t = 0;
    return out;
}

C0Estimate estimate_C0(const KappaContext& ctx, const std::vector<BoundaryConfig>& cfg_list,
                       const std::vector<double>& r_list, std::uint64_t n_paths, double dt,
                       std::uint64_t master_seed, const CurveOptions& opt) {
    if (cfg_list.empty()) throw std::domain_error("estimate_C0: configuration list must be nonempty");
    C0Estimate est;
    for (std::size_t c = 0; c < cfg_list.size(); ++c) {
        const std::uint64_t seed = splitmix64(master_seed + c);
        est.hits.push_back(estimate_two_curve_hit(ctx, cfg_list[c], r_list, n_paths, dt, seed, opt));
        est.per_config.push_back(c0_from_hits(ctx, cfg_list[c], est.hits.back()));
    }
    est.pooled = pool_records(est.per_config);
    est.pooled.method = "C0";
    est.pooled.config = "pooled";
    est.pooled.seed = master_seed;
    return est;
}

}  // namespace sle2g
