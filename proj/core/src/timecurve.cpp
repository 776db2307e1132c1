#include "sle2g/timecurve.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "sle2g/green.hpp"
#include "sle2g/trig.hpp"

namespace sle2g {

double speed_fraction(const ZState& z, int j) {
    z.validate();
    if (j != 1 && j != 2) throw std::domain_error("speed_fraction: index must be 1 or 2");
    const double s1 = std::sin(z.z1), s2 = std::sin(z.z2);
    return (j == 1 ? s1 : s2) / (s1 + s2);
}

std::optional<ZState> z_step(const KappaContext& ctx, const ZState& z, double dt, double n1, double n2) {
    if (!(dt > 0)) throw std::domain_error("z_step: dt must be positive");
    const double s1 = std::sin(z.z1), s2 = std::sin(z.z2), S = s1 + s2;
    const double sq = std::sqrt(dt);
    ZState out;
    out.z1 = z.z1 + std::sqrt(ctx.kappa * s1 / S) * sq * n1 + 4.0 * std::cos(z.z1) / S * dt;
    out.z2 = z.z2 + std::sqrt(ctx.kappa * s2 / S) * sq * n2 + 4.0 * std::cos(z.z2) / S * dt;
    if (!(out.z1 > 0 && out.z1 < kPi && out.z2 > 0 && out.z2 < kPi)) return std::nullopt;
    return out;
}

bool z_advance(const KappaContext& ctx, ZState& z, double dt, std::mt19937_64& rng,
               std::normal_distribution<double>& normal) {
    const double floor = 1e-9 * dt;
    double left = dt;
    while (left > 0) {
        const double s1 = std::sin(z.z1), s2 = std::sin(z.z2), S = s1 + s2;
        const double d1 = std::min(z.z1, kPi - z.z1), d2 = std::min(z.z2, kPi - z.z2);
        const double cap = std::min(d1 * d1 / s1, d2 * d2 / s2) * S / (25.0 * ctx.kappa);
        const double h = left <= std::max(cap, floor) ? left : std::max(cap, floor);
        const double n1 = normal(rng), n2 = normal(rng);
        const auto nz = z_step(ctx, z, h, n1, n2);
        if (!nz) return false;
        z = *nz;
        left -= h;
    }
    return true;
}

std::pair<double, double> xy_of_z(const ZState& z) {
    z.validate();
    return {std::cos(0.5 * (z.z1 + z.z2)), std::sin(0.5 * (z.z1 - z.z2))};
}

ZState z_of_xy(double x, double y) {
    if (!(x * x + y * y < 1.0)) throw std::domain_error("z_of_xy: point must lie in the open unit disc");
    const double zp = std::acos(x), zm = std::asin(y);
    return {zp + zm, zp - zm};
}

double importance_log_weight(const KappaContext& ctx, double t, const ZState& z_start, const ZState& z_end) {
    if (t < 0) throw std::domain_error("importance_log_weight: t must be nonnegative");
    z_start.validate();
    z_end.validate();
    return -ctx.alpha0 * t + log_G_u(ctx, z_start.z1, z_start.z2) - log_G_u(ctx, z_end.z1, z_end.z2);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t path_seed(std::uint64_t master, std::uint64_t index) { return splitmix64(splitmix64(master) ^ index); }

std::size_t ZPathEnsemble::absorbed_count(std::size_t time_index) const {
    std::size_t n = 0;
    for (std::size_t p = 0; p < n_paths; ++p) n += at(p, time_index).absorbed;
    return n;
}

void ZPathEnsemble::write_csv(std::ostream& os) const {
    os << "path_id,t,z1,z2,log_weight,absorbed\n";
    os.precision(17);
    for (const auto& r : records)
        os << r.path_id << ',' << r.t << ',' << r.z1 << ',' << r.z2 << ',' << r.log_weight << ',' << int(r.absorbed) << '\n';
}

ZPathEnsemble simulate_z_ensemble(const KappaContext& ctx, const ZState& z0, double t_max, double dt,
                                  std::uint64_t n_paths, std::uint64_t master_seed, const ZSimOptions& opt) {
    if (!opt.initial) z0.validate();
    if (!(dt > 0)) throw std::domain_error("simulate_z_ensemble: dt must be positive");
    if (n_paths < 1) throw std::domain_error("simulate_z_ensemble: need at least one path");
    if (!(t_max >= 0)) throw std::domain_error("simulate_z_ensemble: t_max must be nonnegative");
    ZPathEnsemble ens;
    ens.kappa = ctx.kappa;
    ens.dt = dt;
    ens.t_grid = opt.record_times.empty() ? std::vector<double>{t_max} : opt.record_times;
    for (std::size_t i = 0; i < ens.t_grid.size(); ++i)
        if (ens.t_grid[i] < 0 || ens.t_grid[i] > t_max * (1 + 1e-12) || (i && ens.t_grid[i] < ens.t_grid[i - 1]))
            throw std::domain_error("simulate_z_ensemble: record times must be sorted within [0, t_max]");
    ens.master_seed = master_seed;
    ens.first_index = opt.first_index;
    ens.n_paths = n_paths;
    const std::size_t m = ens.t_grid.size();
    ens.records.resize(n_paths * m);
    std::vector<long> step_of(m);
    for (std::size_t i = 0; i < m; ++i) step_of[i] = std::lround(ens.t_grid[i] / dt);

    auto run = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t p = lo; p < hi; ++p) {
            const std::uint64_t id = opt.first_index + p;
            std::mt19937_64 rng(path_seed(master_seed, id));
            std::normal_distribution<double> N(0.0, 1.0);
            const ZState start = opt.initial ? opt.initial(rng) : z0;
            const double lg0 = log_G_u(ctx, start.z1, start.z2);
            ZState z = start;
            bool absorbed = false;
            long step = 0;
            for (std::size_t i = 0; i < m; ++i) {
                while (!absorbed && step < step_of[i]) {
                    absorbed = !z_advance(ctx, z, dt, rng, N);
                    ++step;
                }
                auto& r = ens.records[p * m + i];
                r.path_id = id;
                r.t = ens.t_grid[i];
                r.z1 = z.z1;
                r.z2 = z.z2;
                r.absorbed = absorbed;
                r.log_weight = absorbed ? -INFINITY : -ctx.alpha0 * r.t + lg0 - log_G_u(ctx, z.z1, z.z2);
            }
        }
    };
    const unsigned T = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(n_paths)));
    if (T == 1) {
        run(0, n_paths);
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < T; ++k) pool.emplace_back(run, n_paths * k / T, n_paths * (k + 1) / T);
        for (auto& th : pool) th.join();
    }
    return ens;
}

}  // namespace sle2g
