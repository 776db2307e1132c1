#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "sle2g/autodiff.hpp"
#include "sle2g/specfun.hpp"
#include "sle2g/types.hpp"

namespace sle2g {

double speed_fraction(const ZState& z, int j);

// Euler–Maruyama step of the Z-diffusion; nullopt when the step leaves (0,π)².
std::optional<ZState> z_step(const KappaContext& ctx, const ZState& z, double dt, double n1, double n2);

// Advances z by dt with Euler–Maruyama substeps whose local variance stays
// below (distance to the boundary)²/25; false when a substep leaves (0,π)².
bool z_advance(const KappaContext& ctx, ZState& z, double dt, std::mt19937_64& rng,
               std::normal_distribution<double>& normal);

std::pair<double, double> xy_of_z(const ZState& z);
ZState z_of_xy(double x, double y);

double importance_log_weight(const KappaContext& ctx, double t, const ZState& z_start, const ZState& z_end);

// Generator of the Z-diffusion applied to f, with exact derivatives:
// Σ_j (κ/2) s_j ∂²_j f + 4 cos z_j/(sin z1 + sin z2) ∂_j f, s_j the speed fraction.
template <class F>
double z_generator_apply(const KappaContext& ctx, F&& f, double z1, double z2) {
    const HyperDual a = f(HyperDual(z1, 1, 1, 0), HyperDual(z2));
    const HyperDual b = f(HyperDual(z1), HyperDual(z2, 1, 1, 0));
    const double s1 = std::sin(z1), s2 = std::sin(z2), S = s1 + s2;
    return 0.5 * ctx.kappa * (s1 / S * a.d12 + s2 / S * b.d12) + 4.0 / S * (std::cos(z1) * a.d1 + std::cos(z2) * b.d1);
}

std::uint64_t splitmix64(std::uint64_t x);
// Per-path seed derived from (master seed, path index).
std::uint64_t path_seed(std::uint64_t master, std::uint64_t index);

struct ZPathRecord {
    std::uint64_t path_id = 0;
    double t = 0;
    double z1 = 0, z2 = 0;
    double log_weight = 0;
    bool absorbed = false;
};

struct ZSimOptions {
    std::vector<double> record_times;  // default: {t_max}
    std::uint64_t first_index = 0;
    unsigned threads = 1;
    // Draws the starting point; default is the fixed z0.
    std::function<ZState(std::mt19937_64&)> initial;
};

struct ZPathEnsemble {
    double kappa = 0;
    double dt = 0;
    std::vector<double> t_grid;
    std::uint64_t master_seed = 0;
    std::uint64_t first_index = 0;
    std::uint64_t n_paths = 0;
    // Row-major: records[p * t_grid.size() + i] is path p at t_grid[i].
    std::vector<ZPathRecord> records;

    const ZPathRecord& at(std::size_t path, std::size_t time_index) const {
        return records[path * t_grid.size() + time_index];
    }
    std::size_t absorbed_count(std::size_t time_index) const;
    void write_csv(std::ostream& os) const;
};

ZPathEnsemble simulate_z_ensemble(const KappaContext& ctx, const ZState& z0, double t_max, double dt,
                                  std::uint64_t n_paths, std::uint64_t master_seed, const ZSimOptions& opt = {});

}  // namespace sle2g
