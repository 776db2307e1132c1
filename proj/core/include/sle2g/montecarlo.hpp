#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sle2g/hsle.hpp"
#include "sle2g/specfun.hpp"
#include "sle2g/timecurve.hpp"
#include "sle2g/types.hpp"

namespace sle2g {

struct EstimateRecord {
    double kappa = 0;
    std::string method;
    std::string config;
    double r_or_t = 0;
    double estimate = 0;
    double std_error = 0;
    double ess = 0;
    std::uint64_t n_paths = 0;
    double dt = 0;
    std::uint64_t seed = 0;
    std::string flags;

    static const char* csv_header();
    void write_csv_row(std::ostream& os) const;
    bool has_flag(const std::string& f) const;
};

void write_records_csv(std::ostream& os, const std::vector<EstimateRecord>& recs);

std::string describe(const BoundaryConfig& cfg);
std::string describe(const ZState& z);

struct CurveOptions {
    std::uint64_t first_index = 0;
    unsigned threads = 1;
    // Tips are examined whenever the capacity has grown by check_stride·dt.
    int check_stride = 1;
};

// Per-path outcome of the sequential two-curve sampler, one entry per radius.
struct CurvePathResult {
    std::uint64_t path_id = 0;
    std::vector<std::uint8_t> hit_first;   // η₁ reached radius r
    std::vector<std::uint8_t> hit;         // both curves reached radius r
    std::vector<std::uint8_t> terminated;  // a chain stopped at a collision before deciding
};

CurvePathResult sample_two_curve_path(const KappaContext& ctx, const BoundaryConfig& cfg,
                                      const std::vector<double>& r_list, double dt, std::uint64_t master_seed,
                                      std::uint64_t index, int check_stride = 1);
std::vector<CurvePathResult> sample_two_curve_paths(const KappaContext& ctx, const BoundaryConfig& cfg,
                                                    const std::vector<double>& r_list, std::uint64_t n_paths,
                                                    double dt, std::uint64_t master_seed,
                                                    const CurveOptions& opt = {});
// Frequencies with binomial standard errors, aggregated in path order.
std::vector<EstimateRecord> aggregate_two_curve(const KappaContext& ctx, const BoundaryConfig& cfg,
                                                const std::vector<double>& r_list,
                                                const std::vector<CurvePathResult>& paths, double dt,
                                                std::uint64_t master_seed);
std::vector<EstimateRecord> estimate_two_curve_hit(const KappaContext& ctx, const BoundaryConfig& cfg,
                                                   const std::vector<double>& r_list, std::uint64_t n_paths,
                                                   double dt, std::uint64_t master_seed,
                                                   const CurveOptions& opt = {});

void write_curve_paths_csv(std::ostream& os, const std::vector<double>& r_list,
                           const std::vector<CurvePathResult>& paths);
std::vector<CurvePathResult> read_curve_paths_csv(std::istream& is, std::vector<double>& r_list);

// Distance from 0 of the first intersection point of η₂ with η₁ found by
// the sampler, +∞ when none was found.
struct IntersectionPathResult {
    std::uint64_t path_id = 0;
    double distance = 0;
    bool truncated = false;  // a chain hit its capacity cap
    bool invalid = false;    // η₁ ended in a state the second chain cannot start from
};

IntersectionPathResult sample_intersection_path(const KappaContext& ctx, const BoundaryConfig& cfg, double r_min,
                                                double dt, std::uint64_t master_seed, std::uint64_t index);
std::vector<IntersectionPathResult> sample_intersection_paths(const KappaContext& ctx, const BoundaryConfig& cfg,
                                                              double r_min, std::uint64_t n_paths, double dt,
                                                              std::uint64_t master_seed,
                                                              const CurveOptions& opt = {});
std::vector<EstimateRecord> aggregate_intersection(const KappaContext& ctx, const BoundaryConfig& cfg,
                                                   const std::vector<double>& r_list,
                                                   const std::vector<IntersectionPathResult>& paths, double dt,
                                                   std::uint64_t master_seed);
// κ ∈ (4, 8) only.
std::vector<EstimateRecord> estimate_intersection_hit(const KappaContext& ctx, const BoundaryConfig& cfg,
                                                      const std::vector<double>& r_list, std::uint64_t n_paths,
                                                      double dt, std::uint64_t master_seed,
                                                      const CurveOptions& opt = {});

void write_intersection_paths_csv(std::ostream& os, const std::vector<IntersectionPathResult>& paths);
std::vector<IntersectionPathResult> read_intersection_paths_csv(std::istream& is);

// ℙ₂[T^u > t] as the ℙ_c4 average of the importance weight.
std::vector<EstimateRecord> survival_records(const KappaContext& ctx, const ZState& z0, const ZPathEnsemble& ens);
std::vector<EstimateRecord> estimate_survival_weighted(const KappaContext& ctx, const ZState& z0,
                                                       const std::vector<double>& t_list, std::uint64_t n_paths,
                                                       double dt, std::uint64_t master_seed,
                                                       const ZSimOptions& opt = {});

struct PowerLawPoint {
    double r = 0, p = 0, std_error = 0;
};

// log p = log A + β log r by weighted least squares with weights p²/stderr²
// (unit weights when every stderr is zero).
struct PowerLawFit {
    double exponent = 0;
    double intercept = 0;
    double cov[2][2] = {{0, 0}, {0, 0}};  // (β, log A)
    double exponent_stderr = 0;
    double intercept_stderr = 0;
};
PowerLawFit fit_power_law(const std::vector<PowerLawPoint>& points);

// Inverse-variance pooling of records estimating the same quantity.
EstimateRecord pool_records(const std::vector<EstimateRecord>& recs);

// C₀ = p/(G_quad·r^{α₀}) per radius, pooled across the radii.
EstimateRecord c0_from_hits(const KappaContext& ctx, const BoundaryConfig& cfg,
                            const std::vector<EstimateRecord>& hits);

struct C0Estimate {
    EstimateRecord pooled;
    std::vector<EstimateRecord> per_config;
    std::vector<std::vector<EstimateRecord>> hits;
};
C0Estimate estimate_C0(const KappaContext& ctx, const std::vector<BoundaryConfig>& cfg_list,
                       const std::vector<double>& r_list, std::uint64_t n_paths, double dt,
                       std::uint64_t master_seed, const CurveOptions& opt = {});

}  // namespace sle2g
