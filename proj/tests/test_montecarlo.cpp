#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sle2g/green.hpp"
#include "sle2g/montecarlo.hpp"

using namespace sle2g;

TEST(PowerLaw, ExactData) {
    std::vector<PowerLawPoint> pts;
    for (double r : {0.05, 0.1, 0.2, 0.4}) pts.push_back({r, 3 * r * r, 0.0});
    const auto f = fit_power_law(pts);
    EXPECT_NEAR(f.exponent, 2.0, 1e-12);
    EXPECT_NEAR(f.intercept, 3.0, 1e-11);
    EXPECT_THROW(fit_power_law({{0.1, 0.2, 0.01}}), std::domain_error);
    EXPECT_THROW(fit_power_law({{0.1, 0.2, 0.01}, {0.1, 0.3, 0.01}}), std::domain_error);
    EXPECT_THROW(fit_power_law({{0.1, -0.2, 0.01}, {0.2, 0.3, 0.01}}), std::domain_error);
}

TEST(PowerLaw, CoverageOnSyntheticData) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> N;
    const std::vector<double> radii{0.05, 0.1, 0.2};
    int covered = 0;
    const int trials = 500;
    for (int k = 0; k < trials; ++k) {
        std::vector<PowerLawPoint> pts;
        for (double r : radii) {
            const double p = 2.0 * std::pow(r, 1.25);
            const double se = 0.03 * p;
            pts.push_back({r, p + se * N(rng), se});
        }
        const auto f = fit_power_law(pts);
        covered += std::abs(f.exponent - 1.25) < 2 * f.exponent_stderr;
    }
    EXPECT_GE(covered, 475 * trials / 500 - 10);
}

TEST(TwoCurve, DegenerateAndNestedRadii) {
    const auto ctx = KappaContext::make(6);
    const std::vector<double> radii{0.2, 0.5, 1.0};
    const auto paths = sample_two_curve_paths(ctx, BoundaryConfig::symmetric(), radii, 100, 0.01, 3);
    for (const auto& p : paths) {
        EXPECT_EQ(p.hit[2], 1);
        EXPECT_LE(p.hit[0], p.hit[1]);
        for (std::size_t i = 0; i < radii.size(); ++i) EXPECT_LE(p.hit[i], p.hit_first[i]);
    }
    const auto recs = aggregate_two_curve(ctx, BoundaryConfig::symmetric(), radii, paths, 0.01, 3);
    EXPECT_EQ(recs[2].estimate, 1.0);
    EXPECT_TRUE(recs[2].has_flag("degenerate"));
    EXPECT_LE(recs[0].estimate, recs[1].estimate);
    EXPECT_THROW(sample_two_curve_paths(ctx, BoundaryConfig::symmetric(), {0.0}, 1, 0.01, 3), std::domain_error);
}

TEST(TwoCurve, ResumableMergeIsExact) {
    const auto ctx = KappaContext::make(6);
    const BoundaryConfig cfg{2.0, 0.5, -1.2, -2.6};
    const std::vector<double> radii{0.2, 0.4};
    const auto all = sample_two_curve_paths(ctx, cfg, radii, 30, 0.01, 77);
    CurveOptions o;
    auto merged = sample_two_curve_paths(ctx, cfg, radii, 12, 0.01, 77, o);
    o.first_index = 12;
    o.threads = 2;
    const auto tail = sample_two_curve_paths(ctx, cfg, radii, 18, 0.01, 77, o);
    merged.insert(merged.end(), tail.begin(), tail.end());
    std::stringstream a, b;
    write_curve_paths_csv(a, radii, all);
    write_curve_paths_csv(b, radii, merged);
    EXPECT_EQ(a.str(), b.str());
    std::vector<double> back_r;
    const auto back = read_curve_paths_csv(a, back_r);
    EXPECT_EQ(back_r, radii);
    std::stringstream c, d;
    write_records_csv(c, aggregate_two_curve(ctx, cfg, radii, all, 0.01, 77));
    write_records_csv(d, aggregate_two_curve(ctx, cfg, back_r, back, 0.01, 77));
    EXPECT_EQ(c.str(), d.str());
}

TEST(Intersection, DomainAndRoundTrip) {
    const auto k4 = KappaContext::make(4);
    EXPECT_THROW(estimate_intersection_hit(k4, BoundaryConfig::symmetric(), {0.2}, 10, 0.01, 1), std::domain_error);
    const auto ctx = KappaContext::make(6);
    EXPECT_THROW(estimate_intersection_hit(ctx, BoundaryConfig::symmetric(), {1.2}, 10, 0.01, 1), std::domain_error);
    const auto paths = sample_intersection_paths(ctx, BoundaryConfig::symmetric(), 0.1, 20, 0.01, 5);
    std::stringstream ss;
    write_intersection_paths_csv(ss, paths);
    const auto back = read_intersection_paths_csv(ss);
    ASSERT_EQ(back.size(), paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        EXPECT_EQ(back[i].path_id, paths[i].path_id);
        EXPECT_EQ(back[i].distance, paths[i].distance);
        EXPECT_GT(paths[i].distance, 0.0);
    }
}

TEST(Intersection, BelowTwoCurveHit) {
    const auto ctx = KappaContext::make(6);
    const std::vector<double> radii{0.3};
    const auto inter = estimate_intersection_hit(ctx, BoundaryConfig::symmetric(), radii, 300, 0.01, 8);
    const auto hit = estimate_two_curve_hit(ctx, BoundaryConfig::symmetric(), radii, 300, 0.01, 9);
    EXPECT_LE(inter[0].estimate,
              hit[0].estimate + 3 * std::hypot(inter[0].std_error, hit[0].std_error));
}

TEST(Records, PoolingAndC0) {
    EstimateRecord a, b, bad;
    a.method = b.method = "curves";
    a.estimate = 1.0;
    a.std_error = 0.1;
    b.estimate = 2.0;
    b.std_error = 0.2;
    bad.estimate = 100;
    bad.std_error = 0.01;
    bad.flags = "insufficient";
    const auto p = pool_records({a, b, bad});
    EXPECT_NEAR(p.estimate, (1.0 / 0.01 + 2.0 / 0.04) / (1 / 0.01 + 1 / 0.04), 1e-14);
    EXPECT_NEAR(p.std_error, 1 / std::sqrt(1 / 0.01 + 1 / 0.04), 1e-14);
    EXPECT_TRUE(p.has_flag("pooled"));
    EXPECT_THROW(pool_records({bad}), std::domain_error);

    const auto ctx = KappaContext::make(6);
    const auto cfg = BoundaryConfig::symmetric();
    std::vector<EstimateRecord> hits;
    for (double r : {0.05, 0.1, 1.0}) {
        EstimateRecord h;
        h.method = "curves";
        h.r_or_t = r;
        h.estimate = 2.5 * G_quad(ctx, cfg) * std::pow(r, ctx.alpha0);
        h.std_error = 0.01 * h.estimate;
        hits.push_back(h);
    }
    const auto c0 = c0_from_hits(ctx, cfg, hits);
    EXPECT_NEAR(c0.estimate, 2.5, 1e-12);
    EXPECT_EQ(c0.method, "C0");
}

TEST(Records, FlagsAndCsv) {
    EstimateRecord r;
    r.flags = "accepted;absorbed=3";
    EXPECT_TRUE(r.has_flag("accepted"));
    EXPECT_TRUE(r.has_flag("absorbed=3"));
    EXPECT_TRUE(r.has_flag("absorbed"));
    EXPECT_FALSE(r.has_flag("absorb"));
    std::stringstream ss;
    write_records_csv(ss, {r});
    EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), EstimateRecord::csv_header());
}

TEST(Survival, WeightedEstimateAtTimeZero) {
    const auto ctx = KappaContext::make(6);
    const auto recs = estimate_survival_weighted(ctx, {1.0, 2.0}, {0.0, 0.2}, 200, 1e-3, 4);
    EXPECT_EQ(recs[0].estimate, 1.0);
    EXPECT_EQ(recs[0].std_error, 0.0);
    EXPECT_THROW(estimate_survival_weighted(ctx, {1.0, 2.0}, {}, 10, 1e-3, 4), std::domain_error);
    EXPECT_THROW(estimate_survival_weighted(ctx, {1.0, 2.0}, {-1.0}, 10, 1e-3, 4), std::domain_error);
}
