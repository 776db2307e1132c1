#include <benchmark/benchmark.h>

#include <random>

#include "sle2g/density.hpp"
#include "sle2g/green.hpp"
#include "sle2g/hsle.hpp"
#include "sle2g/specfun.hpp"
#include "sle2g/timecurve.hpp"
#include "sle2g/trig.hpp"

using namespace sle2g;

namespace {

const KappaContext& ctx6() {
    static const KappaContext ctx = KappaContext::make(6);
    return ctx;
}

const SpectralBasis& basis6() {
    static const SpectralBasis basis(ctx6(), 40);
    return basis;
}

void BM_HypF(benchmark::State& s) {
    double x = 0.0;
    for (auto _ : s) {
        benchmark::DoNotOptimize(hyp_F(ctx6(), x));
        x = x < 0.99 ? x + 0.01 : 0.0;
    }
}
BENCHMARK(BM_HypF);

void BM_GreenDisc(benchmark::State& s) {
    const BoundaryConfig cfg = BoundaryConfig::symmetric();
    for (auto _ : s) benchmark::DoNotOptimize(greens_disc(ctx6(), {0.1, -0.2}, cfg));
}
BENCHMARK(BM_GreenDisc);

void BM_BasisValue(benchmark::State& s) {
    const auto& b = basis6();
    const int n = static_cast<int>(s.range(0));
    for (auto _ : s) benchmark::DoNotOptimize(b.value(n, n / 2, 1, 0.3, -0.4));
}
BENCHMARK(BM_BasisValue)->Arg(4)->Arg(16)->Arg(40);

void BM_TransitionDensity(benchmark::State& s) {
    const auto& b = basis6();
    const double t = s.range(0) / 10.0;
    for (auto _ : s) benchmark::DoNotOptimize(p_t(b, 0.2, -0.3, 0.5, 0.1, t).value);
}
BENCHMARK(BM_TransitionDensity)->Arg(1)->Arg(10);

void BM_SurvivalP2(benchmark::State& s) {
    const auto& b = basis6();
    const ZState z0{kPi / 2, kPi / 2};
    b.survival_cache();
    for (auto _ : s) benchmark::DoNotOptimize(survival_P2(b, z0, 2.0).value);
}
BENCHMARK(BM_SurvivalP2);

void BM_ZStep(benchmark::State& s) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> N;
    ZState z{kPi / 2, kPi / 2};
    for (auto _ : s) {
        const auto nz = z_step(ctx6(), z, 1e-3, N(rng), N(rng));
        z = nz ? *nz : ZState{kPi / 2, kPi / 2};
        benchmark::DoNotOptimize(z);
    }
}
BENCHMARK(BM_ZStep);

void BM_ZAdvance(benchmark::State& s) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> N;
    for (auto _ : s) {
        ZState z{kPi / 2, kPi / 2};
        benchmark::DoNotOptimize(z_advance(ctx6(), z, 1.0, rng, N));
    }
}
BENCHMARK(BM_ZAdvance);

void BM_HsleSteps(benchmark::State& s) {
    const HsleMarks marks = hsle_marks(BoundaryConfig::symmetric(), 1);
    std::uint64_t seed = 0;
    for (auto _ : s) {
        HsleChain chain(ctx6(), marks, 1e-3, ++seed);
        for (int i = 0; i < 200 && chain.step(); ++i) {
        }
        benchmark::DoNotOptimize(chain.capacity());
    }
}
BENCHMARK(BM_HsleSteps);

}  // namespace

BENCHMARK_MAIN();
