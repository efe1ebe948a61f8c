#include <benchmark/benchmark.h>

#include "levyx/expand.hpp"
#include "levyx/mc.hpp"
#include "levyx/payoff.hpp"
#include "levyx/presets.hpp"
#include "levyx/pricing.hpp"

using namespace levyx;

namespace {

PricingRequest strike_batch(int order, int strikes) {
    const Preset p = make_preset("cev-gauss");
    PricingRequest r;
    r.model = p.model;
    r.x0 = p.x0;
    r.order = order;
    r.T = 1.0;
    r.implied_vol = false;
    for (int i = 0; i < strikes; ++i) r.strikes.push_back(-1.2 + 1.9 * i / std::max(strikes - 1, 1));
    return r;
}

}  // namespace

static void BM_PriceStrikeBatch(benchmark::State& state) {
    const PricingRequest r = strike_batch(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(price_option(r));
    state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_PriceStrikeBatch)->ArgsProduct({{0, 1, 2, 3}, {5, 25}})->Unit(benchmark::kMillisecond);

static void BM_TwoPointVgBatch(benchmark::State& state) {
    const Preset p = make_preset("cev-vg");
    PricingRequest r;
    r.model = p.model;
    r.basis.family = BasisFamily::TwoPoint;
    r.order = 2;
    r.T = 0.5;
    r.strikes = {-0.6931, -0.4185, -0.1438, 0.1308, 0.4055};
    r.implied_vol = false;
    for (auto _ : state) benchmark::DoNotOptimize(price_option(r));
}
BENCHMARK(BM_TwoPointVgBatch)->Unit(benchmark::kMillisecond);

static void BM_HomogeneousKernel(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const auto e = taylor_expand(cev_gauss_model(), 0.0, N);
    const HomogeneousEngine engine(e, N);
    TermKernel k;
    ExpandWorkspace ws;
    double re = -10.0;
    for (auto _ : state) {
        engine.kernel(cplx(re, 0.5), k, ws);
        benchmark::DoNotOptimize(k.phi0);
        re = re > 10.0 ? -10.0 : re + 0.37;
    }
}
BENCHMARK(BM_HomogeneousKernel)->DenseRange(0, 4);

static void BM_TermValues(benchmark::State& state) {
    const auto e = taylor_expand(cev_gauss_model(), 0.0, 3);
    const auto put = PayoffTransform::put(-0.1438).hat_jet();
    for (auto _ : state) benchmark::DoNotOptimize(build_terms_homogeneous(e, put, 1.0, 3, cplx(1.3, 0.5)));
}
BENCHMARK(BM_TermValues);

static void BM_MonteCarloStep(benchmark::State& state) {
    const Preset p = make_preset(state.range(0) == 0 ? "cev-gauss" : "cev-vg");
    SimulationConfig cfg;
    cfg.scheme = default_scheme(p.model);
    cfg.paths = 10000;
    cfg.dt = 1e-3;
    cfg.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(simulate_paths(p.model, cfg, p.x0, 0.0, {0.1}));
    // path-steps per second
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.paths) * 100);
}
BENCHMARK(BM_MonteCarloStep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
