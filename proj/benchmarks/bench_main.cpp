#include <benchmark/benchmark.h>

#include "torsion_fano/basket_engine.hpp"
#include "torsion_fano/catalog.hpp"
#include "torsion_fano/molien.hpp"
#include "torsion_fano/orbifold_rr.hpp"
#include "torsion_fano/pipeline.hpp"

using namespace tfano;

namespace {

const Catalog& catalog() {
    static const Catalog cat = Catalog::load(TFANO_BENCH_DATA_DIR);
    return cat;
}

// arg 0: Z2xZ2, 1: Z2xZ2xZ2, 2: Z2xZ2xZ2xZ2; arg 1: threads
void BM_Enumerate(benchmark::State& state) {
    static const char* groups[] = {"Z2xZ2", "Z2xZ2xZ2", "Z2xZ2xZ2xZ2"};
    const auto g = FiniteAbelianGroup::parse(groups[state.range(0)]);
    EnumerationOptions opts;
    opts.threads = static_cast<unsigned>(state.range(1));
    // envelopes are cached per table, so build them once outside the loop
    enumerate_baskets(g, catalog().table(), opts);
    for (auto _ : state) {
        auto res = enumerate_baskets(g, catalog().table(), opts);
        benchmark::DoNotOptimize(res.baskets.data());
    }
    state.SetLabel(groups[state.range(0)]);
}
BENCHMARK(BM_Enumerate)->Args({0, 1})->Args({1, 1})->Args({2, 1})->Args({2, 4})->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_Automorphisms(benchmark::State& state) {
    const auto g = FiniteAbelianGroup::parse("Z2xZ2xZ2xZ2");
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_automorphisms(g, 1 << 20).size());
}
BENCHMARK(BM_Automorphisms)->Unit(benchmark::kMillisecond);

void BM_RRSeries(benchmark::State& state) {
    const auto x = quotient_data(catalog(), catalog().record("ex3"));
    for (auto _ : state) {
        auto s = equivariant_hilbert_series(x, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(s.coeffs.data());
    }
}
BENCHMARK(BM_RRSeries)->Arg(12)->Arg(40);

void BM_Molien(benchmark::State& state) {
    const auto& r = catalog().record(state.range(0) ? "no1c" : "ex3");
    const auto& y = catalog().cover(r.cover);
    const auto act = canonical_lift(y, record_action(r));
    for (auto _ : state) {
        auto s = molien_series(y, act, 12);
        benchmark::DoNotOptimize(s.coeffs.data());
    }
}
BENCHMARK(BM_Molien)->Arg(0)->Arg(1);

void BM_ExpandRecover(benchmark::State& state) {
    const auto x = quotient_data(catalog(), catalog().record("ex3"));
    const auto s = equivariant_hilbert_series(x, 24);
    const auto& y = catalog().cover("Y222");
    const auto act = canonical_lift(y, record_action(catalog().record("ex3")));
    std::vector<DenominatorFactor> den;
    for (std::size_t i = 0; i < y.weights.size(); ++i) den.push_back({act.coordinate_characters[i], y.weights[i]});
    for (auto _ : state) {
        auto p = recover_numerator(s, den, 6);
        RationalPresentation rp{p, den};
        benchmark::DoNotOptimize(expand(rp, 24).coeffs.data());
    }
}
BENCHMARK(BM_ExpandRecover);

void BM_VerifyRecord(benchmark::State& state) {
    const auto& r = catalog().record("no1c");
    for (auto _ : state) benchmark::DoNotOptimize(verify_record(catalog(), r).passed());
}
BENCHMARK(BM_VerifyRecord)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
