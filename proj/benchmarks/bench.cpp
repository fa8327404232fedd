#include <benchmark/benchmark.h>

#include "onlinecol/adversary_det.hpp"
#include "onlinecol/adversary_rand.hpp"
#include "onlinecol/algorithms.hpp"
#include "onlinecol/oracles.hpp"

using namespace onlinecol;

namespace {

void bm_build_det(benchmark::State& state) {
    adversary::DetOptions opt;
    opt.d = 4;
    opt.k = static_cast<int>(state.range(0));
    opt.audit = false;
    long long vertices = 0;
    for (auto _ : state) {
        algorithms::FirstFit ff;
        adversary::DetResult res = adversary::build_gk_det(ff, opt);
        benchmark::DoNotOptimize(res.root_color_count);
        vertices += res.structure_size;
    }
    state.SetItemsProcessed(vertices);
}
BENCHMARK(bm_build_det)->Arg(6)->Arg(8)->Arg(10);

void bm_sample_rand(benchmark::State& state) {
    int k = static_cast<int>(state.range(0));
    std::uint64_t trial = 0;
    long long vertices = 0;
    for (auto _ : state) {
        adversary::RandResult res = adversary::sample_gk(SplitRng(1).split(trial++), 4, k, false);
        benchmark::DoNotOptimize(res.structure_size);
        vertices += res.structure_size;
    }
    state.SetItemsProcessed(vertices);
}
BENCHMARK(bm_sample_rand)->Arg(2)->Arg(3);

void bm_first_fit(benchmark::State& state) {
    adversary::RandResult res =
        adversary::sample_gk(SplitRng(2), 4, static_cast<int>(state.range(0)), false);
    long long vertices = 0;
    for (auto _ : state) {
        algorithms::FirstFit ff;
        Transcript t = algorithms::run_online(ff, res.instance);
        benchmark::DoNotOptimize(t.num_colors_total());
        vertices += res.structure_size;
    }
    state.SetItemsProcessed(vertices);
}
BENCHMARK(bm_first_fit)->Arg(2)->Arg(3);

void bm_check_chordal(benchmark::State& state) {
    adversary::RandResult res =
        adversary::sample_gk(SplitRng(3), 4, static_cast<int>(state.range(0)), false);
    for (auto _ : state) {
        auto r = oracles::check_chordal(res.graph);
        benchmark::DoNotOptimize(r.chordal());
    }
    state.SetItemsProcessed(state.iterations() * res.graph.num_vertices());
}
BENCHMARK(bm_check_chordal)->Arg(2)->Arg(3);

} // namespace

BENCHMARK_MAIN();
