#include <map>

#include <benchmark/benchmark.h>

#include "voxelaug/bench.hpp"
#include "voxelaug/metrics.hpp"
#include "voxelaug/pipeline.hpp"

using namespace voxelaug;

namespace {

const Sample& patch(int edge) {
    static std::map<int, Sample> cache;
    auto it = cache.find(edge);
    if (it == cache.end()) {
        it = cache.emplace(edge, make_synthetic_sample({edge, edge, edge}, 1)).first;
    }
    return it->second;
}

void BM_Transform(benchmark::State& state, std::string name) {
    const Sample& s = patch(static_cast<int>(state.range(0)));
    const TransformSpec spec = TransformSpec::make(name, 1.0);
    std::uint64_t k = 0;
    for (auto _ : state) {
        RngStream rng(7, k++);
        benchmark::DoNotOptimize(apply_transform(s, spec, rng));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.image.size()));
}

void BM_Pipeline(benchmark::State& state) {
    const Sample& s = patch(static_cast<int>(state.range(0)));
    const PipelineConfig cfg = state.range(1) != 0 ? force_all_probabilities(default_config()) : default_config();
    std::uint64_t id = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_pipeline(s, cfg, id++, 0));
    }
}

void BM_Dice(benchmark::State& state) {
    const Sample& a = patch(static_cast<int>(state.range(0)));
    const Sample b = make_synthetic_sample(a.labels.dims(), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dice_per_class(a.labels, b.labels));
    }
}

int register_transforms() {
    for (const auto& info : transform_registry()) {
        benchmark::RegisterBenchmark(("BM_Transform/" + std::string(info.name)).c_str(), BM_Transform,
                                     std::string(info.name))
            ->Arg(64)
            ->Arg(128)
            ->Unit(benchmark::kMillisecond);
    }
    return 0;
}

const int registered = register_transforms();

}  // namespace

BENCHMARK(BM_Pipeline)->Args({128, 0})->Args({128, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Dice)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
