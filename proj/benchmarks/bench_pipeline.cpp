// Microbenchmarks for the hot paths: pairwise similarity, the cached
// engine, exemplar selection, and classification.

#include "ssimrl/classifier.hpp"
#include "ssimrl/selection.hpp"
#include "ssimrl/ssim.hpp"
#include "ssimrl/synthetic.hpp"

#include <benchmark/benchmark.h>

#include <array>
#include <vector>

using namespace ssimrl;

namespace {

std::pair<GrayImage, GrayImage> sample_pair() {
    HandwritingKnobs knobs;
    const auto data = make_handwritten_samples(1, 12, knobs);
    return {data.images[3], data.images[8]};
}

void bench_ssim_global(benchmark::State& state) {
    SsimParams params;
    params.mode = SsimMode::Global;
    const auto [x, y] = sample_pair();
    for (auto _ : state) benchmark::DoNotOptimize(ssim_global(x, y, params));
}
BENCHMARK(bench_ssim_global);

void bench_ssim_windowed(benchmark::State& state) {
    SsimParams params;
    const auto [x, y] = sample_pair();
    for (auto _ : state) benchmark::DoNotOptimize(ssim_windowed(x, y, params));
}
BENCHMARK(bench_ssim_windowed);

void bench_engine_pair(benchmark::State& state) {
    // The engine caches per-image filtered moments; this measures the
    // marginal cost of one additional pair once both images are prepared.
    SsimParams params;
    const auto [x, y] = sample_pair();
    const SsimEngine engine(params);
    const auto px = engine.prepare(x);
    const auto py = engine.prepare(y);
    for (auto _ : state) benchmark::DoNotOptimize(engine.similarity(px, py));
}
BENCHMARK(bench_engine_pair);

void bench_train_digit(benchmark::State& state) {
    const auto fonts = make_font_templates();
    SelectionConfig cfg;
    HandwritingKnobs knobs;
    const auto data = make_handwritten_samples(20, 9, knobs);
    std::vector<LabeledImage> candidates;
    for (int i = 0; i < 20; ++i)
        candidates.push_back({data.images[static_cast<std::size_t>(5) * 20 + i], 5,
                              static_cast<std::size_t>(i)});
    for (auto _ : state)
        benchmark::DoNotOptimize(train_digit(candidates, fonts[5], cfg,
                                             static_cast<unsigned>(state.range(0))));
}
BENCHMARK(bench_train_digit)->Arg(1)->Arg(4);

void bench_classify(benchmark::State& state) {
    const auto fonts = make_font_templates();
    std::array<ExemplarPool, 10> pools;
    std::array<FuzzyWeightTable, 10> tables;
    for (int d = 0; d < 10; ++d) {
        pools[d].digit = d;
        pools[d].fonts = fonts[d];
        tables[d].digit = d;
    }
    SsimParams params;
    const Classifier clf(pools, tables, AblationMode::SsimOnly, 1.0, params, 0.05);
    const auto [x, y] = sample_pair();
    for (auto _ : state) benchmark::DoNotOptimize(clf.classify(x));
}
BENCHMARK(bench_classify);

} // namespace

BENCHMARK_MAIN();
