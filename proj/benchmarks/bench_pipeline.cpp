#include "scpna/affinity.hpp"
#include "scpna/pipeline.hpp"
#include "scpna/pruning.hpp"
#include "scpna/synth.hpp"

#include <benchmark/benchmark.h>

namespace {

// Four speakers at 1:9 imbalance, scaled so that n = state.range(0) roughly.
scpna::SynthRecording recording(int n) {
    scpna::SynthSpec spec;
    spec.num_speakers = 4;
    const int unit = std::max(1, n / 20);
    spec.segments_per_speaker = {unit, 3 * unit, 7 * unit, 9 * unit};
    spec.noise_sigma = 0.1;
    spec.seed = 17;
    return scpna::generate(spec);
}

void run_method(benchmark::State& state, scpna::Method method) {
    const auto rec = recording(static_cast<int>(state.range(0)));
    scpna::RunConfig cfg;
    cfg.method = method;
    if (method == scpna::Method::csc) cfg.alpha = 0.6;
    std::uint64_t eig = 0;
    for (auto _ : state) {
        const auto r = scpna::run_pipeline(rec.embeddings, cfg);
        eig = r.eig_decomp_count;
        benchmark::DoNotOptimize(r.labels);
    }
    state.counters["n"] = static_cast<double>(rec.embeddings.size());
    state.counters["eig_decomps"] = static_cast<double>(eig);
}

void BM_ScPna(benchmark::State& s) { run_method(s, scpna::Method::sc_pna); }
void BM_EerDelta(benchmark::State& s) { run_method(s, scpna::Method::eer_delta); }
void BM_Csc(benchmark::State& s) { run_method(s, scpna::Method::csc); }
void BM_Asc(benchmark::State& s) { run_method(s, scpna::Method::asc); }

void BM_PruneScPna(benchmark::State& state) {
    const auto a = scpna::cosine_affinity(recording(static_cast<int>(state.range(0))).embeddings);
    for (auto _ : state) benchmark::DoNotOptimize(scpna::prune_sc_pna(a, 20.0));
}

void BM_PruneCsc(benchmark::State& state) {
    const auto a = scpna::cosine_affinity(recording(static_cast<int>(state.range(0))).embeddings);
    for (auto _ : state) benchmark::DoNotOptimize(scpna::prune_csc_alpha(a, 0.6));
}

}  // namespace

BENCHMARK(BM_ScPna)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EerDelta)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Csc)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Asc)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PruneScPna)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PruneCsc)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
