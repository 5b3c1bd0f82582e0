#include <benchmark/benchmark.h>

#include "svcq/qsvc.hpp"
#include "svcq/svc.hpp"

namespace {

void bm_cluster_finding_allones(benchmark::State& state) {
    const auto a = svcq::AdjacencyMatrix::all_ones(state.range(0));
    for (auto _ : state) {
        long scans = 0;
        benchmark::DoNotOptimize(svcq::cluster_finding(a, &scans));
    }
}

void bm_quantum_cluster_finding_allones(benchmark::State& state) {
    const auto a = svcq::AdjacencyMatrix::all_ones(state.range(0));
    svcq::QTrainConfig cfg;
    cfg.seed = 11;
    for (auto _ : state) {
        benchmark::DoNotOptimize(svcq::quantum_cluster_finding(a, cfg));
    }
}

}  // namespace

BENCHMARK(bm_cluster_finding_allones)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(bm_quantum_cluster_finding_allones)->Arg(256)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();
