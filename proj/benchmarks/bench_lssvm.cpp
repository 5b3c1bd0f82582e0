#include <benchmark/benchmark.h>

#include "svcq/lssvm.hpp"
#include "svcq/rng.hpp"

namespace {

void bm_train(benchmark::State& state) {
    const long m = state.range(0);
    svcq::SplitMix64 rng(3);
    svcq::Dataset d;
    d.points.resize(m, 4);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < 4; ++j) d.points(i, j) = rng.gaussian();
    for (long i = 0; i < m; ++i) d.ids.push_back("p" + std::to_string(i));
    std::vector<int> labels;
    for (long i = 0; i < m; ++i) labels.push_back(i % 2 ? 1 : -1);
    svcq::TrainConfig cfg;

    for (auto _ : state) {
        benchmark::DoNotOptimize(svcq::train(d, labels, svcq::KernelSpec::gaussian(0.5), cfg));
    }
}

}  // namespace

BENCHMARK(bm_train)->Arg(32)->Arg(128)->Arg(256);
