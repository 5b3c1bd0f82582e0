#include <benchmark/benchmark.h>

#include "svcq/kernels.hpp"
#include "svcq/rng.hpp"

namespace {

svcq::Dataset random_points(long m, long n, std::uint64_t seed) {
    svcq::SplitMix64 rng(seed);
    svcq::Dataset d;
    d.points.resize(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j) d.points(i, j) = rng.gaussian();
    for (long i = 0; i < m; ++i) d.ids.push_back("p" + std::to_string(i));
    return d;
}

void bm_kernel_matrix_gaussian(benchmark::State& state) {
    const auto d = random_points(state.range(0), 8, 1);
    const auto spec = svcq::KernelSpec::gaussian(0.7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(svcq::kernel_matrix(spec, d));
    }
}

}  // namespace

BENCHMARK(bm_kernel_matrix_gaussian)->Arg(64)->Arg(256)->Arg(512);
