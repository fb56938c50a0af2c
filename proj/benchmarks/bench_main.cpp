#include <benchmark/benchmark.h>

#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "normidx/distance.hpp"
#include "normidx/generate.hpp"
#include "normidx/kmeans.hpp"
#include "normidx/norm_index.hpp"
#include "normidx/oracle.hpp"
#include "normidx/search.hpp"

using namespace normidx;

namespace {

// Datasets and indexes are expensive to regenerate per benchmark run, and
// google-benchmark re-enters each function many times while calibrating.
const Dataset& cached_uniform(std::size_t n, std::size_t d) {
    static std::map<std::pair<std::size_t, std::size_t>, Dataset> cache;
    const auto key = std::make_pair(n, d);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, generate_uniform(n, d, 7 + n + d, -1.0, 1.0))
                 .first;
    return it->second;
}

const NormIndex& cached_index(std::size_t n, std::size_t d) {
    static std::map<std::pair<std::size_t, std::size_t>, NormIndex> cache;
    const auto key = std::make_pair(n, d);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, build_index(cached_uniform(n, d))).first;
    return it->second;
}

std::vector<std::vector<double>> query_pool(std::size_t d, std::size_t count) {
    const Dataset pool = generate_uniform(count, d, 4242, -1.0, 1.0);
    std::vector<std::vector<double>> queries(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto row = pool.row(i);
        queries[i].assign(row.begin(), row.end());
    }
    return queries;
}

void BM_BuildIndex(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Dataset& data = cached_uniform(n, 32);
    for (auto _ : state) {
        NormIndex index = build_index(data);
        benchmark::DoNotOptimize(index);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildIndex)
    ->RangeMultiplier(8)
    ->Range(1 << 10, 1 << 16)
    ->Complexity(benchmark::oNLogN);

void BM_KnnIndexed(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    const std::size_t d = 16;
    const Dataset& data = cached_uniform(n, d);
    const NormIndex& index = cached_index(n, d);
    const auto queries = query_pool(d, 64);
    std::size_t i = 0;
    for (auto _ : state) {
        auto result = knn_exact(index, data, queries[i++ % queries.size()], k);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_KnnIndexed)
    ->ArgsProduct({{1 << 12, 1 << 15}, {1, 10}});

void BM_KnnBrute(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    const std::size_t d = 16;
    const Dataset& data = cached_uniform(n, d);
    const auto queries = query_pool(d, 64);
    std::size_t i = 0;
    for (auto _ : state) {
        auto result = oracle_knn(data, queries[i++ % queries.size()], k);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_KnnBrute)
    ->ArgsProduct({{1 << 12, 1 << 15}, {1, 10}});

void BM_RangeSearch(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::size_t d = 16;
    const Dataset& data = cached_uniform(n, d);
    const NormIndex& index = cached_index(n, d);
    const auto queries = query_pool(d, 64);
    // Radius sized to a typical 10th-neighbor distance, so hit counts stay
    // small and comparable across n.
    const double r = oracle_knn(data, queries[0], 10).back().distance;
    std::size_t i = 0;
    for (auto _ : state) {
        auto result = range_search(index, data, queries[i++ % queries.size()], r);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_RangeSearch)->Arg(1 << 12)->Arg(1 << 15);

void BM_DistanceDecomposed(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto queries = query_pool(d, 2);
    const double nx = euclidean_norm(queries[0]);
    const double ny = euclidean_norm(queries[1]);
    for (auto _ : state) {
        const double dist =
            distance_from_norms(nx, ny, dot_product(queries[0], queries[1]));
        benchmark::DoNotOptimize(dist);
    }
}
BENCHMARK(BM_DistanceDecomposed)->Arg(16)->Arg(200);

void BM_DistanceDirect(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto queries = query_pool(d, 2);
    for (auto _ : state) {
        double sq = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double diff = queries[0][i] - queries[1][i];
            sq += diff * diff;
        }
        const double dist = std::sqrt(sq);
        benchmark::DoNotOptimize(dist);
    }
}
BENCHMARK(BM_DistanceDirect)->Arg(16)->Arg(200);

void BM_LloydIteration(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::size_t d = 8;
    const Dataset& data = cached_uniform(n, d);
    const NormIndex& index = cached_index(n, d);
    const auto start = random_row_centroids(data, 8, 11);
    LloydOptions options;
    options.max_iter = 1;  // cost of a single assignment + update pass
    options.index = &index;
    for (auto _ : state) {
        auto result = lloyd(data, start, options);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_LloydIteration)->Arg(1 << 12)->Arg(1 << 15);

}  // namespace

BENCHMARK_MAIN();
