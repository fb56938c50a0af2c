#include "normidx/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>
#include <utility>

#include "normidx/generate.hpp"
#include "normidx/kmeans.hpp"
#include "normidx/knn.hpp"
#include "normidx/norm_index.hpp"
#include "normidx/oracle.hpp"
#include "normidx/search.hpp"
#include "normidx/text.hpp"

namespace normidx {

namespace {

volatile double g_sink = 0.0;  // keeps timed builds observable

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t mid = xs.size() / 2;
    return xs.size() % 2 == 1 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

template <typename Body>
double time_seconds(Body&& body) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

// Runs fn(0..m-1) over `threads` workers; order of execution is unspecified
// but every index runs exactly once.
template <typename Fn>
void for_each_row(std::size_t m, int threads, Fn&& fn) {
    if (threads <= 1) {
        for (std::size_t i = 0; i < m; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < m; i = next.fetch_add(1))
                fn(i);
        });
    for (auto& worker : pool) worker.join();
}

std::vector<BenchRecord> bench_build(const std::vector<std::size_t>& params,
                                     int reps, std::uint64_t seed,
                                     bool sweep_dims, std::size_t fixed) {
    if (reps < 1) throw std::invalid_argument("reps must be >= 1");
    if (params.empty()) throw std::invalid_argument("need >= 1 sweep value");
    std::vector<BenchRecord> records;
    for (const std::size_t p : params) {
        const std::size_t n = sweep_dims ? fixed : p;
        const std::size_t d = sweep_dims ? p : fixed;
        const Dataset data = generate_uniform(n, d, seed);
        std::vector<double> times;
        times.reserve(static_cast<std::size_t>(reps));
        for (int r = 0; r < reps; ++r)
            times.push_back(time_seconds([&] {
                const NormIndex index = build_index(data);
                g_sink = g_sink + index.entry(0).norm;
            }));
        records.push_back({static_cast<std::int64_t>(p), "nnsa", median(times),
                           reps, std::nullopt});
    }
    return records;
}

}  // namespace

std::vector<BenchRecord> bench_build_dims(std::size_t n,
                                          const std::vector<std::size_t>& dims,
                                          int reps, std::uint64_t seed) {
    return bench_build(dims, reps, seed, true, n);
}

std::vector<BenchRecord> bench_build_sizes(const std::vector<std::size_t>& sizes,
                                           std::size_t d, int reps,
                                           std::uint64_t seed) {
    return bench_build(sizes, reps, seed, false, d);
}

std::vector<BenchRecord> bench_knn(const Dataset& labeled_data,
                                   const std::vector<std::size_t>& ks, int reps,
                                   std::uint64_t split_seed, int threads) {
    if (reps < 1) throw std::invalid_argument("reps must be >= 1");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (ks.empty()) throw std::invalid_argument("need >= 1 value of k");

    const auto [train, test] = stratified_split(labeled_data, 0.2, split_seed);
    for (const std::size_t k : ks)
        if (k < 1 || k > train.size())
            throw std::invalid_argument("k must be in [1, " +
                                        std::to_string(train.size()) + "]");

    const NormIndex index = build_index(train);
    const auto& labels = train.labels();

    std::vector<BenchRecord> records;
    std::vector<std::string> predicted(test.size());
    for (const std::size_t k : ks) {
        for (const bool indexed : {true, false}) {
            std::vector<double> times;
            times.reserve(static_cast<std::size_t>(reps));
            for (int r = 0; r < reps; ++r)
                times.push_back(time_seconds([&] {
                    for_each_row(test.size(), threads, [&](std::size_t i) {
                        const auto neighbors =
                            indexed ? knn_exact(index, train, test.row(i), k)
                                    : oracle_knn(train, test.row(i), k);
                        predicted[i] = majority_label(neighbors, labels);
                    });
                }));
            std::size_t correct = 0;
            for (std::size_t i = 0; i < test.size(); ++i)
                if (predicted[i] == test.label(i)) ++correct;
            records.push_back({static_cast<std::int64_t>(k),
                               indexed ? "nnsa" : "brute", median(times), reps,
                               static_cast<double>(correct) /
                                   static_cast<double>(test.size())});
        }
    }
    return records;
}

std::string bench_to_csv(const std::vector<BenchRecord>& records) {
    const bool with_accuracy =
        std::any_of(records.begin(), records.end(),
                    [](const BenchRecord& r) { return r.accuracy.has_value(); });
    std::string out =
        with_accuracy ? "param,variant,seconds,accuracy\n" : "param,variant,seconds\n";
    for (const auto& r : records) {
        out += std::to_string(r.param);
        out += ',';
        out += r.variant;
        out += ',';
        out += to_decimal_string(r.seconds);
        if (with_accuracy) {
            out += ',';
            if (r.accuracy) out += to_decimal_string(*r.accuracy);
        }
        out += '\n';
    }
    return out;
}

ClusterReport cluster_report(const Dataset& data, int k_min, int k_max,
                             std::uint64_t seed) {
    if (k_min < 1 || k_max < k_min)
        throw std::invalid_argument("need 1 <= k_min <= k_max");
    if (static_cast<std::size_t>(k_max) > data.size())
        throw std::invalid_argument("k_max exceeds the number of rows");
    if (k_max - k_min + 1 < 3)
        throw std::invalid_argument("need >= 3 values of k for the elbow pick");

    const NormIndex index = build_index(data);
    LloydOptions options;
    options.index = &index;
    const SeedReport seeds = seed_centroids(index, data);

    ClusterReport report;
    report.seed_count = seeds.seed_rows.size();
    std::vector<std::pair<int, double>> nnsa_curve, random_curve;
    for (int k = k_min; k <= k_max; ++k) {
        // The seed reduction can only merge downward, so the nnsa arm stops
        // at the seed count.
        if (static_cast<std::size_t>(k) <= report.seed_count) {
            const auto start =
                agglomerative_reduce(data, seeds, static_cast<std::size_t>(k));
            const auto run = lloyd(data, start, options);
            report.rows.push_back({k, "nnsa", run.final_wcss()});
            nnsa_curve.emplace_back(k, run.final_wcss());
        }
        const auto start = random_row_centroids(
            data, static_cast<std::size_t>(k), seed + static_cast<std::uint64_t>(k));
        const auto run = lloyd(data, start, options);
        report.rows.push_back({k, "random", run.final_wcss()});
        random_curve.emplace_back(k, run.final_wcss());
    }

    // An arm too short for a second difference falls back to its largest k.
    const auto pick = [](const std::vector<std::pair<int, double>>& curve) {
        if (curve.size() >= 3) return elbow_select(curve);
        return curve.empty() ? 0 : curve.back().first;
    };
    report.k_opt_nnsa = pick(nnsa_curve);
    report.k_opt_random = pick(random_curve);
    return report;
}

std::string cluster_report_to_csv(const ClusterReport& report) {
    std::string out = "k,arm,wcss\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.k);
        out += ',';
        out += row.arm;
        out += ',';
        out += to_decimal_string(row.wcss);
        out += '\n';
    }
    return out;
}

}  // namespace normidx
