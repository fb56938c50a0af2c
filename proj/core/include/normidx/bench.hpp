#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "normidx/dataset.hpp"

namespace normidx {

/// One timing row of a sweep: the swept parameter (dimension count, row
/// count, or k), the variant arm ("nnsa" or "brute"), the median wall-clock
/// seconds over the repetitions, and the per-k accuracy where the sweep
/// measures classification.
struct BenchRecord {
    std::int64_t param = 0;
    std::string variant;
    double seconds = 0.0;
    int repetitions = 1;
    std::optional<double> accuracy;
};

/// Index build time across dimension counts at fixed n. Data is generated
/// once per parameter; the median of `reps` timed builds is recorded.
std::vector<BenchRecord> bench_build_dims(std::size_t n,
                                          const std::vector<std::size_t>& dims,
                                          int reps, std::uint64_t seed);

/// Index build time across dataset sizes at fixed d.
std::vector<BenchRecord> bench_build_sizes(const std::vector<std::size_t>& sizes,
                                           std::size_t d, int reps,
                                           std::uint64_t seed);

/// Times KNN prediction over a stratified 80/20 split of labeled data, the
/// indexed search against the exhaustive oracle, for each k. Both arms use
/// the same vote rule, so their accuracies are equal by construction; each
/// record carries its arm's accuracy. `threads` > 1 spreads the timed
/// queries of each arm over that many workers (results are unaffected).
std::vector<BenchRecord> bench_knn(const Dataset& labeled_data,
                                   const std::vector<std::size_t>& ks, int reps,
                                   std::uint64_t split_seed, int threads = 1);

/// CSV rendering: header `param,variant,seconds`, plus a trailing
/// `accuracy` column when any record carries one.
std::string bench_to_csv(const std::vector<BenchRecord>& records);

/// WCSS-vs-k table for both clustering arms plus their elbow picks.
///
/// The "nnsa" arm reduces the band-sweep seeds agglomeratively to each k and
/// runs Lloyd from there; it exists only for k up to the seed count. The
/// "random" arm runs Lloyd from k seeded random rows. Rows are ordered by
/// k then arm name.
struct ClusterReport {
    struct Row {
        int k;
        std::string arm;  // "nnsa" | "random"
        double wcss;
    };
    std::vector<Row> rows;
    std::size_t seed_count = 0;
    int k_opt_nnsa = 0;
    int k_opt_random = 0;
};

ClusterReport cluster_report(const Dataset& data, int k_min, int k_max,
                             std::uint64_t seed);

/// CSV rendering: header `k,arm,wcss`.
std::string cluster_report_to_csv(const ClusterReport& report);

}  // namespace normidx
