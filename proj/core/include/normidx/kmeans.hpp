#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "normidx/dataset.hpp"
#include "normidx/norm_index.hpp"
#include "normidx/search.hpp"

namespace normidx {

/// Result of the band sweep that picks initial centroids.
///
/// seed_positions are ordered positions in discovery order (mid point first,
/// then upward, then downward); seed_rows are the matching original row
/// indices. covered_counts[s] is how many positions seed s's band covered
/// first — the member weight used by agglomerative_reduce. coverage is true
/// when the bands jointly covered every ordered position (always holds at
/// termination).
struct SeedReport {
    std::vector<std::size_t> seed_positions;
    std::vector<std::size_t> seed_rows;
    std::vector<SearchBand> bands;
    std::vector<std::size_t> covered_counts;
    bool coverage = false;
};

/// Deterministic band sweep: start at ordered position n/2, carve its
/// nnsa_radius band, then repeatedly seed the first uncovered position above
/// the covered region, then symmetrically below, until every position is
/// covered. Each step covers at least its own seed, so the sweep takes at
/// most n steps.
SeedReport seed_centroids(const NormIndex& index, const Dataset& data);

struct LloydOptions {
    std::size_t max_iter = 100;
    double tol = 1e-6;  // max centroid displacement declaring convergence
    /// Optional index bound to the dataset; row norms are then read from it
    /// instead of being recomputed. Centroid norms are recomputed once per
    /// iteration either way.
    const NormIndex* index = nullptr;
};

struct ClusteringResult {
    std::vector<std::vector<double>> centroids;
    std::vector<std::size_t> assignments;
    std::vector<double> wcss_history;  // one value per iteration, non-increasing
    std::size_t iterations = 0;
    bool converged = false;

    double final_wcss() const { return wcss_history.back(); }
};

/// Standard Lloyd iterations from the given initial centroids. Distances go
/// through the cached-norm decomposition; assignment ties take the smallest
/// centroid id; a cluster that empties is re-seeded with the row farthest
/// from its assigned centroid. Throws std::invalid_argument on zero
/// centroids, more centroids than rows, or a dimension mismatch.
ClusteringResult lloyd(const Dataset& data,
                       const std::vector<std::vector<double>>& initial_centroids,
                       const LloydOptions& options = {});

/// Sum over rows of squared Euclidean distance to the assigned centroid,
/// via the cached-norm decomposition (norms read from `index` when given).
double wcss(const Dataset& data, std::span<const std::size_t> assignments,
            const std::vector<std::vector<double>>& centroids,
            const NormIndex* index = nullptr);

/// Elbow pick over an ascending (k, wcss) curve: the interior k maximizing
/// the second difference wcss(k-1) - 2*wcss(k) + wcss(k+1); ties take the
/// smallest k. Needs at least 3 points.
int elbow_select(const std::vector<std::pair<int, double>>& wcss_by_k);

/// Agglomerative centroid reduction. Starts one cluster per seed (centroid =
/// the seed's row vector, weight = its covered count), then repeatedly merges
/// the two closest centroids into their weight-weighted mean until target_k
/// remain. Throws std::invalid_argument when target_k is outside
/// [1, seed count].
std::vector<std::vector<double>> agglomerative_reduce(const Dataset& data,
                                                      const SeedReport& seeds,
                                                      std::size_t target_k);

/// Baseline initialization: k distinct rows drawn with a seeded generator.
std::vector<std::vector<double>> random_row_centroids(const Dataset& data,
                                                      std::size_t k,
                                                      std::uint64_t seed);

}  // namespace normidx
