#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "normidx/dataset.hpp"
#include "normidx/norm_index.hpp"

namespace normidx {

/// One search result: a dataset row and its Euclidean distance to the query.
struct Neighbor {
    std::size_t original_index;
    double distance;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// (distance, original_index) lexicographic order — the tie rule used by
/// every search path and oracle in this library.
inline bool neighbor_less(const Neighbor& a, const Neighbor& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.original_index < b.original_index;
}

/// Norm interval [center_norm - radius, center_norm + radius]. By the
/// triangle inequality every row within Euclidean distance `radius` of a
/// point with norm `center_norm` has its norm inside the band.
struct SearchBand {
    double center_norm = 0.0;
    double radius = 0.0;

    double lo() const { return center_norm - radius; }
    double hi() const { return center_norm + radius; }
};

/// Instrumentation for one query. candidates_evaluated counts distance
/// evaluations; the scanned range is the final contiguous position window,
/// so candidates_evaluated == scanned_end - scanned_begin certifies each
/// candidate was evaluated exactly once.
struct SearchStats {
    std::size_t candidates_evaluated = 0;
    std::size_t expansions = 0;
    std::size_t scanned_begin = 0;
    std::size_t scanned_end = 0;
    double expansion_step = 0.0;
};

/// Search band for an in-dataset point: radius = min Euclidean distance to
/// the rows immediately above/below `pos` in norm order (whichever exist).
/// A single-row dataset gets radius 0. Throws std::out_of_range for
/// pos >= n and BindingError on an index/dataset mismatch.
SearchBand nnsa_radius(const NormIndex& index, const Dataset& data,
                       std::size_t pos);

/// Exact k nearest neighbors, ascending by (distance, original_index).
///
/// The query's norm is located in the sorted norms by binary search; an
/// initial radius comes from the immediate norm-neighbors (nnsa_radius for
/// in-dataset queries, the distance to the insertion-adjacent row
/// otherwise). Candidates inside the norm band are evaluated through the
/// cached-norm decomposition, and the band grows additively by the initial
/// radius until the kth-best distance fits inside it or the band covers all
/// norms. Each candidate is evaluated at most once, so the result always
/// equals the brute-force answer under the same tie rule.
///
/// Throws std::invalid_argument for k outside [1, n] and BindingError on an
/// index/dataset mismatch.
std::vector<Neighbor> knn_exact(const NormIndex& index, const Dataset& data,
                                std::span<const double> query, std::size_t k,
                                SearchStats* stats = nullptr);

/// All rows within distance r of the query, ascending by
/// (distance, original_index). Only candidates in the norm band
/// [q_norm - r, q_norm + r] are evaluated. Throws std::invalid_argument on
/// r < 0 and BindingError on a mismatch.
std::vector<Neighbor> range_search(const NormIndex& index, const Dataset& data,
                                   std::span<const double> query, double r);

}  // namespace normidx
