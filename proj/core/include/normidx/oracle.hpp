#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "normidx/dataset.hpp"
#include "normidx/search.hpp"

namespace normidx {

// Exhaustive-scan baselines computing direct coordinate-difference
// distances. They deliberately share no implementation with the indexed
// search paths, so agreement between the two is a meaningful check.

/// k nearest rows by full scan, ascending by (distance, original_index).
/// Throws std::invalid_argument for k outside [1, n].
std::vector<Neighbor> oracle_knn(const Dataset& data,
                                 std::span<const double> query, std::size_t k);

/// All rows within distance r by full scan, same ordering. Throws
/// std::invalid_argument on r < 0.
std::vector<Neighbor> oracle_range(const Dataset& data,
                                   std::span<const double> query, double r);

}  // namespace normidx
