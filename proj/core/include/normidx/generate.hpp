#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "normidx/dataset.hpp"

namespace normidx {

/// n x d dataset with coordinates uniform in [lo, hi). Identical seeds give
/// identical datasets on any platform.
Dataset generate_uniform(std::size_t n, std::size_t d, std::uint64_t seed,
                         double lo = -1.0, double hi = 1.0);

/// Gaussian blobs around the given centers (points assigned round-robin),
/// labeled with the generating center id ("0", "1", ...).
Dataset generate_blobs(const std::vector<std::vector<double>>& centers,
                       std::size_t n, double spread, std::uint64_t seed);

/// Same, with `n_centers` centers drawn uniformly from [-50, 50)^d.
Dataset generate_blobs(std::size_t n, std::size_t d, std::size_t n_centers,
                       double spread, std::uint64_t seed);

/// Per-label split: each class contributes round(test_fraction * count)
/// rows to the test set, chosen by a seeded shuffle. Row order within each
/// part follows the original dataset. Returns (train, test).
std::pair<Dataset, Dataset> stratified_split(const Dataset& data,
                                             double test_fraction,
                                             std::uint64_t seed);

}  // namespace normidx
