#include "normidx/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace normidx {

namespace {

// Plain sum-of-squared-differences distance, independent of the norm
// decomposition used by the indexed paths.
double direct_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

void require_dim(std::span<const double> query, const Dataset& data) {
    if (query.size() != data.dim())
        throw std::invalid_argument("query has " + std::to_string(query.size()) +
                                    " coordinates, dataset rows have " +
                                    std::to_string(data.dim()));
}

}  // namespace

std::vector<Neighbor> oracle_knn(const Dataset& data,
                                 std::span<const double> query, std::size_t k) {
    require_dim(query, data);
    if (k < 1 || k > data.size())
        throw std::invalid_argument("k must be in [1, " +
                                    std::to_string(data.size()) + "], got " +
                                    std::to_string(k));
    std::vector<Neighbor> all;
    all.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        all.push_back({i, direct_distance(query, data.row(i))});
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k),
                      all.end(), neighbor_less);
    all.resize(k);
    return all;
}

std::vector<Neighbor> oracle_range(const Dataset& data,
                                   std::span<const double> query, double r) {
    require_dim(query, data);
    if (!(r >= 0.0))
        throw std::invalid_argument("range radius must be >= 0");
    std::vector<Neighbor> hits;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double dist = direct_distance(query, data.row(i));
        if (dist <= r) hits.push_back({i, dist});
    }
    std::sort(hits.begin(), hits.end(), neighbor_less);
    return hits;
}

}  // namespace normidx
