#include "normidx/distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace normidx {

double euclidean_norm(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("euclidean_norm: empty vector");
    double sum = 0.0;
    for (double x : v) sum += x * x;
    if (!std::isfinite(sum)) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!std::isfinite(v[i]))
                throw std::invalid_argument(
                    "euclidean_norm: non-finite coordinate at position " +
                    std::to_string(i));
        throw std::invalid_argument("euclidean_norm: sum of squares overflows");
    }
    return std::sqrt(sum);
}

double dot_product(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("dot_product: dimension mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
    return sum;
}

double distance_from_norms(double norm_x, double norm_y, double dot_xy) {
    if (!std::isfinite(norm_x) || !std::isfinite(norm_y) || !std::isfinite(dot_xy))
        throw std::invalid_argument("distance_from_norms: non-finite input");
    const double sq = norm_x * norm_x + norm_y * norm_y - 2.0 * dot_xy;
    return std::sqrt(std::max(0.0, sq));
}

double cosine_similarity(std::span<const double> x, std::span<const double> y,
                         double norm_x, double norm_y) {
    if (norm_x <= 0.0 || norm_y <= 0.0)
        throw std::domain_error("cosine_similarity: undefined for zero-norm input");
    const double value = dot_product(x, y) / (norm_x * norm_y);
    return std::clamp(value, -1.0, 1.0);
}

}  // namespace normidx
