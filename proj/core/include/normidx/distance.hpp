#pragma once

#include <span>

namespace normidx {

/// sqrt of the sum of squared coordinates. Throws std::invalid_argument
/// on an empty vector or a non-finite coordinate.
double euclidean_norm(std::span<const double> v);

/// Plain sequential dot product. Sizes must match.
double dot_product(std::span<const double> x, std::span<const double> y);

/// Distance from cached norms and one dot product:
/// sqrt(max(0, norm_x^2 + norm_y^2 - 2*dot_xy)). The clamp at zero absorbs
/// round-off for near-identical vectors.
double distance_from_norms(double norm_x, double norm_y, double dot_xy);

/// dot(x, y) / (norm_x * norm_y), clamped to [-1, 1]. Throws
/// std::domain_error when either norm is zero (similarity undefined).
double cosine_similarity(std::span<const double> x, std::span<const double> y,
                         double norm_x, double norm_y);

}  // namespace normidx
