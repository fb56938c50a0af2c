#include "normidx/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "normidx/distance.hpp"

namespace normidx {

namespace {

// Squared distance through the norm decomposition, clamped at zero.
double sq_distance(std::span<const double> x, double x_norm,
                   std::span<const double> y, double y_norm) {
    const double sq = x_norm * x_norm + y_norm * y_norm - 2.0 * dot_product(x, y);
    return std::max(0.0, sq);
}

std::vector<double> row_norms(const Dataset& data, const NormIndex* index) {
    std::vector<double> norms(data.size());
    if (index) {
        index->check_binding(data);
        for (std::size_t i = 0; i < data.size(); ++i)
            norms[i] = index->norm_of_row(i);
    } else {
        for (std::size_t i = 0; i < data.size(); ++i)
            norms[i] = euclidean_norm(data.row(i));
    }
    return norms;
}

std::vector<double> centroid_norms(const std::vector<std::vector<double>>& centroids) {
    std::vector<double> norms(centroids.size());
    for (std::size_t c = 0; c < centroids.size(); ++c)
        norms[c] = euclidean_norm(centroids[c]);
    return norms;
}

void require_centroid_dims(const std::vector<std::vector<double>>& centroids,
                           std::size_t dim) {
    for (const auto& c : centroids)
        if (c.size() != dim)
            throw std::invalid_argument("centroid dimension differs from data");
}

}  // namespace

SeedReport seed_centroids(const NormIndex& index, const Dataset& data) {
    index.check_binding(data);
    const std::size_t n = index.size();
    SeedReport report;
    std::vector<bool> covered(n, false);
    std::size_t n_covered = 0;

    const auto plant = [&](std::size_t pos) {
        const SearchBand band = nnsa_radius(index, data, pos);
        const PosRange range = index.band_positions(band.lo(), band.hi());
        std::size_t covered_first = 0;
        for (std::size_t p = range.begin; p < range.end; ++p)
            if (!covered[p]) {
                covered[p] = true;
                ++covered_first;
            }
        n_covered += covered_first;
        report.seed_positions.push_back(pos);
        report.seed_rows.push_back(index.entry(pos).original_index);
        report.bands.push_back(band);
        report.covered_counts.push_back(covered_first);
    };

    const std::size_t mid = n / 2;
    plant(mid);
    std::size_t up = mid;    // next probe at/above the midpoint
    std::size_t down = mid;  // next probe is down - 1
    while (n_covered < n) {
        while (up < n && covered[up]) ++up;
        if (up < n) plant(up);
        if (n_covered == n) break;
        while (down > 0 && covered[down - 1]) --down;
        if (down > 0) plant(down - 1);
    }
    report.coverage = n_covered == n;
    return report;
}

ClusteringResult lloyd(const Dataset& data,
                       const std::vector<std::vector<double>>& initial_centroids,
                       const LloydOptions& options) {
    const std::size_t n = data.size();
    const std::size_t d = data.dim();
    const std::size_t k = initial_centroids.size();
    if (k < 1 || k > n)
        throw std::invalid_argument("lloyd needs 1 <= k <= n centroids");
    require_centroid_dims(initial_centroids, d);
    if (options.max_iter < 1)
        throw std::invalid_argument("lloyd needs max_iter >= 1");

    const std::vector<double> norms = row_norms(data, options.index);

    ClusteringResult result;
    result.centroids = initial_centroids;
    result.assignments.assign(n, 0);
    std::vector<double> best_sq(n, 0.0);
    std::vector<std::size_t> sizes(k, 0);

    for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
        // Assign each row to the nearest centroid; ties take the smaller id.
        const std::vector<double> c_norms = centroid_norms(result.centroids);
        std::fill(sizes.begin(), sizes.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = data.row(i);
            std::size_t best_c = 0;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double sq =
                    sq_distance(row, norms[i], result.centroids[c], c_norms[c]);
                if (sq < best) {
                    best = sq;
                    best_c = c;
                }
            }
            result.assignments[i] = best_c;
            best_sq[i] = best;
            ++sizes[best_c];
        }

        // Re-seed each empty cluster with the row farthest from its assigned
        // centroid, drawn only from clusters that keep >= 1 member. With
        // k <= n a donor always exists.
        for (std::size_t e = 0; e < k; ++e) {
            if (sizes[e] != 0) continue;
            std::size_t steal = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (sizes[result.assignments[i]] < 2) continue;
                if (steal == n || best_sq[i] > best_sq[steal]) steal = i;
            }
            --sizes[result.assignments[steal]];
            result.assignments[steal] = e;
            sizes[e] = 1;
        }

        // Means of the post-repair assignment. A singleton made by the
        // repair gets its row as its centroid, so the cost never rises.
        std::vector<std::vector<double>> updated(k, std::vector<double>(d, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = data.row(i);
            auto& centroid = updated[result.assignments[i]];
            for (std::size_t j = 0; j < d; ++j) centroid[j] += row[j];
        }
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t j = 0; j < d; ++j)
                updated[c][j] /= static_cast<double>(sizes[c]);

        double moved_sq = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            double sq = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double diff = updated[c][j] - result.centroids[c][j];
                sq += diff * diff;
            }
            moved_sq = std::max(moved_sq, sq);
        }
        result.centroids = std::move(updated);
        result.iterations = iter + 1;

        const std::vector<double> new_norms = centroid_norms(result.centroids);
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            cost += sq_distance(data.row(i), norms[i],
                                result.centroids[result.assignments[i]],
                                new_norms[result.assignments[i]]);
        result.wcss_history.push_back(cost);

        if (std::sqrt(moved_sq) <= options.tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

double wcss(const Dataset& data, std::span<const std::size_t> assignments,
            const std::vector<std::vector<double>>& centroids,
            const NormIndex* index) {
    if (assignments.size() != data.size())
        throw std::invalid_argument("wcss needs one assignment per row");
    if (centroids.empty()) throw std::invalid_argument("wcss needs >= 1 centroid");
    require_centroid_dims(centroids, data.dim());

    const std::vector<double> norms = row_norms(data, index);
    const std::vector<double> c_norms = centroid_norms(centroids);
    double sum = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const std::size_t c = assignments[i];
        if (c >= centroids.size())
            throw std::invalid_argument("assignment " + std::to_string(c) +
                                        " out of range");
        sum += sq_distance(data.row(i), norms[i], centroids[c], c_norms[c]);
    }
    return sum;
}

int elbow_select(const std::vector<std::pair<int, double>>& wcss_by_k) {
    if (wcss_by_k.size() < 3)
        throw std::invalid_argument("elbow_select needs >= 3 (k, wcss) points");
    for (std::size_t i = 1; i < wcss_by_k.size(); ++i)
        if (wcss_by_k[i].first <= wcss_by_k[i - 1].first)
            throw std::invalid_argument("elbow_select needs strictly ascending k");

    int best_k = wcss_by_k[1].first;
    double best_curve = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < wcss_by_k.size(); ++i) {
        const double curve = wcss_by_k[i - 1].second - 2.0 * wcss_by_k[i].second +
                             wcss_by_k[i + 1].second;
        if (curve > best_curve) {
            best_curve = curve;
            best_k = wcss_by_k[i].first;
        }
    }
    return best_k;
}

std::vector<std::vector<double>> agglomerative_reduce(const Dataset& data,
                                                      const SeedReport& seeds,
                                                      std::size_t target_k) {
    const std::size_t s = seeds.seed_rows.size();
    if (s == 0 || seeds.covered_counts.size() != s)
        throw std::invalid_argument("agglomerative_reduce needs a seed report "
                                    "with matching rows and counts");
    if (target_k < 1 || target_k > s)
        throw std::invalid_argument("target_k must be in [1, seed count]");

    std::vector<std::vector<double>> centroids;
    std::vector<double> weights;
    centroids.reserve(s);
    for (std::size_t i = 0; i < s; ++i) {
        if (seeds.seed_rows[i] >= data.size())
            throw std::invalid_argument("seed row out of range");
        if (seeds.covered_counts[i] == 0)
            throw std::invalid_argument("seed weights must be >= 1");
        const auto row = data.row(seeds.seed_rows[i]);
        centroids.emplace_back(row.begin(), row.end());
        weights.push_back(static_cast<double>(seeds.covered_counts[i]));
    }

    while (centroids.size() > target_k) {
        std::size_t merge_a = 0, merge_b = 1;
        double best_sq = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a + 1 < centroids.size(); ++a)
            for (std::size_t b = a + 1; b < centroids.size(); ++b) {
                double sq = 0.0;
                for (std::size_t j = 0; j < centroids[a].size(); ++j) {
                    const double diff = centroids[a][j] - centroids[b][j];
                    sq += diff * diff;
                }
                if (sq < best_sq) {
                    best_sq = sq;
                    merge_a = a;
                    merge_b = b;
                }
            }
        const double wa = weights[merge_a], wb = weights[merge_b];
        for (std::size_t j = 0; j < centroids[merge_a].size(); ++j)
            centroids[merge_a][j] =
                (wa * centroids[merge_a][j] + wb * centroids[merge_b][j]) /
                (wa + wb);
        weights[merge_a] = wa + wb;
        centroids.erase(centroids.begin() + static_cast<std::ptrdiff_t>(merge_b));
        weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(merge_b));
    }
    return centroids;
}

std::vector<std::vector<double>> random_row_centroids(const Dataset& data,
                                                      std::size_t k,
                                                      std::uint64_t seed) {
    const std::size_t n = data.size();
    if (k < 1 || k > n)
        throw std::invalid_argument("random_row_centroids needs 1 <= k <= n");
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = i;
    std::mt19937_64 g(seed);
    std::vector<std::vector<double>> centroids;
    centroids.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::swap(rows[i], rows[i + g() % (n - i)]);
        const auto row = data.row(rows[i]);
        centroids.emplace_back(row.begin(), row.end());
    }
    return centroids;
}

}  // namespace normidx
