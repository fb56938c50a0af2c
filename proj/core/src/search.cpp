#include "normidx/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "normidx/distance.hpp"

namespace normidx {

namespace {

// Distance through the cached-norm decomposition. Re-squaring the cached
// norms leaves noise of order eps * (nx^2 + ny^2), so coordinate-equal
// vectors would come out at ~1e-8 instead of 0; when the squared distance
// falls under that noise floor and the vectors compare equal, the distance
// is exactly 0.
double candidate_distance(std::span<const double> query, double q_norm,
                          std::span<const double> row, double row_norm) {
    const double dot = dot_product(query, row);
    const double scale = q_norm * q_norm + row_norm * row_norm;
    const double sq = scale - 2.0 * dot;
    if (sq <= 16.0 * std::numeric_limits<double>::epsilon() * scale &&
        std::equal(query.begin(), query.end(), row.begin(), row.end()))
        return 0.0;
    return distance_from_norms(q_norm, row_norm, dot);
}

// Smallest strictly positive gap between adjacent norms, if any.
std::optional<double> smallest_positive_gap(const NormIndex& index) {
    std::optional<double> best;
    for (std::size_t pos = 1; pos < index.size(); ++pos) {
        const double gap = index.entry(pos).norm - index.entry(pos - 1).norm;
        if (gap > 0.0 && (!best || gap < *best)) best = gap;
    }
    return best;
}

void require_query_dim(std::span<const double> query, const Dataset& data) {
    if (query.size() != data.dim())
        throw std::invalid_argument("query has " + std::to_string(query.size()) +
                                    " coordinates, dataset rows have " +
                                    std::to_string(data.dim()));
}

}  // namespace

SearchBand nnsa_radius(const NormIndex& index, const Dataset& data,
                       std::size_t pos) {
    index.check_binding(data);
    const auto& center = index.entry(pos);
    const auto row = data.row(center.original_index);
    double radius = std::numeric_limits<double>::infinity();
    const auto consider = [&](std::size_t adjacent) {
        const auto& e = index.entry(adjacent);
        radius = std::min(radius, candidate_distance(row, center.norm,
                                                     data.row(e.original_index),
                                                     e.norm));
    };
    if (pos > 0) consider(pos - 1);
    if (pos + 1 < index.size()) consider(pos + 1);
    if (!std::isfinite(radius)) radius = 0.0;
    return {center.norm, radius};
}

std::vector<Neighbor> knn_exact(const NormIndex& index, const Dataset& data,
                                std::span<const double> query, std::size_t k,
                                SearchStats* stats) {
    index.check_binding(data);
    require_query_dim(query, data);
    const std::size_t n = data.size();
    if (k < 1 || k > n)
        throw std::invalid_argument("k must be in [1, " + std::to_string(n) +
                                    "], got " + std::to_string(k));

    const double q_norm = euclidean_norm(query);

    // Initial radius: in-dataset queries reuse their own adjacent-row radius,
    // everything else takes the distance to the rows flanking the norm's
    // insertion point.
    double r0 = std::numeric_limits<double>::infinity();
    const PosRange tie = index.band_positions(q_norm, q_norm);
    std::optional<std::size_t> self_pos;
    for (std::size_t pos = tie.begin; pos < tie.end; ++pos) {
        const auto row = data.row(index.entry(pos).original_index);
        if (std::equal(query.begin(), query.end(), row.begin(), row.end())) {
            self_pos = pos;
            break;
        }
    }
    if (self_pos) {
        r0 = nnsa_radius(index, data, *self_pos).radius;
    } else {
        const auto consider = [&](std::size_t pos) {
            const auto& e = index.entry(pos);
            r0 = std::min(r0, candidate_distance(query, q_norm,
                                                 data.row(e.original_index),
                                                 e.norm));
        };
        if (tie.begin > 0) consider(tie.begin - 1);
        if (tie.begin < n) consider(tie.begin);
    }

    SearchBand band{q_norm, r0};

    // Max-heap of the k best so far under (distance, original_index).
    std::vector<Neighbor> best;
    best.reserve(k + 1);
    std::size_t evaluated = 0;
    const auto scan = [&](std::size_t from, std::size_t to) {
        for (std::size_t pos = from; pos < to; ++pos) {
            const auto& e = index.entry(pos);
            const Neighbor cand{e.original_index,
                                candidate_distance(query, q_norm,
                                                   data.row(e.original_index),
                                                   e.norm)};
            ++evaluated;
            if (best.size() < k) {
                best.push_back(cand);
                std::push_heap(best.begin(), best.end(), neighbor_less);
            } else if (neighbor_less(cand, best.front())) {
                std::pop_heap(best.begin(), best.end(), neighbor_less);
                best.back() = cand;
                std::push_heap(best.begin(), best.end(), neighbor_less);
            }
        }
    };

    PosRange window = index.band_positions(band.lo(), band.hi());
    scan(window.begin, window.end);

    // Rows outside the closed band have distance strictly above the radius,
    // so once the kth best fits inside it nothing unscanned can displace or
    // tie into the result.
    const auto done = [&] {
        if (best.size() == k && best.front().distance <= band.radius) return true;
        return window.begin == 0 && window.end == n;
    };

    double step = r0;
    std::size_t expansions = 0;
    while (!done()) {
        if (!(step > 0.0)) {
            // Duplicate-row start: grow by the finest norm separation so the
            // next band admits at least one new candidate.
            const auto gap = smallest_positive_gap(index);
            step = gap ? *gap
                       : std::max({index.max_norm() - q_norm,
                                   q_norm - index.min_norm(), 1.0});
        }
        band.radius += step;
        ++expansions;
        const PosRange grown = index.band_positions(band.lo(), band.hi());
        scan(grown.begin, window.begin);
        scan(window.end, grown.end);
        window = grown;
    }

    if (stats) {
        stats->candidates_evaluated = evaluated;
        stats->expansions = expansions;
        stats->scanned_begin = window.begin;
        stats->scanned_end = window.end;
        stats->expansion_step = step;
    }

    std::sort_heap(best.begin(), best.end(), neighbor_less);
    return best;
}

std::vector<Neighbor> range_search(const NormIndex& index, const Dataset& data,
                                   std::span<const double> query, double r) {
    index.check_binding(data);
    require_query_dim(query, data);
    if (!(r >= 0.0))
        throw std::invalid_argument("range radius must be >= 0");

    const double q_norm = euclidean_norm(query);
    const PosRange window = index.band_positions(q_norm - r, q_norm + r);
    std::vector<Neighbor> hits;
    for (std::size_t pos = window.begin; pos < window.end; ++pos) {
        const auto& e = index.entry(pos);
        const double dist = candidate_distance(query, q_norm,
                                               data.row(e.original_index), e.norm);
        if (dist <= r) hits.push_back({e.original_index, dist});
    }
    std::sort(hits.begin(), hits.end(), neighbor_less);
    return hits;
}

}  // namespace normidx
