#include "normidx/knn.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace normidx {

std::string majority_label(const std::vector<Neighbor>& neighbors,
                           const std::vector<std::string>& labels) {
    if (neighbors.empty())
        throw std::invalid_argument("majority_label needs >= 1 neighbor");

    struct Tally {
        std::size_t votes = 0;
        double distance_sum = 0.0;
    };
    std::map<std::string, Tally> tallies;  // ordered, for the lexicographic tie
    for (const auto& nb : neighbors) {
        if (nb.original_index >= labels.size())
            throw std::invalid_argument("neighbor row has no label");
        auto& tally = tallies[labels[nb.original_index]];
        ++tally.votes;
        tally.distance_sum += nb.distance;
    }

    const std::string* best = nullptr;
    const Tally* best_tally = nullptr;
    for (const auto& [label, tally] : tallies) {
        const bool wins =
            !best || tally.votes > best_tally->votes ||
            (tally.votes == best_tally->votes &&
             tally.distance_sum < best_tally->distance_sum);
        if (wins) {
            best = &label;
            best_tally = &tally;
        }
    }
    return *best;
}

KnnModel::KnnModel(Dataset data, NormIndex index, std::size_t k_default)
    : data_(std::move(data)), index_(std::move(index)), k_default_(k_default) {}

KnnModel KnnModel::fit(Dataset data, std::size_t k_default) {
    if (!data.has_labels())
        throw std::invalid_argument("KnnModel needs a labeled dataset");
    if (k_default < 1 || k_default > data.size())
        throw std::invalid_argument("k_default must be in [1, n]");
    NormIndex index = build_index(data);
    return KnnModel(std::move(data), std::move(index), k_default);
}

std::string KnnModel::predict(std::span<const double> query, std::size_t k,
                              SearchStats* stats) const {
    return majority_label(knn_exact(index_, data_, query, k, stats),
                          data_.labels());
}

double KnnModel::evaluate(const Dataset& test, std::size_t k) const {
    if (!test.has_labels())
        throw std::invalid_argument("evaluate needs a labeled test set");
    if (test.dim() != data_.dim())
        throw std::invalid_argument("test dimension differs from training data");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test.size(); ++i)
        if (predict(test.row(i), k) == test.label(i)) ++correct;
    return static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace normidx
