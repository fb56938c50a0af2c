#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "normidx/dataset.hpp"
#include "normidx/norm_index.hpp"
#include "normidx/search.hpp"

namespace normidx {

/// Majority label among neighbors. Ties go to the label with the smallest
/// summed neighbor distance, then to the lexicographically smallest label.
std::string majority_label(const std::vector<Neighbor>& neighbors,
                           const std::vector<std::string>& labels);

/// Labeled dataset plus its norm index; immutable after fit, so predict and
/// evaluate may run concurrently.
class KnnModel {
public:
    /// Builds the index once. Throws std::invalid_argument when labels are
    /// missing.
    static KnnModel fit(Dataset data, std::size_t k_default = 5);

    const Dataset& data() const { return data_; }
    const NormIndex& index() const { return index_; }
    std::size_t k_default() const { return k_default_; }

    /// Majority vote over the k exact nearest neighbors. Deterministic.
    /// Throws std::invalid_argument for k outside [1, n] or a query of the
    /// wrong dimension.
    std::string predict(std::span<const double> query, std::size_t k,
                        SearchStats* stats = nullptr) const;
    std::string predict(std::span<const double> query) const {
        return predict(query, k_default_);
    }

    /// Fraction of test rows whose predicted label matches the true label.
    /// Throws std::invalid_argument on a dimension mismatch or missing test
    /// labels.
    double evaluate(const Dataset& test, std::size_t k) const;

private:
    KnnModel(Dataset data, NormIndex index, std::size_t k_default);

    Dataset data_;
    NormIndex index_;
    std::size_t k_default_;
};

}  // namespace normidx
