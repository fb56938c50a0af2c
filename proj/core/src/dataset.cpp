#include "normidx/dataset.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace normidx {

namespace {

std::uint64_t fnv1a_init() { return 14695981039346656037ull; }

void fnv1a_mix(std::uint64_t& h, std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
        h ^= (word >> (8 * byte)) & 0xffu;
        h *= 1099511628211ull;
    }
}

std::uint64_t hash_content(const std::vector<double>& values, std::size_t n,
                           std::size_t d) {
    std::uint64_t h = fnv1a_init();
    fnv1a_mix(h, n);
    fnv1a_mix(h, d);
    for (double v : values) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        fnv1a_mix(h, bits);
    }
    return h;
}

}  // namespace

Dataset::Dataset(std::vector<double> values, std::size_t n, std::size_t d,
                 std::vector<std::string> labels)
    : values_(std::move(values)), labels_(std::move(labels)), n_(n), d_(d) {
    if (n_ == 0) throw std::invalid_argument("dataset needs at least one row");
    if (d_ == 0) throw std::invalid_argument("dataset needs at least one dimension");
    if (values_.size() != n_ * d_)
        throw std::invalid_argument("dataset value buffer size does not match n*d");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw std::invalid_argument("dataset contains a non-finite value at row " +
                                        std::to_string(i / d_) + ", column " +
                                        std::to_string(i % d_));
    }
    if (!labels_.empty() && labels_.size() != n_)
        throw std::invalid_argument("label count does not match row count");
    hash_ = hash_content(values_, n_, d_);
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows,
                           std::vector<std::string> labels) {
    if (rows.empty()) throw std::invalid_argument("dataset needs at least one row");
    const std::size_t d = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * d);
    for (const auto& r : rows) {
        if (r.size() != d)
            throw std::invalid_argument("rows have differing dimension counts");
        values.insert(values.end(), r.begin(), r.end());
    }
    return Dataset(std::move(values), rows.size(), d, std::move(labels));
}

}  // namespace normidx
