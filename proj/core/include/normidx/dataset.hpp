#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace normidx {

/// Immutable n x d row-major matrix of finite doubles, with an optional
/// class label per row. Rows and labels never change after construction,
/// so any number of threads may read a Dataset concurrently.
class Dataset {
public:
    /// Takes ownership of a row-major value buffer of size n*d.
    /// Throws std::invalid_argument on n == 0, d == 0, a size mismatch,
    /// a non-finite coordinate, or a label count != n.
    Dataset(std::vector<double> values, std::size_t n, std::size_t d,
            std::vector<std::string> labels = {});

    static Dataset from_rows(const std::vector<std::vector<double>>& rows,
                             std::vector<std::string> labels = {});

    std::size_t size() const { return n_; }
    std::size_t dim() const { return d_; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * d_, d_};
    }

    bool has_labels() const { return !labels_.empty(); }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// FNV-1a over (n, d, coordinate bit patterns). Labels are excluded:
    /// the hash identifies the geometry an index is bound to.
    std::uint64_t content_hash() const { return hash_; }

private:
    std::vector<double> values_;
    std::vector<std::string> labels_;
    std::size_t n_ = 0;
    std::size_t d_ = 0;
    std::uint64_t hash_ = 0;
};

}  // namespace normidx
