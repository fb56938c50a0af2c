#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "normidx/dataset.hpp"

namespace normidx {

/// Half-open range [begin, end) of ordered positions.
struct PosRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    bool empty() const { return begin == end; }
};

/// Table of (original row index, Euclidean norm) pairs sorted ascending by
/// norm, ties by original index. Stores the inverse permutation so positions
/// map both ways in O(1), and the (n, d, content hash) of the dataset it was
/// built over. Immutable after construction; concurrent reads are safe.
class NormIndex {
public:
    struct Entry {
        std::size_t original_index;
        double norm;
    };

    std::size_t size() const { return entries_.size(); }
    std::size_t dim() const { return dim_; }
    std::uint64_t dataset_hash() const { return hash_; }

    /// (original index, norm) at an ordered position. Throws
    /// std::out_of_range on a bad position.
    const Entry& entry(std::size_t pos) const;

    /// Ordered position holding a given original row index. Throws
    /// std::out_of_range on a bad index.
    std::size_t ordered_pos_of(std::size_t original_index) const;

    /// Cached norm of an original row, via the inverse permutation.
    double norm_of_row(std::size_t original_index) const;

    /// Maximal contiguous position range whose norms lie in the closed
    /// interval [lo, hi], found by binary search. lo > hi gives an empty
    /// range.
    PosRange band_positions(double lo, double hi) const;

    double min_norm() const { return entries_.front().norm; }
    double max_norm() const { return entries_.back().norm; }

    /// Throws BindingError unless this index was built over `data`
    /// (same n, d, and content hash).
    void check_binding(const Dataset& data) const;

    friend NormIndex build_index(const Dataset& data);
    friend NormIndex load_index(std::istream& in, const Dataset& data);

private:
    std::vector<Entry> entries_;
    std::vector<std::size_t> inverse_;
    std::size_t dim_ = 0;
    std::uint64_t hash_ = 0;
};

/// Builds the norm-ordered table for a dataset. Deterministic: equal norms
/// are ordered by original index.
NormIndex build_index(const Dataset& data);

/// Text serialization, one header line then one line per ordered position:
///   #normindex v1 n=<n> d=<d> hash=<hex64>
///   <ordered_pos>,<original_index>,<norm>
/// Norms print as the shortest decimal that round-trips to the same double,
/// so save -> load -> save is byte-identical.
void save_index(const NormIndex& index, std::ostream& out);
void save_index(const NormIndex& index, const std::filesystem::path& path);
std::string index_to_text(const NormIndex& index);

/// Parses and validates an index against the dataset it claims to be built
/// over: header fields, sortedness, permutation, and content hash. Throws
/// ParseError on malformed input and BindingError on a dataset mismatch.
NormIndex load_index(std::istream& in, const Dataset& data);
NormIndex load_index(const std::filesystem::path& path, const Dataset& data);

}  // namespace normidx
