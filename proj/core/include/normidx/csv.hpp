#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "normidx/dataset.hpp"

namespace normidx {

/// Loads a rectangular CSV of finite doubles. With `labeled`, the last
/// column becomes the row label. A non-numeric first row is treated as a
/// header and skipped. Row order is file order. Throws ParseError (naming
/// the 1-based line) on ragged rows, non-finite or non-numeric values, and
/// on an empty file.
Dataset load_csv(const std::filesystem::path& path, bool labeled);
Dataset load_csv(std::istream& in, bool labeled);

}  // namespace normidx
