#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace normidx {

/// Shortest decimal string that round-trips to the same double.
std::string to_decimal_string(double value);

/// Strict full-string parse; rejects trailing garbage and empty input.
/// Accepts "inf"/"nan" spellings (callers reject non-finite values where
/// the contract requires finiteness).
std::optional<double> parse_double(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace normidx
