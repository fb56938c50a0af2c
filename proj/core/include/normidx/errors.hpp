#pragma once

#include <stdexcept>
#include <string>

namespace normidx {

/// Malformed or inconsistent input file (CSV or index text). The message
/// names the offending 1-based line where one exists.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An index was used with a dataset it was not built over.
class BindingError : public std::runtime_error {
public:
    explicit BindingError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace normidx
