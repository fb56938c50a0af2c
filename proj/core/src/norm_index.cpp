#include "normidx/norm_index.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "normidx/distance.hpp"
#include "normidx/errors.hpp"
#include "normidx/text.hpp"

namespace normidx {

const NormIndex::Entry& NormIndex::entry(std::size_t pos) const {
    if (pos >= entries_.size())
        throw std::out_of_range("NormIndex: position " + std::to_string(pos) +
                                " out of range (n=" + std::to_string(entries_.size()) + ")");
    return entries_[pos];
}

std::size_t NormIndex::ordered_pos_of(std::size_t original_index) const {
    if (original_index >= inverse_.size())
        throw std::out_of_range("NormIndex: original index " +
                                std::to_string(original_index) + " out of range");
    return inverse_[original_index];
}

double NormIndex::norm_of_row(std::size_t original_index) const {
    return entries_[ordered_pos_of(original_index)].norm;
}

PosRange NormIndex::band_positions(double lo, double hi) const {
    if (lo > hi) return {};
    const auto norm_less = [](const Entry& e, double value) { return e.norm < value; };
    const auto value_less = [](double value, const Entry& e) { return value < e.norm; };
    const auto first = std::lower_bound(entries_.begin(), entries_.end(), lo, norm_less);
    const auto last = std::upper_bound(first, entries_.end(), hi, value_less);
    return {static_cast<std::size_t>(first - entries_.begin()),
            static_cast<std::size_t>(last - entries_.begin())};
}

void NormIndex::check_binding(const Dataset& data) const {
    if (entries_.size() != data.size() || dim_ != data.dim() ||
        hash_ != data.content_hash())
        throw BindingError("index is not bound to this dataset (n/d/hash mismatch)");
}

NormIndex build_index(const Dataset& data) {
    NormIndex index;
    index.dim_ = data.dim();
    index.hash_ = data.content_hash();
    index.entries_.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        index.entries_.push_back({i, euclidean_norm(data.row(i))});
    std::sort(index.entries_.begin(), index.entries_.end(),
              [](const NormIndex::Entry& a, const NormIndex::Entry& b) {
                  if (a.norm != b.norm) return a.norm < b.norm;
                  return a.original_index < b.original_index;
              });
    index.inverse_.resize(data.size());
    for (std::size_t pos = 0; pos < index.entries_.size(); ++pos)
        index.inverse_[index.entries_[pos].original_index] = pos;
    return index;
}

std::string index_to_text(const NormIndex& index) {
    std::string out;
    out.reserve(index.size() * 32 + 64);
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(index.dataset_hash()));
    out += "#normindex v1 n=" + std::to_string(index.size()) +
           " d=" + std::to_string(index.dim()) + " hash=" + hex + "\n";
    for (std::size_t pos = 0; pos < index.size(); ++pos) {
        const auto& e = index.entry(pos);
        out += std::to_string(pos);
        out += ',';
        out += std::to_string(e.original_index);
        out += ',';
        out += to_decimal_string(e.norm);
        out += '\n';
    }
    return out;
}

void save_index(const NormIndex& index, std::ostream& out) {
    out << index_to_text(index);
}

void save_index(const NormIndex& index, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open " + path.string() + " for writing");
    save_index(index, out);
    out.flush();
    if (!out) throw ParseError("failed writing " + path.string());
}

namespace {

// Extracts <value> from a "key=<value>" header token.
std::string_view header_value(std::string_view token, std::string_view key,
                              std::string_view header) {
    if (token.size() < key.size() + 1 || token.substr(0, key.size()) != key ||
        token[key.size()] != '=')
        throw ParseError("index header: expected " + std::string(key) +
                         "=... in \"" + std::string(header) + "\"");
    return token.substr(key.size() + 1);
}

std::size_t parse_size(std::string_view text, const char* what, std::size_t line) {
    if (text.empty())
        throw ParseError("index line " + std::to_string(line) + ": empty " + what);
    std::size_t value = 0;
    for (char c : text) {
        if (c < '0' || c > '9')
            throw ParseError("index line " + std::to_string(line) + ": bad " + what +
                             " \"" + std::string(text) + "\"");
        value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    return value;
}

std::uint64_t parse_hash(std::string_view text) {
    if (text.size() != 16)
        throw ParseError("index line 1: hash must be 16 hex digits");
    std::uint64_t hash = 0;
    for (char c : text) {
        int digit;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        else throw ParseError("index line 1: bad hash digit");
        hash = (hash << 4) | static_cast<std::uint64_t>(digit);
    }
    return hash;
}

}  // namespace

NormIndex load_index(std::istream& in, const Dataset& data) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("index file is empty");
    const std::string header(trim(line));

    std::istringstream head{header};
    std::string magic, version, n_field, d_field, h_field;
    head >> magic >> version >> n_field >> d_field >> h_field;
    if (magic != "#normindex")
        throw ParseError("index line 1: bad header \"" + header + "\"");
    if (version != "v1")
        throw ParseError("index line 1: unsupported version \"" + version + "\"");
    const std::size_t n = parse_size(header_value(n_field, "n", header), "n", 1);
    const std::size_t d = parse_size(header_value(d_field, "d", header), "d", 1);
    const std::uint64_t hash = parse_hash(header_value(h_field, "hash", header));
    if (n != data.size() || d != data.dim() || hash != data.content_hash())
        throw BindingError("index header does not match the dataset (n/d/hash)");

    NormIndex index;
    index.dim_ = d;
    index.hash_ = hash;
    index.entries_.reserve(n);
    std::vector<bool> seen(n, false);

    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t line_no = pos + 2;
        if (!std::getline(in, line))
            throw ParseError("index line " + std::to_string(line_no) +
                             ": unexpected end of file");
        std::string_view text = trim(line);
        const auto c1 = text.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
        if (c2 == std::string_view::npos)
            throw ParseError("index line " + std::to_string(line_no) +
                             ": expected pos,original_index,norm");
        const std::size_t file_pos = parse_size(text.substr(0, c1), "position", line_no);
        const std::size_t orig =
            parse_size(text.substr(c1 + 1, c2 - c1 - 1), "original index", line_no);
        const auto norm = parse_double(text.substr(c2 + 1));
        if (!norm || !std::isfinite(*norm) || *norm < 0.0)
            throw ParseError("index line " + std::to_string(line_no) + ": bad norm");
        if (file_pos != pos)
            throw ParseError("index line " + std::to_string(line_no) +
                             ": positions must run 0.." + std::to_string(n - 1));
        if (orig >= n)
            throw ParseError("index line " + std::to_string(line_no) +
                             ": original index out of range");
        if (seen[orig])
            throw ParseError("index line " + std::to_string(line_no) +
                             ": original index " + std::to_string(orig) + " repeats");
        seen[orig] = true;
        if (pos > 0) {
            const auto& prev = index.entries_.back();
            const bool ordered = prev.norm < *norm ||
                                 (prev.norm == *norm && prev.original_index < orig);
            if (!ordered)
                throw ParseError("index line " + std::to_string(line_no) +
                                 ": entries are not sorted by (norm, original index)");
        }
        index.entries_.push_back({orig, *norm});
    }
    while (std::getline(in, line))
        if (!trim(line).empty())
            throw ParseError("index file has trailing content after " +
                             std::to_string(n) + " entries");

    index.inverse_.resize(n);
    for (std::size_t pos = 0; pos < n; ++pos)
        index.inverse_[index.entries_[pos].original_index] = pos;
    return index;
}

NormIndex load_index(const std::filesystem::path& path, const Dataset& data) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    return load_index(in, data);
}

}  // namespace normidx
