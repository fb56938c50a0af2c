#include "normidx/csv.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "normidx/errors.hpp"
#include "normidx/text.hpp"

namespace normidx {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            return fields;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

// A first row whose value fields do not all parse as numbers is a header.
bool looks_like_header(const std::vector<std::string_view>& fields, bool labeled) {
    const std::size_t values = labeled ? fields.size() - 1 : fields.size();
    for (std::size_t i = 0; i < values; ++i)
        if (!parse_double(fields[i])) return true;
    return false;
}

}  // namespace

Dataset load_csv(std::istream& in, bool labeled) {
    std::vector<double> values;
    std::vector<std::string> labels;
    std::size_t columns = 0;
    std::size_t rows = 0;
    bool first_content_row = true;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = trim(line);
        if (text.empty()) continue;
        const auto fields = split_fields(text);

        const std::size_t min_fields = labeled ? 2 : 1;
        if (fields.size() < min_fields)
            throw ParseError("csv line " + std::to_string(line_no) + ": expected " +
                             (labeled ? "at least one value column plus a label"
                                      : "at least one value column"));
        if (first_content_row) {
            if (looks_like_header(fields, labeled)) {
                first_content_row = false;
                continue;
            }
            columns = fields.size();
            first_content_row = false;
        } else if (columns == 0) {
            columns = fields.size();
        }
        if (fields.size() != columns)
            throw ParseError("csv line " + std::to_string(line_no) + ": has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(columns));

        const std::size_t value_count = labeled ? columns - 1 : columns;
        for (std::size_t i = 0; i < value_count; ++i) {
            const auto value = parse_double(fields[i]);
            if (!value)
                throw ParseError("csv line " + std::to_string(line_no) +
                                 ", column " + std::to_string(i + 1) +
                                 ": not a number: \"" + std::string(fields[i]) +
                                 "\"");
            if (!std::isfinite(*value))
                throw ParseError("csv line " + std::to_string(line_no) +
                                 ", column " + std::to_string(i + 1) +
                                 ": value must be finite");
            values.push_back(*value);
        }
        if (labeled) {
            if (fields.back().empty())
                throw ParseError("csv line " + std::to_string(line_no) +
                                 ": empty label");
            labels.emplace_back(fields.back());
        }
        ++rows;
    }

    if (rows == 0) throw ParseError("csv has no data rows");
    const std::size_t dim = labeled ? columns - 1 : columns;
    return Dataset(std::move(values), rows, dim,
                   labeled ? std::move(labels) : std::vector<std::string>{});
}

Dataset load_csv(const std::filesystem::path& path, bool labeled) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    return load_csv(in, labeled);
}

}  // namespace normidx
