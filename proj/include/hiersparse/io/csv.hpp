#pragma once
#include <hiersparse/core/errors.hpp>
#include <hiersparse/core/types.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace hiersparse::io {

/// Malformed input file; the message is prefixed with "path:line:column: ".
class InputError : public Error {
public:
    InputError(const std::string& path, std::size_t line, std::size_t column, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line),
          column_(column)
    {
    }

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct CsvTable {
    std::vector<std::string> header;
    Matrix values;
};

inline std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path, 0, 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace detail {

inline std::string trim(std::string_view s)
{
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && (s[a] == ' ' || s[a] == '\t')) ++a;
    while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
    return std::string(s.substr(a, b - a));
}

} // namespace detail

/**
 * Comma-separated numbers with one header row. Blank lines and lines
 * starting with '#' are skipped. Columns in diagnostics are 1-based field
 * numbers.
 */
inline CsvTable parse_csv(const std::string& text, const std::string& path)
{
    CsvTable out;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool have_header = false;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string_view line(text.data() + pos, end - pos);
        ++line_no;
        pos = end + 1;
        const std::string stripped = detail::trim(line);
        if (stripped.empty() || stripped[0] == '#') {
            if (end == text.size()) break;
            continue;
        }

        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = stripped.find(',', start);
            fields.push_back(detail::trim(std::string_view(stripped).substr(
                start, comma == std::string::npos ? std::string::npos : comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }

        if (!have_header) {
            for (std::size_t k = 0; k < fields.size(); ++k)
                if (fields[k].empty()) throw InputError(path, line_no, k + 1, "empty column name in header");
            out.header = std::move(fields);
            have_header = true;
        } else {
            if (fields.size() != out.header.size())
                throw InputError(path, line_no, std::min(fields.size(), out.header.size()) + 1,
                                 "expected " + std::to_string(out.header.size()) + " fields, found " +
                                     std::to_string(fields.size()));
            std::vector<double> row(fields.size());
            for (std::size_t k = 0; k < fields.size(); ++k) {
                const std::string& f = fields[k];
                const char* first = f.data();
                const char* last = f.data() + f.size();
                if (!f.empty() && *first == '+') ++first;
                auto [ptr, ec] = std::from_chars(first, last, row[k]);
                if (f.empty() || ec != std::errc() || ptr != last || !std::isfinite(row[k]))
                    throw InputError(path, line_no, k + 1, "cannot parse '" + f + "' as a finite number");
            }
            rows.push_back(std::move(row));
        }
        if (end == text.size()) break;
    }
    if (!have_header) throw InputError(path, 1, 1, "missing header row");
    if (rows.empty()) throw InputError(path, line_no, 1, "no data rows");
    out.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(out.header.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < rows[i].size(); ++k)
            out.values(static_cast<Index>(i), static_cast<Index>(k)) = rows[i][k];
    return out;
}

inline CsvTable read_csv(const std::string& path) { return parse_csv(read_text_file(path), path); }

} // namespace hiersparse::io
