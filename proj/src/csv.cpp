#include "csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "biotraj/error.hpp"

namespace biotraj::detail {
namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::file_not_found, "cannot open " + path.string());

    CsvTable table;
    std::string line;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        if (!have_header) {
            if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
                line.erase(0, 3);
            }
            table.header = split(line);
            std::set<std::string> seen;
            for (const auto& name : table.header) {
                if (name.empty() || !seen.insert(name).second) {
                    throw Error(ErrorCode::malformed_header,
                                path.string() + ": empty or duplicated column name in header");
                }
            }
            have_header = true;
            continue;
        }
        const auto cells = split(line);
        if (cells.size() != table.header.size()) {
            throw Error(ErrorCode::ragged_row, path.string() + ":" + std::to_string(line_no) +
                                                   ": expected " + std::to_string(table.header.size()) +
                                                   " cells, got " + std::to_string(cells.size()));
        }
        std::vector<double> row(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto& cell = cells[c];
            const char* end = cell.data() + cell.size();
            const auto [ptr, ec] = std::from_chars(cell.data(), end, row[c]);
            if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(row[c])) {
                throw Error(ErrorCode::non_numeric_cell, path.string() + ":" + std::to_string(line_no) +
                                                             ": non-numeric cell '" + cell + "'");
            }
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw Error(ErrorCode::empty_file, path.string() + " is empty");
    return table;
}

std::size_t require_column(const CsvTable& table, const std::string& name,
                           const std::filesystem::path& path)
{
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) {
        throw Error(ErrorCode::missing_column, path.string() + ": missing column '" + name + "'");
    }
    return static_cast<std::size_t>(it - table.header.begin());
}

std::string format_double(double value)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

}  // namespace biotraj::detail
