#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace biotraj::detail {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Reads a comma-separated numeric table with a header line.
/// Errors: file_not_found, empty_file, malformed_header, ragged_row, non_numeric_cell.
CsvTable read_csv(const std::filesystem::path& path);

/// Index of `name` in the header, or throws missing_column.
std::size_t require_column(const CsvTable& table, const std::string& name,
                           const std::filesystem::path& path);

/// Shortest decimal representation that round-trips exactly.
std::string format_double(double value);

}  // namespace biotraj::detail
