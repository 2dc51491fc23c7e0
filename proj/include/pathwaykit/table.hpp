#pragma once

// Minimal numeric CSV: one header row, then rows of decimal numbers.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pathwaykit::table {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t columns() const noexcept { return header.size(); }
};

/// Parses CSV text. Throws ParseError naming the 1-based line and column of
/// the first malformed cell, ragged row, or an empty document.
Table parse_table(std::string_view text);
Table load_table(const std::filesystem::path& path);

/// Decimal with 15 significant digits.
std::string format_number(double v);

std::string format_table(const Table& table);

/// Writes format_table to `path`; returns the byte count.
std::size_t write_table(const Table& table, const std::filesystem::path& path);

}  // namespace pathwaykit::table
