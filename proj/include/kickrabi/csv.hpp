// csv.hpp — Locale-independent CSV tables and atomic file output

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace kickrabi {

// Shortest round-trip-free form with 15 significant digits, '.' decimal point.
std::string format_number(double value);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
    std::string to_string() const;
    std::size_t column_index(const std::string& name) const;
    std::vector<double> numeric_column(std::size_t index) const;
};

// RFC 4180 subset: fields containing ',', '"' or newlines are quoted.
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::filesystem::path& path);

// Writes to "<path>.tmp" and renames over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace kickrabi
