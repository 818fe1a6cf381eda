// csv.cpp — CSV formatting/parsing and atomic writes

#include "kickrabi/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kickrabi {

std::string format_number(double value) {
    if (value == 0.0) {
        return "0";  // folds -0
    }
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::general, 15);
    if (ec != std::errc()) {
        throw std::runtime_error("format_number: conversion failed");
    }
    return std::string(buf.data(), ptr);
}

namespace {

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out += c;
        }
    }
    return out + "\"";
}

}  // namespace

void CsvTable::add_row(const std::vector<double>& values) {
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) {
        row.push_back(format_number(v));
    }
    rows.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
    std::string out;
    auto emit = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += quote(fields[i]);
        }
        out += '\n';
    };
    emit(header);
    for (const auto& r : rows) {
        emit(r);
    }
    return out;
}

std::size_t CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw std::out_of_range("CsvTable: no column '" + name + "'");
}

std::vector<double> CsvTable::numeric_column(std::size_t index) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        const std::string& f = r.at(index);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (ec != std::errc() || ptr != f.data() + f.size()) {
            throw std::invalid_argument("CsvTable: non-numeric field '" + f + "' in column " +
                                        header.at(index));
        }
        out.push_back(v);
    }
    return out;
}

CsvTable parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n') {
            record.push_back(std::move(field));
            records.push_back(std::move(record));
            field.clear();
            record.clear();
            any = false;
        } else if (c != '\r') {
            field += c;
            any = true;
        }
    }
    if (quoted) {
        throw std::invalid_argument("parse_csv: unterminated quote");
    }
    if (any) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    if (records.empty()) {
        throw std::invalid_argument("parse_csv: missing header row");
    }
    CsvTable t;
    t.header = std::move(records.front());
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].size() != t.header.size()) {
            throw std::invalid_argument("parse_csv: row " + std::to_string(i) + " has " +
                                        std::to_string(records[i].size()) + " fields, header has " +
                                        std::to_string(t.header.size()));
        }
        t.rows.push_back(std::move(records[i]));
    }
    return t;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_file(path)); }

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out << contents;
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace kickrabi
