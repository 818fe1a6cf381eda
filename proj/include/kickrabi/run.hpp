// run.hpp — Scenario execution, run records and run comparison

#pragma once

#include "kickrabi/config.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace kickrabi {

inline constexpr const char* kRecordFileName = "run_record.json";

std::string software_version();

std::string sha256_hex(const std::string& bytes);

struct OutputFile {
    std::string name;  // relative to the record's directory
    std::string sha256;
    std::uintmax_t bytes{0};
};

struct RunRecord {
    KeyValues config;
    std::string version;
    std::vector<OutputFile> files;
    double wall_time_seconds{0.0};
};

// Writes CSV (and optional SVG) outputs plus run_record.json into
// config.output_dir, and prints a summary table to `summary`.
RunRecord run_scenario(const ScenarioConfig& config, std::ostream& summary);

void save_record(const RunRecord& record, const std::filesystem::path& path);
RunRecord load_record(const std::filesystem::path& path);

// Accepts a run directory or a record file.
std::filesystem::path record_path(const std::filesystem::path& run);

// A run record that cannot be parsed, or whose listed files are missing or
// no longer match their digests.
class RecordError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws RecordError if any listed file is missing or its digest differs.
void verify_record(const RunRecord& record, const std::filesystem::path& directory);

class SchemaMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ColumnDeviation {
    std::string file;
    std::string column;
    double max_deviation{0.0};
};

struct CompareReport {
    std::vector<ColumnDeviation> columns;
    double max_deviation{0.0};
    double tolerance{0.0};
    bool passed() const noexcept { return max_deviation <= tolerance; }
};

// Per-column max absolute deviation across every CSV listed in both records.
// Throws SchemaMismatch when file sets, headers or row counts differ.
CompareReport compare_runs(const std::filesystem::path& run_a, const std::filesystem::path& run_b,
                           double tolerance);

}  // namespace kickrabi
