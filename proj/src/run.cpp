// run.cpp — Scenario driver, run records and comparisons

#include "kickrabi/run.hpp"

#include "kickrabi/analysis.hpp"
#include "kickrabi/csv.hpp"
#include "kickrabi/dynamics.hpp"
#include "kickrabi/svg.hpp"

#include "json.hpp"
#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <memory>
#include <ostream>

#ifndef KICKRABI_VERSION
#define KICKRABI_VERSION "0.0.0"
#endif

namespace kickrabi {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string software_version() { return KICKRABI_VERSION; }

std::string sha256_hex(const std::string& bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
        throw std::runtime_error("sha256: digest computation failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xf];
    }
    return out;
}

namespace {

class OutputWriter {
public:
    explicit OutputWriter(fs::path dir) : dir_(std::move(dir)) {}

    void write(const std::string& name, const std::string& contents) {
        write_file_atomic(dir_ / name, contents);
        files_.push_back(OutputFile{name, sha256_hex(contents), contents.size()});
    }

    std::vector<OutputFile> files() const { return files_; }

private:
    fs::path dir_;
    std::vector<OutputFile> files_;
};

void emit_table(OutputWriter& out, const ScenarioConfig& config, const std::string& stem,
                const CsvTable& table, const std::string& x_label, const std::vector<Series>& series) {
    out.write(stem + ".csv", table.to_string());
    if (config.emit_svg) {
        std::vector<double> x = table.numeric_column(0);
        out.write(stem + ".svg", render_line_chart(stem, x_label, x, series));
    }
}

void run_trace(const ScenarioConfig& config, OutputWriter& out, std::ostream& summary) {
    const HilbertSpace space(config.n_max);
    const auto model = build_model<double>(config.params, space);
    const auto projectors = make_projectors(config.projectors, config.params, space);
    const auto initial = labeled_state(config.initial_state, config.params, space);
    TraceOptions options;
    options.samples_per_interval = config.samples_per_interval;
    options.samples_per_kick = config.samples_per_kick;
    options.mode = config.mode;
    const auto trace = evolve_trace(model, config.schedule, initial, projectors, options);

    CsvTable table;
    table.header.push_back("t");
    table.header.insert(table.header.end(), trace.labels.begin(), trace.labels.end());
    table.header.push_back("norm");
    table.header.push_back("in_kick");
    for (std::size_t k = 0; k < trace.size(); ++k) {
        std::vector<double> row{trace.times[k]};
        for (const auto& column : trace.probabilities) {
            row.push_back(column[k]);
        }
        row.push_back(trace.norm[k]);
        row.push_back(trace.in_kick[k]);
        table.add_row(row);
    }
    std::vector<Series> series;
    for (std::size_t j = 0; j < trace.labels.size(); ++j) {
        series.push_back(Series{"p(" + trace.labels[j] + ")", trace.probabilities[j]});
    }
    emit_table(out, config, scenario_name(config.scenario), table, "omega_c t", series);

    summary << "kicks " << (config.mode == KickMode::kicked ? "on" : "off") << ", N = "
            << config.schedule.n_kicks << ", tau_i = " << config.schedule.tau_i
            << ", tau_p = " << config.schedule.tau_p << ", samples = " << trace.size() << "\n";
    summary << std::left << std::setw(10) << "state" << std::setw(14) << "min p" << std::setw(14)
            << "max p" << "t(max p)\n";
    for (std::size_t j = 0; j < trace.labels.size(); ++j) {
        const auto& p = trace.probabilities[j];
        const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
        summary << std::setw(10) << trace.labels[j] << std::setw(14) << *lo << std::setw(14) << *hi
                << trace.times[static_cast<std::size_t>(hi - p.begin())] << "\n";
    }
    if (config.params.lambda_0 > 0.0 && config.mode == KickMode::kicked) {
        for (Branch s : {Branch::minus, Branch::plus}) {
            const auto eff = effective_two_level(config.params, config.schedule, s);
            summary << "|2," << branch_name(s) << ">: m = " << eff.m << ", phi = " << eff.phi
                    << ", g = " << eff.g_s << ", predicted transfer time = " << eff.predicted_transfer_time
                    << ", N(g^2+phi^2) = " << eff.validity << "\n";
        }
    }
}

void run_scan(const ScenarioConfig& config, OutputWriter& out, std::ostream& summary) {
    const HilbertSpace space(config.n_max);
    const auto grid = make_grid(config.grid->start, config.grid->stop, config.grid->step);
    const int kicks = config.scan_kicks > 0 ? config.scan_kicks : default_scan_kicks(config.params);
    ScanOptions options;
    options.samples_per_interval = config.samples_per_interval;
    options.samples_per_kick = config.samples_per_kick;
    const auto scan = scan_resonances(config.params, space, grid, config.schedule.tau_p, kicks, options);

    CsvTable table;
    table.header = {"tau_i", "p_max_plus", "p_max_minus"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        table.add_row({grid[i], scan.p_max_plus[i], scan.p_max_minus[i]});
    }
    const std::string stem = scenario_name(config.scenario);
    emit_table(out, config, stem, table, "omega_c tau_i",
               {Series{"p_max(2,+)", scan.p_max_plus}, Series{"p_max(2,-)", scan.p_max_minus}});

    CsvTable peaks;
    peaks.header = {"tau_i", "branch", "m", "width_at_half_prominence", "predicted_width",
                    "predicted_tau_i", "height"};
    summary << "scan: " << grid.size() << " points, " << kicks << " kicks per point\n";
    summary << std::left << std::setw(8) << "branch" << std::setw(4) << "m" << std::setw(14)
            << "tau_i" << std::setw(14) << "predicted" << std::setw(14) << "width" << std::setw(14)
            << "pred. width" << "height\n";
    for (const auto& p : scan.detected_peaks) {
        const KickSchedule at_peak{p.location, config.schedule.tau_p, kicks};
        const auto eff = effective_two_level(config.params, at_peak, p.branch);
        const double predicted = resonance_tau(config.params, p.branch, p.m);
        peaks.add_row({p.location, p.branch == Branch::plus ? 1.0 : -1.0, static_cast<double>(p.m),
                       p.width, eff.predicted_peak_width, predicted, p.height});
        summary << std::setw(8) << branch_name(p.branch) << std::setw(4) << p.m << std::setw(14)
                << p.location << std::setw(14) << predicted << std::setw(14) << p.width << std::setw(14)
                << eff.predicted_peak_width << p.height << "\n";
    }
    out.write(stem + "_peaks.csv", peaks.to_string());
}

void run_p_epsilon(const ScenarioConfig& config, OutputWriter& out, std::ostream& summary) {
    const HilbertSpace space(config.n_max);
    const auto model = build_model<double>(config.params, space);
    const auto exact = p_epsilon_trace(model, config.schedule, config.schedule.n_kicks, PEpsilonMode::exact);
    const auto pert =
        p_epsilon_trace(model, config.schedule, config.schedule.n_kicks, PEpsilonMode::perturbative);

    CsvTable table;
    table.header = {"t", "p_eps_exact", "p_eps_perturbative"};
    double max_exact = 0.0, max_pert = 0.0, max_dev = 0.0;
    for (std::size_t k = 0; k < exact.size(); ++k) {
        const double a = exact.probabilities[0][k];
        const double b = pert.probabilities[0][k];
        table.add_row({exact.times[k], a, b});
        max_exact = std::max(max_exact, a);
        max_pert = std::max(max_pert, b);
        max_dev = std::max(max_dev, std::abs(a - b));
    }
    emit_table(out, config, scenario_name(config.scenario), table, "omega_c t",
               {Series{"p_eps exact", exact.probabilities[0]},
                Series{"p_eps perturbative", pert.probabilities[0]}});
    summary << "p_eps from |e,0>, N = " << config.schedule.n_kicks << " kicks, tau_i = "
            << config.schedule.tau_i << "\n"
            << "max p_eps exact        = " << max_exact << "\n"
            << "max p_eps perturbative = " << max_pert << "\n"
            << "max |exact - pert.|    = " << max_dev << "\n";
}

json to_json(const RunRecord& r) {
    json files = json::array();
    for (const auto& f : r.files) {
        files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    }
    return json{{"config", r.config},
                {"version", r.version},
                {"files", files},
                {"wall_time_seconds", r.wall_time_seconds}};
}

}  // namespace

RunRecord run_scenario(const ScenarioConfig& config, std::ostream& summary) {
    const auto start = std::chrono::steady_clock::now();
    fs::create_directories(config.output_dir);
    OutputWriter out(config.output_dir);

    summary << "scenario " << scenario_name(config.scenario)
            << (config.variant.empty() ? "" : " (variant " + config.variant + ")") << ": omega_0 = "
            << config.params.omega_0 << ", lambda_0 = " << config.params.lambda_0
            << ", n_max = " << config.n_max << "\n";
    switch (config.kind) {
    case RunKind::trace: run_trace(config, out, summary); break;
    case RunKind::scan: run_scan(config, out, summary); break;
    case RunKind::p_epsilon: run_p_epsilon(config, out, summary); break;
    }

    RunRecord record;
    record.config = config_snapshot(config);
    record.version = software_version();
    record.files = out.files();
    record.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    save_record(record, config.output_dir / kRecordFileName);
    return record;
}

void save_record(const RunRecord& record, const fs::path& path) {
    write_file_atomic(path, to_json(record).dump(2) + "\n");
}

RunRecord load_record(const fs::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw RecordError("malformed run record " + path.string() + ": " + e.what());
    }
    RunRecord r;
    try {
        r.config = j.at("config").get<KeyValues>();
        r.version = j.at("version").get<std::string>();
        r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
        for (const auto& f : j.at("files")) {
            r.files.push_back(OutputFile{f.at("name").get<std::string>(), f.at("sha256").get<std::string>(),
                                         f.at("bytes").get<std::uintmax_t>()});
        }
    } catch (const json::exception& e) {
        throw RecordError("malformed run record " + path.string() + ": " + e.what());
    }
    return r;
}

fs::path record_path(const fs::path& run) {
    return fs::is_directory(run) ? run / kRecordFileName : run;
}

void verify_record(const RunRecord& record, const fs::path& directory) {
    for (const auto& f : record.files) {
        const auto path = directory / f.name;
        if (!fs::exists(path)) {
            throw RecordError("run record lists missing file " + path.string());
        }
        if (sha256_hex(read_file(path)) != f.sha256) {
            throw RecordError("digest mismatch for " + path.string());
        }
    }
}

CompareReport compare_runs(const fs::path& run_a, const fs::path& run_b, double tolerance) {
    const auto path_a = record_path(run_a);
    const auto path_b = record_path(run_b);
    const auto rec_a = load_record(path_a);
    const auto rec_b = load_record(path_b);
    verify_record(rec_a, path_a.parent_path());
    verify_record(rec_b, path_b.parent_path());

    auto csv_names = [](const RunRecord& r) {
        std::vector<std::string> names;
        for (const auto& f : r.files) {
            if (f.name.ends_with(".csv")) {
                names.push_back(f.name);
            }
        }
        std::sort(names.begin(), names.end());
        return names;
    };
    const auto names = csv_names(rec_a);
    if (names != csv_names(rec_b)) {
        throw SchemaMismatch("runs emit different CSV files");
    }

    CompareReport report;
    report.tolerance = tolerance;
    for (const auto& name : names) {
        const auto a = read_csv(path_a.parent_path() / name);
        const auto b = read_csv(path_b.parent_path() / name);
        if (a.header != b.header) {
            throw SchemaMismatch(name + ": column headers differ");
        }
        if (a.rows.size() != b.rows.size()) {
            throw SchemaMismatch(name + ": row counts differ (" + std::to_string(a.rows.size()) + " vs " +
                                 std::to_string(b.rows.size()) + ")");
        }
        for (std::size_t c = 0; c < a.header.size(); ++c) {
            const auto xa = a.numeric_column(c);
            const auto xb = b.numeric_column(c);
            double dev = 0.0;
            for (std::size_t k = 0; k < xa.size(); ++k) {
                dev = std::max(dev, std::abs(xa[k] - xb[k]));
            }
            report.columns.push_back(ColumnDeviation{name, a.header[c], dev});
            report.max_deviation = std::max(report.max_deviation, dev);
        }
    }
    return report;
}

}  // namespace kickrabi
