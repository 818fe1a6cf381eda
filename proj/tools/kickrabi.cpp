// kickrabi — command-line driver: run | scan | check | compare
//
// Exit codes: 0 success, 2 validation failure (bad config, failed check or
// comparison, corrupt record), 3 numeric guard (truncation leakage,
// unitarity drift), 1 anything else.

#include "kickrabi/analysis.hpp"
#include "kickrabi/config.hpp"
#include "kickrabi/errors.hpp"
#include "kickrabi/run.hpp"
#include "kickrabi/validation.hpp"

#include "CLI11.hpp"

#include <iomanip>
#include <iostream>

namespace {

using namespace kickrabi;

constexpr int kExitValidation = 2;
constexpr int kExitNumericGuard = 3;

struct RunFlags {
    std::string config_file;
    std::string scenario;
    std::string variant;
    std::string grid;
    std::string out;
    int n_max{0};
    int samples_per_interval{0};
    bool svg{false};
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--config", f.config_file, "Key/value config file");
    cmd->add_option("--scenario", f.scenario, "fig2 | fig3 | fig4 | fig5 | fig6 | custom");
    cmd->add_option("--variant", f.variant, "Scenario variant (fig2: kicked|free, fig4/fig5: a|b|c)");
    cmd->add_option("--n-max", f.n_max, "Fock truncation");
    cmd->add_option("--out", f.out, "Output directory");
    cmd->add_flag("--svg", f.svg, "Also emit SVG plots");
    cmd->add_option("--samples-per-interval", f.samples_per_interval, "Samples inside each tau_i interval");
    cmd->add_option("--grid", f.grid, "Scan grid start:stop:step (units 1/omega_c)");
}

ScenarioConfig config_from_flags(const RunFlags& f) {
    KeyValues values;
    if (!f.config_file.empty()) {
        values = read_config_file(f.config_file, f.scenario);
    }
    if (!f.scenario.empty()) values["scenario"] = f.scenario;
    if (!f.variant.empty()) values["variant"] = f.variant;
    if (!f.grid.empty()) values["grid"] = f.grid;
    if (!f.out.empty()) values["output_dir"] = f.out;
    if (f.n_max != 0) values["n_max"] = std::to_string(f.n_max);
    if (f.samples_per_interval != 0) values["samples_per_interval"] = std::to_string(f.samples_per_interval);
    if (f.svg) values["emit_svg"] = "true";
    auto config = load_config(values);
    if (f.out.empty() && !values.contains("output_dir")) {
        config.output_dir = std::filesystem::path("out") / scenario_name(config.scenario);
    }
    return config;
}

int cmd_run(const RunFlags& flags, bool require_scan) {
    const auto config = config_from_flags(flags);
    if (require_scan && config.kind != RunKind::scan) {
        std::cerr << "scan: scenario " << scenario_name(config.scenario) << " is not a scan\n";
        return kExitValidation;
    }
    const auto record = run_scenario(config, std::cout);
    for (const auto& f : record.files) {
        std::cout << "wrote " << (config.output_dir / f.name).string() << "\n";
    }
    return 0;
}

int cmd_check(std::uint64_t seed, int draws) {
    CheckOptions options;
    options.seed = seed;
    options.draws = draws;
    const auto results = run_structural_checks(options);
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.passed() ? "PASS  " : "FAIL  ") << std::left << std::setw(40) << r.name
                  << " worst = " << std::scientific << std::setprecision(3) << r.worst
                  << "  tol = " << r.tolerance << std::defaultfloat << "\n";
        ok = ok && r.passed();
    }
    return ok ? 0 : kExitValidation;
}

int cmd_compare(const std::string& a, const std::string& b, double tolerance) {
    const auto report = compare_runs(a, b, tolerance);
    for (const auto& c : report.columns) {
        std::cout << std::left << std::setw(24) << c.file << std::setw(28) << c.column
                  << std::scientific << std::setprecision(3) << c.max_deviation << std::defaultfloat << "\n";
    }
    std::cout << (report.passed() ? "PASS" : "FAIL") << ": max deviation " << std::scientific
              << report.max_deviation << " vs tolerance " << report.tolerance << "\n";
    return report.passed() ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-kicked quantum Rabi model simulator"};
    app.set_version_flag("--version", kickrabi::software_version());
    app.require_subcommand(1);

    RunFlags run_flags, scan_flags;
    auto* run = app.add_subcommand("run", "Run a scenario and write CSV/SVG outputs");
    add_run_flags(run, run_flags);
    auto* scan = app.add_subcommand("scan", "Run a tau_i resonance scan");
    add_run_flags(scan, scan_flags);

    std::uint64_t seed = kickrabi::CheckOptions{}.seed;
    int draws = 10;
    auto* check = app.add_subcommand("check", "Run the structural invariant suite");
    check->add_option("--seed", seed, "RNG seed for parameter draws");
    check->add_option("--draws", draws, "Number of randomized parameter draws");

    std::string run_a, run_b;
    double tolerance = 1e-9;
    auto* compare = app.add_subcommand("compare", "Compare two runs column by column");
    compare->add_option("run_a", run_a, "Run directory or run_record.json")->required();
    compare->add_option("run_b", run_b, "Run directory or run_record.json")->required();
    compare->add_option("--tolerance", tolerance, "Max allowed absolute deviation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*run) return cmd_run(run_flags, false);
        if (*scan) return cmd_run(scan_flags, true);
        if (*check) return cmd_check(seed, draws);
        if (*compare) return cmd_compare(run_a, run_b, tolerance);
    } catch (const kickrabi::TruncationLeakage& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericGuard;
    } catch (const kickrabi::NumericGuard& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericGuard;
    } catch (const kickrabi::SchemaMismatch& e) {
        std::cerr << "error: schema mismatch: " << e.what() << "\n";
        return kExitValidation;
    } catch (const kickrabi::RecordError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
