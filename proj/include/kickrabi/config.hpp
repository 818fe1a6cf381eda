// config.hpp — Scenario configuration and named presets
//
// Config files are flat key/value text with optional sections:
//
//     # comment
//     [fig2]
//     n_max = 28
//     output_dir = out/fig2
//
// A line is blank, a comment (# or ;), a section header "[name]", or
// "key = value". Keys outside any section apply to every scenario; keys in
// "[name]" apply only when that scenario is selected. Unknown keys, duplicate
// keys within a section and malformed numbers are errors.

#pragma once

#include "kickrabi/dynamics.hpp"
#include "kickrabi/model.hpp"
#include "kickrabi/propagator.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kickrabi {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Scenario { fig2, fig3, fig4, fig5, fig6, custom };

enum class RunKind {
    trace,      // populations vs time
    scan,       // max populations vs τ_I
    p_epsilon,  // exact vs perturbative p_ε
};

Scenario parse_scenario(const std::string& name);
std::string scenario_name(Scenario s);

struct GridSpec {
    double start{0.0};
    double stop{0.0};
    double step{0.0};
};

GridSpec parse_grid(const std::string& text);  // "start:stop:step"

struct ScenarioConfig {
    Scenario scenario{Scenario::custom};
    std::string variant;
    RunKind kind{RunKind::trace};
    SystemParams params;
    KickSchedule schedule;
    KickMode mode{KickMode::kicked};
    std::optional<GridSpec> grid;
    int scan_kicks{0};  // 0: default_scan_kicks
    std::string initial_state{"g,0"};
    std::vector<std::string> projectors;
    int n_max{20};
    std::filesystem::path output_dir{"out"};
    bool emit_svg{false};
    int samples_per_interval{8};
    int samples_per_kick{4};
};

// Ordered key → raw value map, as read from a file section or from flags.
using KeyValues = std::map<std::string, std::string>;

// Keys for `scenario` (when given): global keys, then the "[scenario]" section.
KeyValues read_config_file(const std::filesystem::path& path, const std::string& scenario = {});

// Applies presets for the named scenario, then the given overrides.
ScenarioConfig load_config(const KeyValues& values);

// Keys and values in a stable textual form, for run records.
KeyValues config_snapshot(const ScenarioConfig& config);

}  // namespace kickrabi
