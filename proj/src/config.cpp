// config.cpp — Config parsing, presets and validation

#include "kickrabi/config.hpp"

#include "kickrabi/analysis.hpp"
#include "kickrabi/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace kickrabi {

namespace {

using std::numbers::pi;

const std::set<std::string> kKnownKeys{
    "scenario",     "variant",         "omega_0",          "lambda_0",   "tau_i",
    "tau_p",        "n_kicks",         "initial_state",    "projectors", "n_max",
    "output_dir",   "emit_svg",        "samples_per_interval", "samples_per_kick", "grid",
    "kicks",        "scan_kicks",
};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    double value = 0.0;
    const auto* begin = text.data();
    const auto* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ConfigError("malformed number for '" + key + "': '" + text + "'");
    }
    return value;
}

int parse_int(const std::string& key, const std::string& text) {
    int value = 0;
    const auto* begin = text.data();
    const auto* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("malformed integer for '" + key + "': '" + text + "'");
    }
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "on" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "off" || text == "no") {
        return false;
    }
    throw ConfigError("malformed boolean for '" + key + "': '" + text + "'");
}

std::vector<std::string> parse_list(const std::string& text) {
    // Labels contain commas ("g,0"), so lists are separated by ';' or spaces.
    std::vector<std::string> out;
    std::string item;
    for (char c : text + ";") {
        if (c == ';' || c == ' ' || c == '\t') {
            if (!item.empty()) {
                out.push_back(item);
            }
            item.clear();
        } else {
            item.push_back(c);
        }
    }
    return out;
}

int horizon_kicks(double horizon, double period) {
    return static_cast<int>(std::ceil(horizon / period - 1e-9));
}

void apply_preset(ScenarioConfig& c) {
    switch (c.scenario) {
    case Scenario::fig2: {
        if (!c.variant.empty() && c.variant != "kicked" && c.variant != "free") {
            throw ConfigError("fig2 variants: kicked, free");
        }
        c.params = SystemParams{1.0, 1.0, 0.06};
        c.schedule.tau_i = resonance_tau(c.params, Branch::minus, 3);
        c.schedule.tau_p = pi / 2.0;
        // 1.5× the predicted transfer time π/(4|g_-|) in kicks.
        const auto eff = effective_two_level(c.params, c.schedule, Branch::minus);
        c.schedule.n_kicks = static_cast<int>(std::ceil(1.5 * pi / (4.0 * std::abs(eff.g_s))));
        c.mode = c.variant == "free" ? KickMode::free : KickMode::kicked;
        c.initial_state = "g,0";
        c.projectors = {"g,0", "2,-"};
        c.n_max = 20;
        break;
    }
    case Scenario::fig3:
        if (!c.variant.empty()) {
            throw ConfigError("fig3 has no variants");
        }
        c.kind = RunKind::scan;
        c.params = SystemParams{1.0, 1.0, 0.06};
        c.schedule.tau_p = pi / 2.0;
        c.grid = GridSpec{0.5, 20.0, 0.01};
        // Near tau_i ≈ π/2 the kick train pumps the field to ⟨n⟩ ≈ 8, so
        // the scan needs far more Fock levels than the resonant points do.
        c.n_max = 52;
        break;
    case Scenario::fig4:
    case Scenario::fig5: {
        if (c.variant.empty()) {
            c.variant = "c";
        }
        double tau = 0.0;
        if (c.variant == "a" || c.variant == "c") {
            tau = pi / 18.0;  // variant a samples on the variant c time grid
        } else if (c.variant == "b") {
            tau = pi / 6.0;
        } else {
            throw ConfigError(scenario_name(c.scenario) + " variants: a (no kicks), b, c");
        }
        c.params = SystemParams{1.0, 1.0, 0.5};
        c.schedule = KickSchedule{tau, tau, horizon_kicks(100.0, 2.0 * tau)};
        c.mode = c.variant == "a" ? KickMode::free : KickMode::kicked;
        if (c.scenario == Scenario::fig4) {
            c.initial_state = "e,0";
            c.projectors = {"e,0", "g,1"};
        } else {
            c.initial_state = "g,0";
            c.projectors = {"g,0"};
        }
        c.n_max = 36;
        break;
    }
    case Scenario::fig6: {
        if (!c.variant.empty()) {
            throw ConfigError("fig6 has no variants");
        }
        c.kind = RunKind::p_epsilon;
        c.params = SystemParams{1.0, 1.0, 0.5};
        const double tau = pi / 18.0;
        const int pairs = horizon_kicks(60.0, 4.0 * tau);
        c.schedule = KickSchedule{tau, tau, 2 * pairs};
        c.initial_state = "e,0";
        c.n_max = 36;
        break;
    }
    case Scenario::custom:
        if (!c.variant.empty()) {
            throw ConfigError("custom scenario has no variants");
        }
        break;
    }
}

}  // namespace

Scenario parse_scenario(const std::string& name) {
    if (name == "fig2") return Scenario::fig2;
    if (name == "fig3") return Scenario::fig3;
    if (name == "fig4") return Scenario::fig4;
    if (name == "fig5") return Scenario::fig5;
    if (name == "fig6") return Scenario::fig6;
    if (name == "custom") return Scenario::custom;
    throw ConfigError("unknown scenario '" + name + "' (fig2|fig3|fig4|fig5|fig6|custom)");
}

std::string scenario_name(Scenario s) {
    switch (s) {
    case Scenario::fig2: return "fig2";
    case Scenario::fig3: return "fig3";
    case Scenario::fig4: return "fig4";
    case Scenario::fig5: return "fig5";
    case Scenario::fig6: return "fig6";
    case Scenario::custom: return "custom";
    }
    return "custom";
}

GridSpec parse_grid(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
    if (b == std::string::npos || text.find(':', b + 1) != std::string::npos) {
        throw ConfigError("grid must be start:stop:step, got '" + text + "'");
    }
    GridSpec g{parse_double("grid", text.substr(0, a)), parse_double("grid", text.substr(a + 1, b - a - 1)),
               parse_double("grid", text.substr(b + 1))};
    if (!(g.start > 0.0) || !(g.stop >= g.start) || !(g.step > 0.0)) {
        throw ConfigError("grid needs 0 < start <= stop and step > 0");
    }
    return g;
}

KeyValues read_config_file(const std::filesystem::path& path, const std::string& scenario) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    KeyValues global, selected;
    std::map<std::string, KeyValues> sections;
    std::string section;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') {
            continue;
        }
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3) {
                throw ConfigError(where + ": malformed section header");
            }
            section = trim(t.substr(1, t.size() - 2));
            parse_scenario(section);
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected key = value");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (!kKnownKeys.contains(key)) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
        auto& target = section.empty() ? global : sections[section];
        if (!target.emplace(key, value).second) {
            throw ConfigError(where + ": duplicate key '" + key + "'");
        }
    }

    std::string chosen = scenario;
    if (chosen.empty()) {
        if (auto it = global.find("scenario"); it != global.end()) {
            chosen = it->second;
        } else if (sections.size() == 1) {
            chosen = sections.begin()->first;
        }
    }
    selected = global;
    if (auto it = sections.find(chosen); it != sections.end()) {
        for (const auto& [k, v] : it->second) {
            selected[k] = v;
        }
    }
    if (!chosen.empty()) {
        selected["scenario"] = chosen;
    }
    return selected;
}

ScenarioConfig load_config(const KeyValues& values) {
    for (const auto& [k, v] : values) {
        if (!kKnownKeys.contains(k)) {
            throw ConfigError("unknown key '" + k + "'");
        }
    }
    auto get = [&](const std::string& key) -> const std::string* {
        auto it = values.find(key);
        return it == values.end() ? nullptr : &it->second;
    };

    ScenarioConfig c;
    const auto* scenario = get("scenario");
    if (!scenario) {
        throw ConfigError("no scenario given");
    }
    c.scenario = parse_scenario(*scenario);
    if (const auto* v = get("variant")) {
        c.variant = *v;
    }
    apply_preset(c);

    if (c.scenario == Scenario::custom) {
        const bool scan = get("grid") != nullptr;
        const std::vector<std::string> required =
            scan ? std::vector<std::string>{"omega_0", "lambda_0", "tau_p", "n_max"}
                 : std::vector<std::string>{"omega_0", "lambda_0", "tau_i", "tau_p", "n_kicks",
                                            "initial_state", "projectors", "n_max"};
        for (const auto& key : required) {
            if (!get(key)) {
                throw ConfigError("custom scenario requires '" + key + "'");
            }
        }
        if (scan) {
            c.kind = RunKind::scan;
            for (const char* key : {"tau_i", "n_kicks", "initial_state", "projectors", "kicks"}) {
                if (get(key)) {
                    throw ConfigError(std::string("'") + key + "' contradicts a scan grid");
                }
            }
        }
    }

    if (const auto* v = get("grid")) {
        if (c.kind != RunKind::scan) {
            throw ConfigError("grid is only valid for scan scenarios, not " + scenario_name(c.scenario));
        }
        c.grid = parse_grid(*v);
    }
    if (c.kind == RunKind::scan) {
        for (const char* key : {"tau_i", "n_kicks", "initial_state", "projectors", "kicks"}) {
            if (get(key)) {
                throw ConfigError(std::string("'") + key + "' contradicts a scan scenario");
            }
        }
    }
    if (c.kind == RunKind::p_epsilon) {
        for (const char* key : {"initial_state", "projectors", "kicks"}) {
            if (get(key)) {
                throw ConfigError(std::string("'") + key + "' is fixed for fig6");
            }
        }
    }

    if (const auto* v = get("omega_0")) c.params.omega_0 = parse_double("omega_0", *v);
    if (const auto* v = get("lambda_0")) c.params.lambda_0 = parse_double("lambda_0", *v);
    if (const auto* v = get("tau_i")) c.schedule.tau_i = parse_double("tau_i", *v);
    if (const auto* v = get("tau_p")) c.schedule.tau_p = parse_double("tau_p", *v);
    if (const auto* v = get("n_kicks")) c.schedule.n_kicks = parse_int("n_kicks", *v);
    if (const auto* v = get("initial_state")) c.initial_state = *v;
    if (const auto* v = get("projectors")) c.projectors = parse_list(*v);
    if (const auto* v = get("n_max")) c.n_max = parse_int("n_max", *v);
    if (const auto* v = get("output_dir")) c.output_dir = *v;
    if (const auto* v = get("emit_svg")) c.emit_svg = parse_bool("emit_svg", *v);
    if (const auto* v = get("samples_per_interval"))
        c.samples_per_interval = parse_int("samples_per_interval", *v);
    if (const auto* v = get("samples_per_kick")) c.samples_per_kick = parse_int("samples_per_kick", *v);
    if (const auto* v = get("scan_kicks")) c.scan_kicks = parse_int("scan_kicks", *v);
    if (const auto* v = get("kicks")) c.mode = parse_bool("kicks", *v) ? KickMode::kicked : KickMode::free;

    try {
        c.params.validate();
        if (c.kind != RunKind::scan) {
            c.schedule.validate();
        } else if (!(c.schedule.tau_p >= 0.0)) {
            throw ConfigError("tau_p must be >= 0");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (c.n_max < 2) {
        throw ConfigError("n_max must be >= 2");
    }
    if (c.samples_per_interval < 1 || c.samples_per_kick < 1) {
        throw ConfigError("samples per interval must be >= 1");
    }
    if (c.scan_kicks < 0) {
        throw ConfigError("scan_kicks must be >= 0");
    }
    if (c.kind == RunKind::p_epsilon && c.schedule.n_kicks % 2 != 0) {
        throw ConfigError("fig6 needs an even n_kicks");
    }
    if (c.kind == RunKind::trace && c.projectors.empty()) {
        throw ConfigError("at least one projector label is required");
    }
    // Resolve labels now so bad ones fail as configuration errors.
    try {
        const HilbertSpace space(c.n_max);
        labeled_state(c.initial_state, c.params, space);
        make_projectors(c.projectors, c.params, space);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

KeyValues config_snapshot(const ScenarioConfig& c) {
    KeyValues out;
    out["scenario"] = scenario_name(c.scenario);
    if (!c.variant.empty()) {
        out["variant"] = c.variant;
    }
    out["omega_0"] = format_number(c.params.omega_0);
    out["lambda_0"] = format_number(c.params.lambda_0);
    out["tau_p"] = format_number(c.schedule.tau_p);
    out["n_max"] = std::to_string(c.n_max);
    out["output_dir"] = c.output_dir.string();
    out["emit_svg"] = c.emit_svg ? "true" : "false";
    out["samples_per_interval"] = std::to_string(c.samples_per_interval);
    out["samples_per_kick"] = std::to_string(c.samples_per_kick);
    if (c.kind == RunKind::scan) {
        const auto& g = *c.grid;
        out["grid"] = format_number(g.start) + ":" + format_number(g.stop) + ":" + format_number(g.step);
        out["scan_kicks"] = std::to_string(c.scan_kicks);
    } else {
        out["tau_i"] = format_number(c.schedule.tau_i);
        out["n_kicks"] = std::to_string(c.schedule.n_kicks);
        if (c.kind == RunKind::trace) {
            out["initial_state"] = c.initial_state;
            std::string joined;
            for (const auto& p : c.projectors) {
                joined += (joined.empty() ? "" : ";") + p;
            }
            out["projectors"] = joined;
            out["kicks"] = c.mode == KickMode::kicked ? "on" : "off";
        }
    }
    return out;
}

}  // namespace kickrabi
