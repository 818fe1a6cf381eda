// svg.hpp — Minimal SVG line charts for emitted CSV tables

#pragma once

#include <string>
#include <vector>

namespace kickrabi {

struct Series {
    std::string name;
    std::vector<double> values;
};

// One polyline per series against a shared x axis; deterministic output.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::vector<double>& x, const std::vector<Series>& series);

}  // namespace kickrabi
