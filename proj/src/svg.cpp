// svg.cpp — Line chart rendering

#include "kickrabi/svg.hpp"

#include "kickrabi/csv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace kickrabi {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 6> kPalette{"#d62728", "#1f77b4", "#2ca02c",
                                              "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fixed(double v) {
    // Two decimals is plenty for pixel coordinates.
    const double r = std::round(v * 100.0) / 100.0;
    return format_number(r);
}

}  // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::vector<double>& x, const std::vector<Series>& series) {
    for (const auto& s : series) {
        if (s.values.size() != x.size()) {
            throw std::invalid_argument("render_line_chart: series '" + s.name + "' length mismatch");
        }
    }
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    if (!x.empty()) {
        const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
        x_min = *lo;
        x_max = *hi > *lo ? *hi : *lo + 1.0;
        bool first = true;
        for (const auto& s : series) {
            for (double v : s.values) {
                y_min = first ? v : std::min(y_min, v);
                y_max = first ? v : std::max(y_max, v);
                first = false;
            }
        }
        if (!(y_max > y_min)) {
            y_max = y_min + 1.0;
        }
    }
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (v - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double v) { return kTop + (1.0 - (v - y_min) / (y_max - y_min)) * plot_h; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth) + "\" height=\"" +
           fixed(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fixed(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
           escape(title) + "</text>\n";
    out += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(plot_w) +
           "\" height=\"" + fixed(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int k = 0; k <= 4; ++k) {
        const double xv = x_min + (x_max - x_min) * k / 4.0;
        const double yv = y_min + (y_max - y_min) * k / 4.0;
        out += "<text x=\"" + fixed(px(xv)) + "\" y=\"" + fixed(kTop + plot_h + 18) +
               "\" text-anchor=\"middle\">" + format_number(std::round(xv * 1e4) / 1e4) + "</text>\n";
        out += "<text x=\"" + fixed(kLeft - 6) + "\" y=\"" + fixed(py(yv) + 4) +
               "\" text-anchor=\"end\">" + format_number(std::round(yv * 1e6) / 1e6) + "</text>\n";
    }
    out += "<text x=\"" + fixed(kLeft + plot_w / 2) + "\" y=\"" + fixed(kHeight - 10) +
           "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % kPalette.size()];
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < x.size(); ++i) {
            out += (i ? " " : "") + fixed(px(x[i])) + "," + fixed(py(series[s].values[i]));
        }
        out += "\"/>\n";
        const double ly = kTop + 16.0 + 18.0 * static_cast<double>(s);
        out += "<line x1=\"" + fixed(kWidth - kRight + 12) + "\" y1=\"" + fixed(ly - 4) + "\" x2=\"" +
               fixed(kWidth - kRight + 36) + "\" y2=\"" + fixed(ly - 4) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + fixed(kWidth - kRight + 42) + "\" y=\"" + fixed(ly) + "\">" +
               escape(series[s].name) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace kickrabi
