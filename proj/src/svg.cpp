#include "fibbench/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace fibbench {
namespace {

constexpr std::array<const char*, 12> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#ad494a",
};

constexpr int kMarginLeft = 86;
constexpr int kMarginRight = 150;
constexpr int kMarginTop = 48;
constexpr int kMarginBottom = 64;
constexpr int kTickCount = 6;

std::string escape_text(std::string_view text) {
    std::string escaped;
    escaped.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': escaped += "&amp;"; break;
            case '<': escaped += "&lt;"; break;
            case '>': escaped += "&gt;"; break;
            default: escaped += c;
        }
    }
    return escaped;
}

std::string format_tick(double value) {
    std::ostringstream s;
    s << std::setprecision(4) << value;
    return s.str();
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    double clamp_span() const { return hi > lo ? hi - lo : 1.0; }
};

}  // namespace

void write_line_chart(std::ostream& out, const ChartSpec& spec,
                      std::span<const ChartSeries> series) {
    Range x_range{0.0, 1.0};
    Range y_range{0.0, 1.0};
    bool any_point = false;
    for (const ChartSeries& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!any_point) {
                x_range = {x, x};
                y_range = {0.0, y};  // y axis anchored at zero
                any_point = true;
            } else {
                x_range.lo = std::min(x_range.lo, x);
                x_range.hi = std::max(x_range.hi, x);
                y_range.hi = std::max(y_range.hi, y);
            }
        }
    }
    if (y_range.hi <= y_range.lo) {
        y_range.hi = y_range.lo + 1.0;
    }
    y_range.hi *= 1.05;  // headroom above the tallest point

    const double plot_w = spec.width - kMarginLeft - kMarginRight;
    const double plot_h = spec.height - kMarginTop - kMarginBottom;
    const auto to_px_x = [&](double x) {
        return kMarginLeft + (x - x_range.lo) / x_range.clamp_span() * plot_w;
    };
    const auto to_px_y = [&](double y) {
        return kMarginTop + plot_h - (y - y_range.lo) / y_range.clamp_span() * plot_h;
    };

    out << std::fixed << std::setprecision(2);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << spec.width << "\" height=\"" << spec.height << "\" viewBox=\"0 0 "
        << spec.width << ' ' << spec.height << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "  <text x=\"" << spec.width / 2 << "\" y=\"26\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"17\">" << escape_text(spec.title)
        << "</text>\n";

    // axes
    out << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop
        << "\" x2=\"" << kMarginLeft << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h
        << "\" x2=\"" << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\"/>\n";

    for (int t = 0; t < kTickCount; ++t) {
        const double frac = static_cast<double>(t) / (kTickCount - 1);
        const double xv = x_range.lo + frac * x_range.clamp_span();
        const double yv = y_range.lo + frac * y_range.clamp_span();
        const double xp = to_px_x(xv);
        const double yp = to_px_y(yv);
        out << "  <line x1=\"" << xp << "\" y1=\"" << kMarginTop + plot_h
            << "\" x2=\"" << xp << "\" y2=\"" << kMarginTop + plot_h + 5
            << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << xp << "\" y=\"" << kMarginTop + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_tick(xv) << "</text>\n";
        out << "  <line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << yp
            << "\" x2=\"" << kMarginLeft << "\" y2=\"" << yp
            << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << kMarginLeft - 9 << "\" y=\"" << yp + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_tick(yv) << "</text>\n";
    }

    out << "  <text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\""
        << spec.height - 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape_text(spec.x_label) << "</text>\n";
    out << "  <text x=\"20\" y=\"" << kMarginTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 20 " << kMarginTop + plot_h / 2 << ")\">"
        << escape_text(spec.y_label) << "</text>\n";

    std::size_t color_index = 0;
    for (const ChartSeries& s : series) {
        const char* color = kPalette[color_index % kPalette.size()];
        ++color_index;
        if (s.points.size() == 1) {
            out << "  <circle cx=\"" << to_px_x(s.points[0].first) << "\" cy=\""
                << to_px_y(s.points[0].second) << "\" r=\"3.5\" fill=\"" << color
                << "\"/>\n";
        } else if (!s.points.empty()) {
            out << "  <polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.6\" points=\"";
            for (const auto& [x, y] : s.points) {
                out << to_px_x(x) << ',' << to_px_y(y) << ' ';
            }
            out << "\"/>\n";
        }
    }

    // legend
    double legend_y = kMarginTop + 6;
    color_index = 0;
    for (const ChartSeries& s : series) {
        const char* color = kPalette[color_index % kPalette.size()];
        ++color_index;
        const double lx = spec.width - kMarginRight + 14;
        out << "  <line x1=\"" << lx << "\" y1=\"" << legend_y - 4 << "\" x2=\""
            << lx + 22 << "\" y2=\"" << legend_y - 4 << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "  <text x=\"" << lx + 28 << "\" y=\"" << legend_y
            << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << escape_text(s.label) << "</text>\n";
        legend_y += 18;
    }

    out << "</svg>\n";
}

}  // namespace fibbench
