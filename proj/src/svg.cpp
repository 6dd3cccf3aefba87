#include "posent/svg.hpp"
#include "posent/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace posent {

namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void extend(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (lo > hi) { lo = 0; hi = 1; }
        if (lo == hi) { lo -= 0.5; hi += 0.5; }
    }
};

struct Mapper {
    Range xr, yr;
    double x(double v) const { return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * (kWidth - kLeft - kRight); }
    double y(double v) const { return kHeight - kBottom - (v - yr.lo) / (yr.hi - yr.lo) * (kHeight - kTop - kBottom); }
};

void header(std::string& svg, const std::string& title, const Mapper& m,
            const std::string& x_label, const std::string& y_label) {
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
           fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           escape(title) + "</text>\n";
    // axes
    svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kHeight - kBottom) + "\" x2=\"" +
           fmt(kWidth - kRight) + "\" y2=\"" + fmt(kHeight - kBottom) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(kLeft) +
           "\" y2=\"" + fmt(kHeight - kBottom) + "\" stroke=\"black\"/>\n";
    // axis extents as tick labels
    svg += "<text x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kHeight - kBottom + 18) +
           "\" font-family=\"sans-serif\" font-size=\"11\" data-role=\"x-min\">" + fmt(m.xr.lo) + "</text>\n";
    svg += "<text x=\"" + fmt(kWidth - kRight) + "\" y=\"" + fmt(kHeight - kBottom + 18) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" data-role=\"x-max\">" +
           fmt(m.xr.hi) + "</text>\n";
    svg += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(kHeight - kBottom) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" data-role=\"y-min\">" +
           fmt(m.yr.lo) + "</text>\n";
    svg += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(kTop + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" data-role=\"y-max\">" +
           fmt(m.yr.hi) + "</text>\n";
    svg += "<text x=\"" + fmt((kLeft + kWidth - kRight) / 2) + "\" y=\"" + fmt(kHeight - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + escape(x_label) +
           "</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt((kTop + kHeight - kBottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 " +
           fmt((kTop + kHeight - kBottom) / 2) + ")\">" + escape(y_label) + "</text>\n";
}

} // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<ChartSeries>& series) {
    if (series.empty()) throw config_error("line_chart_svg: no series");
    Mapper m;
    for (const ChartSeries& s : series) {
        if (s.xs.size() != s.ys.size()) throw config_error("line_chart_svg: xs/ys length mismatch");
        for (double v : s.xs) m.xr.extend(v);
        for (double v : s.ys) m.yr.extend(v);
    }
    m.xr.finish();
    m.yr.finish();

    std::string svg;
    header(svg, title, m, x_label, y_label);
    for (std::size_t si = 0; si < series.size(); ++si) {
        const ChartSeries& s = series[si];
        const char* color = kPalette[si % 6];
        std::string pts;
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (!std::isfinite(s.ys[i])) continue;
            pts += fmt(m.x(s.xs[i])) + "," + fmt(m.y(s.ys[i])) + " ";
        }
        if (!pts.empty()) pts.pop_back();
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" +
               pts + "\"/>\n";
        svg += "<text x=\"" + fmt(kWidth - kRight - 4) + "\" y=\"" + fmt(kTop + 14 + 14 * si) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" + color +
               "\">" + escape(s.label) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::string stacked_chart_svg(const std::string& title, const std::string& x_label,
                              const std::vector<double>& xs,
                              const std::vector<StackedSeries>& layers) {
    if (layers.empty() || xs.empty()) throw config_error("stacked_chart_svg: empty input");
    for (const StackedSeries& l : layers)
        if (l.values.size() != xs.size()) throw config_error("stacked_chart_svg: layer length mismatch");
    Mapper m;
    for (double v : xs) m.xr.extend(v);
    m.yr.extend(0.0);
    m.yr.extend(1.0);
    m.xr.finish();
    m.yr.finish();

    std::string svg;
    header(svg, title, m, x_label, "proportion");
    const double band = (kWidth - kLeft - kRight) / static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double base = 0;
        for (std::size_t li = 0; li < layers.size(); ++li) {
            const double v = layers[li].values[i];
            const double y0 = m.y(base), y1 = m.y(base + v);
            svg += "<rect x=\"" + fmt(kLeft + band * static_cast<double>(i) + 1) + "\" y=\"" + fmt(y1) +
                   "\" width=\"" + fmt(band - 2) + "\" height=\"" + fmt(y0 - y1) + "\" fill=\"" +
                   kPalette[li % 6] + "\"/>\n";
            base += v;
        }
    }
    for (std::size_t li = 0; li < layers.size(); ++li) {
        svg += "<text x=\"" + fmt(kWidth - kRight - 4) + "\" y=\"" + fmt(kTop + 14 + 14 * li) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" +
               kPalette[li % 6] + "\">" + escape(layers[li].label) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace posent
