// Copyright 2026 The pqc-lens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "pqc_lens/stats.hpp"

// Minimal static SVG figures: histogram overlays, line plots, heatmaps and
// scatter polylines. Diagnostic quality only.

namespace pqc_lens::svg {

inline constexpr double kWidth = 640, kHeight = 440;
inline constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;

inline const char *palette(std::size_t i) {
    static const char *colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return colors[i % 10];
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline std::string escape(const std::string &s) {
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

struct Range {
    double lo = 0.0, hi = 1.0;

    static Range of(const std::vector<double> &v) {
        Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        for (double x : v)
            if (std::isfinite(x)) r.lo = std::min(r.lo, x), r.hi = std::max(r.hi, x);
        if (!(r.hi >= r.lo)) return {0.0, 1.0};
        if (r.hi == r.lo) r.lo -= 0.5, r.hi += 0.5;
        return r;
    }
    void include(const Range &o) { lo = std::min(lo, o.lo), hi = std::max(hi, o.hi); }
};

/// Frame with title, axis labels and min/max tick labels.
class Canvas {
   public:
    Canvas(std::string title, Range x, Range y, std::string xlabel, std::string ylabel, std::string note = {})
        : x_(x), y_(y) {
        body_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
              << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
        if (!note.empty()) body_ << "<!-- " << escape(note) << " -->\n";
        body_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        body_ << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
              << "</text>\n";
        body_ << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w() << "\" height=\"" << plot_h()
              << "\" fill=\"none\" stroke=\"black\"/>\n";
        body_ << "<text x=\"" << kLeft + plot_w() / 2 << "\" y=\"" << kHeight - 12
              << "\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n";
        body_ << "<text x=\"16\" y=\"" << kTop + plot_h() / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
              << kTop + plot_h() / 2 << ")\">" << escape(ylabel) << "</text>\n";
        tick(kLeft, kHeight - kBottom + 16, num(x.lo), "start");
        tick(kLeft + plot_w(), kHeight - kBottom + 16, num(x.hi), "end");
        tick(kLeft - 6, kHeight - kBottom, num(y.lo), "end");
        tick(kLeft - 6, kTop + 10, num(y.hi), "end");
    }

    double px(double x) const { return kLeft + (x - x_.lo) / (x_.hi - x_.lo) * plot_w(); }
    double py(double y) const { return kTop + plot_h() - (y - y_.lo) / (y_.hi - y_.lo) * plot_h(); }

    void rect(double x0, double y0, double x1, double y1, const std::string &fill, double opacity = 1.0) {
        const double l = std::min(px(x0), px(x1)), r = std::max(px(x0), px(x1));
        const double t = std::min(py(y0), py(y1)), b = std::max(py(y0), py(y1));
        body_ << "<rect x=\"" << num(l) << "\" y=\"" << num(t) << "\" width=\"" << num(r - l) << "\" height=\""
              << num(b - t) << "\" fill=\"" << fill << "\" fill-opacity=\"" << opacity << "\"/>\n";
    }

    void polyline(const std::vector<double> &xs, const std::vector<double> &ys, const std::string &color,
                  bool dashed = false) {
        body_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
              << (dashed ? " stroke-dasharray=\"5,3\"" : "") << " points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) body_ << num(px(xs[i])) << ',' << num(py(ys[i])) << ' ';
        body_ << "\"/>\n";
    }

    void dot(double x, double y, const std::string &color, double r = 2.5) {
        body_ << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"" << r << "\" fill=\"" << color
              << "\"/>\n";
    }

    void legend(const std::vector<std::pair<std::string, std::string>> &entries) {
        double y = kTop + 16;
        for (const auto &[label, color] : entries) {
            body_ << "<rect x=\"" << kWidth - kRight - 150 << "\" y=\"" << y - 9 << "\" width=\"12\" height=\"10\" fill=\""
                  << color << "\"/>\n";
            tick(kWidth - kRight - 133, y, label, "start");
            y += 16;
        }
    }

    std::string finish() {
        body_ << "</svg>\n";
        return body_.str();
    }

   private:
    static double plot_w() { return kWidth - kLeft - kRight; }
    static double plot_h() { return kHeight - kTop - kBottom; }

    void tick(double x, double y, const std::string &text, const char *anchor) {
        body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor << "\">"
              << escape(text) << "</text>\n";
    }

    Range x_, y_;
    std::ostringstream body_;
};

/// Two histograms on one grid drawn as translucent bars.
inline std::string histogram_overlay(const std::string &title, const Histogram &a, const std::string &a_label,
                                     const Histogram &b, const std::string &b_label, const std::string &xlabel,
                                     const std::string &note = {}) {
    Range y = Range::of(a.masses);
    y.include(Range::of(b.masses));
    y.lo = 0.0;
    Canvas c(title, {a.bin_edges.front(), a.bin_edges.back()}, y, xlabel, "probability", note);
    for (std::size_t k = 0; k < b.bins(); ++k) c.rect(b.bin_edges[k], 0, b.bin_edges[k + 1], b.masses[k], palette(0), 0.5);
    for (std::size_t k = 0; k < a.bins(); ++k) c.rect(a.bin_edges[k], 0, a.bin_edges[k + 1], a.masses[k], palette(1), 0.5);
    c.legend({{a_label, palette(1)}, {b_label, palette(0)}});
    return c.finish();
}

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

inline std::string line_plot(const std::string &title, const std::vector<Series> &series, const std::string &xlabel,
                             const std::string &ylabel, const std::string &note = {}) {
    Range xr = Range::of(series.front().x), yr = Range::of(series.front().y);
    for (const auto &s : series) xr.include(Range::of(s.x)), yr.include(Range::of(s.y));
    Canvas c(title, xr, yr, xlabel, ylabel, note);
    std::vector<std::pair<std::string, std::string>> legend;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const std::string color = series[i].dashed ? "#000000" : palette(i);
        c.polyline(series[i].x, series[i].y, color, series[i].dashed);
        if (series[i].x.size() <= 40)
            for (std::size_t k = 0; k < series[i].x.size(); ++k) c.dot(series[i].x[k], series[i].y[k], color);
        legend.emplace_back(series[i].label, color);
    }
    c.legend(legend);
    return c.finish();
}

/// Row-major grid values (rows along x) on a shared coordinate axis, coloured
/// from dark (low) to bright (high).
inline std::string heatmap(const std::string &title, const std::vector<double> &coords,
                           const std::vector<double> &values, const std::string &xlabel, const std::string &ylabel,
                           const std::string &note = {}, const std::vector<Series> &overlay = {}) {
    const std::size_t p = coords.size();
    const double half = p > 1 ? 0.5 * (coords[1] - coords[0]) : 0.5;
    Range span{coords.front() - half, coords.back() + half};
    Canvas c(title, span, span, xlabel, ylabel, note);
    const Range v = Range::of(values);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            const double t = (values[i * p + j] - v.lo) / (v.hi - v.lo);
            char color[8];
            std::snprintf(color, sizeof color, "#%02x%02x%02x", static_cast<int>(68 + 185 * t),
                          static_cast<int>(1 + 230 * t), static_cast<int>(84 + 60 * (1 - t)));
            c.rect(coords[i] - half, coords[j] - half, coords[i] + half, coords[j] + half, color);
        }
    for (std::size_t s = 0; s < overlay.size(); ++s) c.polyline(overlay[s].x, overlay[s].y, palette(s));
    return c.finish();
}

/// One polyline per series with markers at every point.
inline std::string scatter_paths(const std::string &title, const std::vector<Series> &paths, const std::string &xlabel,
                                 const std::string &ylabel, const std::string &note = {}) {
    Range xr = Range::of(paths.front().x), yr = Range::of(paths.front().y);
    for (const auto &s : paths) xr.include(Range::of(s.x)), yr.include(Range::of(s.y));
    Canvas c(title, xr, yr, xlabel, ylabel, note);
    std::vector<std::pair<std::string, std::string>> legend;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        c.polyline(paths[i].x, paths[i].y, palette(i));
        for (std::size_t k = 0; k < paths[i].x.size(); ++k) c.dot(paths[i].x[k], paths[i].y[k], palette(i), 1.8);
        legend.emplace_back(paths[i].label, palette(i));
    }
    c.legend(legend);
    return c.finish();
}

}  // namespace pqc_lens::svg
