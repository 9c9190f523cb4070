#include "formtrack/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "formtrack/fs_util.hpp"

namespace formtrack {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 600.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 48.0;
constexpr double kMarginBottom = 56.0;
constexpr std::size_t kMaxPlotPoints = 2000;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#e377c2"};

const char* color(std::size_t i) { return kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))]; }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Series {
    std::string name;
    std::string stroke;
    std::vector<Vec2> pts;
    bool dashed = false;
};

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    void include(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void pad() {
        const double span = hi - lo;
        const double p = span > 0.0 ? 0.05 * span : 1.0;
        lo -= p;
        hi += p;
    }
    double frac(double v) const { return (v - lo) / (hi - lo); }
};

Range range_of(const std::vector<Series>& series, bool x_axis) {
    bool first = true;
    Range r;
    for (const Series& s : series)
        for (const Vec2& p : s.pts) {
            const double v = x_axis ? p.x : p.y;
            if (!std::isfinite(v)) continue;
            if (first) {
                r.lo = r.hi = v;
                first = false;
            } else {
                r.include(v);
            }
        }
    return r;
}

std::string svg_open() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
           fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) +
           "\" font-family=\"sans-serif\" font-size=\"13\">\n"
           "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void draw_frame(std::string& out, const std::string& title, const std::string& x_label,
                const std::string& y_label, const Range& xr, const Range& yr) {
    const double pw = kWidth - kMarginLeft - kMarginRight;
    const double ph = kHeight - kMarginTop - kMarginBottom;
    out += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
           title + "</text>\n";
    out += "<rect x=\"" + fmt(kMarginLeft) + "\" y=\"" + fmt(kMarginTop) + "\" width=\"" + fmt(pw) +
           "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double f = k / 5.0;
        const double xv = xr.lo + f * (xr.hi - xr.lo);
        const double yv = yr.lo + f * (yr.hi - yr.lo);
        const double px = kMarginLeft + f * pw;
        const double py = kMarginTop + (1.0 - f) * ph;
        out += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(kMarginTop) + "\" x2=\"" + fmt(px) +
               "\" y2=\"" + fmt(kMarginTop + ph) + "\" stroke=\"#ddd\"/>\n";
        out += "<line x1=\"" + fmt(kMarginLeft) + "\" y1=\"" + fmt(py) + "\" x2=\"" +
               fmt(kMarginLeft + pw) + "\" y2=\"" + fmt(py) + "\" stroke=\"#ddd\"/>\n";
        out += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(kMarginTop + ph + 18) +
               "\" text-anchor=\"middle\">" + fmt(xv) + "</text>\n";
        out += "<text x=\"" + fmt(kMarginLeft - 8) + "\" y=\"" + fmt(py + 4) +
               "\" text-anchor=\"end\">" + fmt(yv) + "</text>\n";
    }
    out += "<text x=\"" + fmt(kMarginLeft + pw / 2) + "\" y=\"" + fmt(kHeight - 12) +
           "\" text-anchor=\"middle\">" + x_label + "</text>\n";
    out += "<text x=\"18\" y=\"" + fmt(kMarginTop + ph / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " + fmt(kMarginTop + ph / 2) +
           ")\">" + y_label + "</text>\n";
}

void draw_series(std::string& out, const std::vector<Series>& series, const Range& xr,
                 const Range& yr) {
    const double pw = kWidth - kMarginLeft - kMarginRight;
    const double ph = kHeight - kMarginTop - kMarginBottom;
    for (const Series& s : series) {
        std::string pts;
        bool broken = true;
        for (const Vec2& p : s.pts) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
                broken = true;  // gap in the curve (e.g. infinite potential)
                continue;
            }
            const double px = kMarginLeft + xr.frac(p.x) * pw;
            const double py = kMarginTop + (1.0 - yr.frac(p.y)) * ph;
            if (broken && !pts.empty()) {
                out += "<polyline fill=\"none\" stroke=\"" + s.stroke +
                       (s.dashed ? "\" stroke-dasharray=\"6 4" : "") + "\" points=\"" + pts +
                       "\"/>\n";
                pts.clear();
            }
            broken = false;
            pts += fmt(px) + "," + fmt(py) + " ";
        }
        if (!pts.empty())
            out += "<polyline fill=\"none\" stroke=\"" + s.stroke +
                   (s.dashed ? "\" stroke-dasharray=\"6 4" : "") + "\" points=\"" + pts + "\"/>\n";
    }
}

void draw_legend(std::string& out, const std::vector<Series>& series) {
    double y = kMarginTop + 16.0;
    const double x = kWidth - kMarginRight - 150.0;
    for (const Series& s : series) {
        if (s.name.empty()) continue;
        out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(y - 4) + "\" x2=\"" + fmt(x + 26) +
               "\" y2=\"" + fmt(y - 4) + "\" stroke=\"" + s.stroke +
               (s.dashed ? "\" stroke-dasharray=\"6 4" : "") + "\"/>\n";
        out += "<text x=\"" + fmt(x + 32) + "\" y=\"" + fmt(y) + "\">" + s.name + "</text>\n";
        y += 18.0;
    }
}

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series) {
    Range xr = range_of(series, true);
    Range yr = range_of(series, false);
    xr.pad();
    yr.pad();
    std::string out = svg_open();
    draw_frame(out, title, x_label, y_label, xr, yr);
    draw_series(out, series, xr, yr);
    draw_legend(out, series);
    out += "</svg>\n";
    return out;
}

std::size_t plot_stride(std::size_t n) { return n <= kMaxPlotPoints ? 1 : (n + kMaxPlotPoints - 1) / kMaxPlotPoints; }

// Sampled indices for plotting: every stride-th plus the final sample.
std::vector<std::size_t> plot_indices(std::size_t n) {
    std::vector<std::size_t> idx;
    const std::size_t stride = plot_stride(n);
    for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
    if (!idx.empty() && idx.back() != n - 1) idx.push_back(n - 1);
    return idx;
}

std::string distances_svg(const Trace& trace, const Scenario& scenario) {
    const auto idx = plot_indices(trace.samples.size());
    const auto edges = scenario.graph.edges();
    std::vector<Series> series;

    const double t0 = trace.samples.empty() ? 0.0 : trace.samples.front().t;
    const double t1 = trace.samples.empty() ? 1.0 : trace.samples.back().t;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        Series s{"d" + std::to_string(edges[e].i) + "_" + std::to_string(edges[e].j), color(e), {}, false};
        for (std::size_t i : idx) s.pts.push_back({trace.samples[i].t, trace.samples[i].edge_distances[e]});
        series.push_back(std::move(s));
        series.push_back({"", color(e), {{t0, edges[e].bounds.r_lo}, {t1, edges[e].bounds.r_lo}}, true});
        series.push_back({"", color(e), {{t0, edges[e].bounds.r_hi}, {t1, edges[e].bounds.r_hi}}, true});
    }
    const std::size_t n_agents = scenario.graph.agent_count();
    for (std::size_t k = 0; k < n_agents; ++k) {
        Series s{"dT" + std::to_string(k), color(edges.size() + k), {}, false};
        for (std::size_t i : idx) s.pts.push_back({trace.samples[i].t, trace.samples[i].target_distances[k]});
        series.push_back(std::move(s));
    }
    std::set<double> radii(scenario.standoffs.radii.begin(), scenario.standoffs.radii.end());
    for (double r : radii) series.push_back({"", "#666", {{t0, r}, {t1, r}}, true});

    return line_chart("Edge and target distances", "t [s]", "distance [m]", series);
}

std::string controls_svg(const Trace& trace, const Scenario& scenario) {
    const auto idx = plot_indices(trace.samples.size());
    std::vector<Series> series;
    const double t0 = trace.samples.empty() ? 0.0 : trace.samples.front().t;
    const double t1 = trace.samples.empty() ? 1.0 : trace.samples.back().t;
    for (std::size_t k = 0; k < scenario.graph.agent_count(); ++k) {
        Series s{"|u" + std::to_string(k) + "|", color(k), {}, false};
        for (std::size_t i : idx)
            s.pts.push_back({trace.samples[i].t, trace.samples[i].controls[k].norm()});
        series.push_back(std::move(s));
    }
    series.push_back(
        {"u_max", "#333", {{t0, scenario.saturation.u_max}, {t1, scenario.saturation.u_max}}, true});
    return line_chart("Command magnitudes", "t [s]", "|u| [m/s]", series);
}

std::string trajectories_svg(const Trace& trace, const Scenario& scenario) {
    const auto idx = plot_indices(trace.samples.size());
    const std::size_t n_agents = scenario.graph.agent_count();
    std::vector<Series> series;

    Series target{"target", "#333", {}, false};
    for (std::size_t i : idx) target.pts.push_back(trace.samples[i].target_position);
    series.push_back(std::move(target));
    for (std::size_t k = 0; k < n_agents; ++k) {
        Series s{"agent " + std::to_string(k), color(k), {}, false};
        for (std::size_t i : idx) s.pts.push_back(trace.samples[i].positions[k]);
        series.push_back(std::move(s));
    }

    // Closed formation polygons at the first and last sample.
    if (!trace.samples.empty() && n_agents >= 2) {
        for (const bool last : {false, true}) {
            const TraceSample& s = last ? trace.samples.back() : trace.samples.front();
            Series poly{"", last ? "#555" : "#aaa", {}, true};
            for (std::size_t k = 0; k <= n_agents; ++k) poly.pts.push_back(s.positions[k % n_agents]);
            series.push_back(std::move(poly));
        }
    }

    // Standoff circles around the final target position.
    if (!trace.samples.empty()) {
        const Vec2 c = trace.samples.back().target_position;
        std::set<double> radii(scenario.standoffs.radii.begin(), scenario.standoffs.radii.end());
        for (double r : radii) {
            Series circ{"", "#999", {}, true};
            for (int k = 0; k <= 90; ++k) {
                const double a = 2.0 * 3.14159265358979323846 * k / 90.0;
                circ.pts.push_back(c + Vec2{r * std::cos(a), r * std::sin(a)});
            }
            series.push_back(std::move(circ));
        }
    }

    // Equal aspect: widen the shorter span.
    Range xr = range_of(series, true);
    Range yr = range_of(series, false);
    xr.pad();
    yr.pad();
    const double pw = kWidth - kMarginLeft - kMarginRight;
    const double ph = kHeight - kMarginTop - kMarginBottom;
    const double sx = (xr.hi - xr.lo) / pw;
    const double sy = (yr.hi - yr.lo) / ph;
    if (sx > sy) {
        const double grow = (sx * ph - (yr.hi - yr.lo)) / 2.0;
        yr.lo -= grow;
        yr.hi += grow;
    } else {
        const double grow = (sy * pw - (xr.hi - xr.lo)) / 2.0;
        xr.lo -= grow;
        xr.hi += grow;
    }

    std::string out = svg_open();
    draw_frame(out, "Trajectories", "x [m]", "y [m]", xr, yr);
    draw_series(out, series, xr, yr);

    // Start and end markers.
    if (!trace.samples.empty()) {
        for (std::size_t k = 0; k < n_agents; ++k) {
            const Vec2 a = trace.samples.front().positions[k];
            const Vec2 b = trace.samples.back().positions[k];
            const double ax = kMarginLeft + xr.frac(a.x) * pw;
            const double ay = kMarginTop + (1.0 - yr.frac(a.y)) * ph;
            const double bx = kMarginLeft + xr.frac(b.x) * pw;
            const double by = kMarginTop + (1.0 - yr.frac(b.y)) * ph;
            out += "<circle cx=\"" + fmt(ax) + "\" cy=\"" + fmt(ay) + "\" r=\"4\" fill=\"" +
                   color(k) + "\"/>\n";
            out += "<circle cx=\"" + fmt(bx) + "\" cy=\"" + fmt(by) +
                   "\" r=\"5\" fill=\"none\" stroke=\"" + color(k) + "\" stroke-width=\"2\"/>\n";
        }
    }
    draw_legend(out, series);
    out += "</svg>\n";
    return out;
}

}  // namespace

PlotPaths emit_plots(const Trace& trace, const Scenario& scenario,
                     const std::filesystem::path& dir, std::string_view stem) {
    const std::string base(stem);
    PlotPaths paths;
    paths.distances = dir / (base + "_distances.svg");
    paths.trajectories = dir / (base + "_trajectories.svg");
    paths.controls = dir / (base + "_controls.svg");
    write_text_atomic(paths.distances, distances_svg(trace, scenario));
    write_text_atomic(paths.trajectories, trajectories_svg(trace, scenario));
    write_text_atomic(paths.controls, controls_svg(trace, scenario));
    return paths;
}

}  // namespace formtrack
