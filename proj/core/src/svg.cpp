#include "msc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace msc {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Bounds {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -std::numeric_limits<double>::infinity();
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();

    void add(double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }

    void finalize() {
        if (!(xmin <= xmax)) {
            xmin = 0.0;
            xmax = 1.0;
        }
        if (!(ymin <= ymax)) {
            ymin = 0.0;
            ymax = 1.0;
        }
        const double xpad = (xmax - xmin) > 0.0 ? 0.05 * (xmax - xmin) : 0.5;
        const double ypad = (ymax - ymin) > 0.0 ? 0.05 * (ymax - ymin) : 0.5;
        xmin -= xpad;
        xmax += xpad;
        ymin -= ypad;
        ymax += ypad;
    }
};

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

const std::string& palette_color(std::size_t index) {
    static const std::vector<std::string> colors = {
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
        "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
        "#8c6d31", "#843c39", "#7b4173", "#3182bd"};
    return colors[index % colors.size()];
}

std::string render_chart_svg(const ChartSpec& spec) {
    const double ml = 72.0, mr = 24.0, mt = 48.0, mb = 56.0;
    const double pw = spec.width - ml - mr;
    const double ph = spec.height - mt - mb;

    Bounds b;
    for (const Polyline& line : spec.lines)
        for (auto [x, y] : line.points) b.add(x, y);
    for (const MarkerSet& ms : spec.markers)
        for (auto [x, y] : ms.points) b.add(x, y);
    b.finalize();

    auto px = [&](double x) { return ml + (x - b.xmin) / (b.xmax - b.xmin) * pw; };
    auto py = [&](double y) { return mt + ph - (y - b.ymin) / (b.ymax - b.ymin) * ph; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(spec.width) +
           "\" height=\"" + fmt(spec.height) + "\" viewBox=\"0 0 " + fmt(spec.width) + " " +
           fmt(spec.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    svg += "<text x=\"" + fmt(spec.width / 2) +
           "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"17\">" +
           xml_escape(spec.title) + "</text>\n";

    // Frame, grid, and five ticks per axis.
    svg += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" + fmt(pw) +
           "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"#333333\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = b.xmin + (b.xmax - b.xmin) * k / 4.0;
        const double fy = b.ymin + (b.ymax - b.ymin) * k / 4.0;
        const double gx = px(fx);
        const double gy = py(fy);
        if (k > 0 && k < 4) {
            svg += "<line x1=\"" + fmt(gx) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(gx) +
                   "\" y2=\"" + fmt(mt + ph) + "\" stroke=\"#dddddd\"/>\n";
            svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(gy) + "\" x2=\"" + fmt(ml + pw) +
                   "\" y2=\"" + fmt(gy) + "\" stroke=\"#dddddd\"/>\n";
        }
        svg += "<text x=\"" + fmt(gx) + "\" y=\"" + fmt(mt + ph + 18.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               fmt(fx) + "</text>\n";
        svg += "<text x=\"" + fmt(ml - 8.0) + "\" y=\"" + fmt(gy + 4.0) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + fmt(fy) +
               "</text>\n";
    }
    svg += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(spec.height - 12.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
           xml_escape(spec.x_label) + "</text>\n";
    svg += "<text x=\"18\" y=\"" + fmt(mt + ph / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
           "transform=\"rotate(-90 18 " +
           fmt(mt + ph / 2) + ")\">" + xml_escape(spec.y_label) + "</text>\n";

    for (const Polyline& line : spec.lines) {
        if (line.points.empty()) continue;
        svg += "<polyline fill=\"none\" stroke=\"" + line.color + "\" stroke-width=\"" +
               fmt(line.width) + "\" points=\"";
        for (std::size_t k = 0; k < line.points.size(); ++k) {
            if (k > 0) svg += ' ';
            svg += fmt(px(line.points[k].first)) + "," + fmt(py(line.points[k].second));
        }
        svg += "\"/>\n";
    }
    for (const MarkerSet& ms : spec.markers) {
        for (auto [x, y] : ms.points) {
            svg += "<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) + "\" r=\"" +
                   fmt(ms.radius) + "\" fill=\"" + ms.color +
                   "\" stroke=\"#222222\" stroke-width=\"0.8\"/>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

std::string states_chart_svg(const Trajectory& traj, const std::string& title) {
    ChartSpec spec;
    spec.title = title;
    spec.x_label = "time (s)";
    spec.y_label = "state component";
    const std::size_t n = traj.agent_count;
    const std::size_t d = traj.dimension;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < d; ++c) {
            Polyline line;
            line.color = palette_color(i);
            line.points.reserve(traj.times.size());
            for (std::size_t k = 0; k < traj.times.size(); ++k) {
                line.points.push_back({traj.times[k], traj.positions[k][i * d + c]});
            }
            spec.lines.push_back(std::move(line));
        }
    }
    return render_chart_svg(spec);
}

std::string paths_chart_svg(const Trajectory& traj, const ClusterReport& clusters,
                            const std::string& title) {
    ChartSpec spec;
    spec.title = title;
    const std::size_t n = traj.agent_count;
    const std::size_t d = traj.dimension;

    auto project = [&](const Vec& state, std::size_t agent) -> std::pair<double, double> {
        const double* p = state.data() + agent * d;
        if (d == 1) return {0.0, p[0]};
        if (d == 2) return {p[0], p[1]};
        return {p[0] + 0.35 * p[2], p[1] + 0.35 * p[2]};
    };

    if (d == 1) {
        spec.x_label = "time (s)";
        spec.y_label = "state";
    } else if (d == 2) {
        spec.x_label = "component 0";
        spec.y_label = "component 1";
    } else {
        spec.x_label = "component 0 + 0.35 * component 2";
        spec.y_label = "component 1 + 0.35 * component 2";
    }

    for (std::size_t i = 0; i < n; ++i) {
        Polyline line;
        line.color = palette_color(i);
        line.points.reserve(traj.times.size());
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            if (d == 1) {
                line.points.push_back({traj.times[k], traj.positions[k][i]});
            } else {
                line.points.push_back(project(traj.positions[k], i));
            }
        }
        spec.lines.push_back(std::move(line));
    }

    if (!traj.positions.empty()) {
        const Vec& last = traj.positions.back();
        const double t_last = traj.times.back();
        for (std::size_t i = 0; i < n && i < clusters.assignments.size(); ++i) {
            MarkerSet ms;
            ms.color = palette_color(clusters.assignments[i] - 1);
            if (d == 1) {
                ms.points.push_back({t_last, last[i]});
            } else {
                ms.points.push_back(project(last, i));
            }
            spec.markers.push_back(std::move(ms));
        }
    }
    return render_chart_svg(spec);
}

}  // namespace msc
