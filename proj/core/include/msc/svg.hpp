#pragma once

#include <string>
#include <utility>
#include <vector>

#include "msc/sim.hpp"

namespace msc {

// Minimal static chart emitter: polylines plus circular markers over a
// labeled, ticked frame. Output is deterministic (fixed palette, fixed
// number formatting) so repeated runs are byte-identical.
struct Polyline {
    std::vector<std::pair<double, double>> points;
    std::string color = "#1f77b4";
    double width = 1.2;
};

struct MarkerSet {
    std::vector<std::pair<double, double>> points;
    std::string color = "#d62728";
    double radius = 4.0;
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Polyline> lines;
    std::vector<MarkerSet> markers;
    double width = 840.0;
    double height = 560.0;
};

std::string render_chart_svg(const ChartSpec& spec);

// 16 visually distinct line colors, cycled by index.
const std::string& palette_color(std::size_t index);

// State components against time, one polyline per (agent, component),
// colored by agent.
std::string states_chart_svg(const Trajectory& traj, const std::string& title);

// Agent paths in the plane with per-cluster markers at the final states.
// d = 1 plots value against time; d = 2 plots the two components; d >= 3
// uses a cabinet projection (u = x0 + 0.35 x2, v = x1 + 0.35 x2) of the
// first three components.
std::string paths_chart_svg(const Trajectory& traj, const ClusterReport& clusters,
                            const std::string& title);

}  // namespace msc
