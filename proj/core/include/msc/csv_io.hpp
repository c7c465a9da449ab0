#pragma once

#include <string>

#include "msc/sim.hpp"

namespace msc {

// Long-format trajectory table, header `t,agent,component_index,value,channel`.
// Rows are grouped by sample time; within a sample all position rows come
// first (agents ascending, then components ascending, 1-based agent ids,
// 0-based component indices), followed by velocity rows for
// double-integrator runs. Values use %.17g so rereads round-trip exactly.
std::string trajectory_csv(const Trajectory& traj);

// Monitor table, header `t,lyapunov,xa_drift,disagreement,velocity_norm`.
// The velocity_norm cell is empty for single-integrator runs.
std::string monitors_csv(const Trajectory& traj);

// %.17g rendering shared by every text emitter.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace msc
