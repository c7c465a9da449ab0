#include "msc/csv_io.hpp"

#include <cstdio>
#include <fstream>

#include "msc/errors.hpp"

namespace msc {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t,agent,component_index,value,channel\n";
    const std::size_t n = traj.agent_count;
    const std::size_t d = traj.dimension;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const std::string t = format_double(traj.times[k]);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < d; ++c) {
                out += t;
                out += ',';
                out += std::to_string(i + 1);
                out += ',';
                out += std::to_string(c);
                out += ',';
                out += format_double(traj.positions[k][i * d + c]);
                out += ",position\n";
            }
        }
        if (!traj.velocities.empty()) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t c = 0; c < d; ++c) {
                    out += t;
                    out += ',';
                    out += std::to_string(i + 1);
                    out += ',';
                    out += std::to_string(c);
                    out += ',';
                    out += format_double(traj.velocities[k][i * d + c]);
                    out += ",velocity\n";
                }
            }
        }
    }
    return out;
}

std::string monitors_csv(const Trajectory& traj) {
    std::string out = "t,lyapunov,xa_drift,disagreement,velocity_norm\n";
    const bool has_velocity = !traj.velocity_norm.empty();
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        out += format_double(traj.times[k]);
        out += ',';
        out += format_double(traj.lyapunov[k]);
        out += ',';
        out += format_double(traj.xa_drift[k]);
        out += ',';
        out += format_double(traj.disagreement[k]);
        out += ',';
        if (has_velocity) out += format_double(traj.velocity_norm[k]);
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("output", "cannot open '" + path + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw ValidationError("output", "failed while writing '" + path + "'");
}

}  // namespace msc
