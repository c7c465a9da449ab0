#pragma once

#include <cstdint>
#include <string>

#include "msc/graph.hpp"
#include "msc/protocol.hpp"
#include "msc/scaling.hpp"
#include "msc/sim.hpp"

namespace msc {

enum class DynamicsKind { Single, Double };

struct Tolerances {
    double settle = 1e-5;
    double cluster = 1e-3;
};

// One fully validated experiment description. Initial states are already
// expanded: randomized scenarios are drawn at load time from the recorded
// seed (agents in index order, components in index order, positions before
// velocities), so two loads of one file agree bit for bit.
struct Scenario {
    std::string name;
    DynamicsKind dynamics = DynamicsKind::Single;
    double alpha = 0.0;  // damping gain; meaningful only for double dynamics
    NetworkGraph graph{1, {}};
    ScalingSet scalings;
    Vec positions0;
    Vec velocities0;
    bool randomized = false;
    std::uint64_t seed = 0;
    double range = 0.0;
    IntegratorConfig integrator;
    Tolerances tolerances;

    std::size_t dimension() const { return scalings.d; }
    std::size_t agent_count() const { return graph.vertex_count(); }
};

// Parses and validates scenario JSON. Every defect raises ValidationError
// whose field() names the offending path (e.g. "scalings[3].theta"); no
// field is silently defaulted except the documented optional blocks.
Scenario parse_scenario_text(const std::string& text);

// Reads the file then delegates to parse_scenario_text. Unreadable files
// raise ValidationError on field "file".
Scenario load_scenario(const std::string& path);

MscSystem make_system(const Scenario& scenario);

}  // namespace msc
