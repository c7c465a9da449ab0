#include "msc/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "msc/errors.hpp"
#include "msc/rng.hpp"

namespace msc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
    throw ValidationError(field, message);
}

const json& member(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.is_object()) fail(path, "must be an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing required field");
    return *it;
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

double as_number(const json& v, const std::string& field) {
    if (!v.is_number()) fail(field, "must be a number");
    return v.get<double>();
}

double as_positive(const json& v, const std::string& field) {
    const double x = as_number(v, field);
    if (!(x > 0.0) || !std::isfinite(x)) fail(field, "must be a positive finite number");
    return x;
}

std::uint64_t as_uint(const json& v, const std::string& field) {
    if (!v.is_number_unsigned()) fail(field, "must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& field) {
    if (!v.is_string()) fail(field, "must be a string");
    return v.get<std::string>();
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) {
            if (it.key() == a) {
                ok = true;
                break;
            }
        }
        if (!ok) fail(join(path, it.key()), "unknown field");
    }
}

Matrix parse_scaling_spec(const json& spec, std::size_t d, std::size_t index) {
    const std::string path = "scalings[" + std::to_string(index) + "]";
    if (!spec.is_object()) fail(path, "must be an object");
    const std::string type = as_string(member(spec, path, "type"), path + ".type");

    bool negate = false;
    if (spec.contains("negate")) {
        const json& flag = spec.at("negate");
        if (!flag.is_boolean()) fail(path + ".negate", "must be a boolean");
        negate = flag.get<bool>();
    }

    Matrix m;
    if (type == "identity") {
        reject_unknown(spec, path, {"type", "negate"});
        m = Matrix::identity(d);
    } else if (type == "rotation2") {
        reject_unknown(spec, path, {"type", "negate", "theta"});
        if (d != 2) fail(path, "rotation2 requires d = 2, scenario has d = " + std::to_string(d));
        m = rotation2(as_number(member(spec, path, "theta"), path + ".theta"));
    } else if (type == "rotation3") {
        reject_unknown(spec, path, {"type", "negate", "axis", "theta"});
        if (d != 3) fail(path, "rotation3 requires d = 3, scenario has d = " + std::to_string(d));
        const json& axis = member(spec, path, "axis");
        if (!axis.is_array() || axis.size() != 3) {
            fail(path + ".axis", "must be an array of 3 numbers");
        }
        Vec a(3);
        for (std::size_t k = 0; k < 3; ++k) {
            a[k] = as_number(axis[k], path + ".axis[" + std::to_string(k) + "]");
        }
        const double theta = as_number(member(spec, path, "theta"), path + ".theta");
        try {
            m = rotation3(a, theta);
        } catch (const ValidationError& e) {
            fail(path + ".axis", e.what());
        }
    } else if (type == "explicit") {
        reject_unknown(spec, path, {"type", "negate", "entries"});
        const json& entries = member(spec, path, "entries");
        if (!entries.is_array() || entries.size() != d) {
            fail(path + ".entries", "must be an array of " + std::to_string(d) + " rows");
        }
        m = Matrix(d, d);
        for (std::size_t r = 0; r < d; ++r) {
            const json& row = entries[r];
            if (!row.is_array() || row.size() != d) {
                fail(path + ".entries[" + std::to_string(r) + "]",
                     "must be an array of " + std::to_string(d) + " numbers");
            }
            for (std::size_t c = 0; c < d; ++c) {
                m(r, c) = as_number(row[c], path + ".entries[" + std::to_string(r) + "][" +
                                                std::to_string(c) + "]");
            }
        }
    } else {
        fail(path + ".type",
             "unknown scaling type '" + type +
                 "' (expected identity, rotation2, rotation3, or explicit)");
    }
    if (negate) m = -1.0 * m;
    return m;
}

Vec parse_state_rows(const json& rows, const std::string& field, std::size_t n, std::size_t d) {
    if (!rows.is_array() || rows.size() != n) {
        fail(field, "must be an array of " + std::to_string(n) + " agent rows");
    }
    Vec out(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || row.size() != d) {
            fail(field + "[" + std::to_string(i) + "]",
                 "must be an array of " + std::to_string(d) + " numbers");
        }
        for (std::size_t k = 0; k < d; ++k) {
            const double v =
                as_number(row[k], field + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
            if (!std::isfinite(v)) {
                fail(field + "[" + std::to_string(i) + "][" + std::to_string(k) + "]",
                     "must be finite");
            }
            out[i * d + k] = v;
        }
    }
    return out;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        fail("json", e.what());
    }
    if (!root.is_object()) fail("json", "top level must be an object");
    reject_unknown(root, "",
                   {"schema_version", "name", "d", "graph", "scalings", "dynamics", "alpha",
                    "initial", "integrator", "tolerances"});

    const std::uint64_t version = as_uint(member(root, "", "schema_version"), "schema_version");
    if (version != 1) fail("schema_version", "unsupported version; expected 1");

    Scenario sc;
    sc.name = as_string(member(root, "", "name"), "name");
    if (sc.name.empty()) fail("name", "must be nonempty");

    const std::uint64_t d64 = as_uint(member(root, "", "d"), "d");
    if (d64 < 1 || d64 > 16) fail("d", "must be between 1 and 16");
    const std::size_t d = static_cast<std::size_t>(d64);

    // Graph block.
    {
        const json& g = member(root, "", "graph");
        reject_unknown(g, "graph", {"n", "edges"});
        const std::uint64_t n64 = as_uint(member(g, "graph", "n"), "graph.n");
        if (n64 < 1 || n64 > 10000) fail("graph.n", "must be between 1 and 10000");
        const json& edges_json = member(g, "graph", "edges");
        if (!edges_json.is_array()) fail("graph.edges", "must be an array of [i, j] pairs");
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        edges.reserve(edges_json.size());
        for (std::size_t k = 0; k < edges_json.size(); ++k) {
            const json& e = edges_json[k];
            const std::string ef = "graph.edges[" + std::to_string(k) + "]";
            if (!e.is_array() || e.size() != 2) fail(ef, "must be a pair [i, j]");
            edges.push_back({static_cast<std::size_t>(as_uint(e[0], ef + "[0]")),
                             static_cast<std::size_t>(as_uint(e[1], ef + "[1]"))});
        }
        sc.graph = NetworkGraph(static_cast<std::size_t>(n64), std::move(edges));
    }
    const std::size_t n = sc.graph.vertex_count();

    // Scalings.
    {
        const json& list = member(root, "", "scalings");
        if (!list.is_array() || list.size() != n) {
            fail("scalings", "must list exactly " + std::to_string(n) +
                                 " entries, one per agent");
        }
        std::vector<Matrix> raw;
        raw.reserve(n);
        for (std::size_t i = 0; i < n; ++i) raw.push_back(parse_scaling_spec(list[i], d, i));
        for (std::size_t i = 0; i < n; ++i) {
            try {
                sc.scalings.entries.push_back(classify_definite(raw[i]));
            } catch (const IndefiniteScalingError& e) {
                fail("scalings[" + std::to_string(i) + "]",
                     std::string("agent ") + std::to_string(i + 1) + ": " + e.what());
            }
        }
        sc.scalings.d = d;
    }

    // Dynamics and damping.
    const std::string dyn = as_string(member(root, "", "dynamics"), "dynamics");
    if (dyn == "single") {
        sc.dynamics = DynamicsKind::Single;
        if (root.contains("alpha")) fail("alpha", "only valid for double dynamics");
    } else if (dyn == "double") {
        sc.dynamics = DynamicsKind::Double;
        sc.alpha = as_positive(member(root, "", "alpha"), "alpha");
    } else {
        fail("dynamics", "must be 'single' or 'double'");
    }

    // Integrator block (optional, defaulted).
    if (root.contains("integrator")) {
        const json& it = root.at("integrator");
        reject_unknown(it, "integrator", {"dt", "t_end", "record_every"});
        if (it.contains("dt")) sc.integrator.dt = as_positive(it.at("dt"), "integrator.dt");
        if (it.contains("t_end")) {
            sc.integrator.t_end = as_positive(it.at("t_end"), "integrator.t_end");
        }
        if (it.contains("record_every")) {
            const std::uint64_t re = as_uint(it.at("record_every"), "integrator.record_every");
            if (re < 1) fail("integrator.record_every", "must be at least 1");
            sc.integrator.record_every = static_cast<std::size_t>(re);
        }
    }
    if (sc.integrator.dt > sc.integrator.t_end) {
        fail("integrator.dt", "must not exceed t_end");
    }

    // Tolerances (optional, defaulted).
    if (root.contains("tolerances")) {
        const json& t = root.at("tolerances");
        reject_unknown(t, "tolerances", {"settle", "cluster"});
        if (t.contains("settle")) {
            sc.tolerances.settle = as_positive(t.at("settle"), "tolerances.settle");
        }
        if (t.contains("cluster")) {
            sc.tolerances.cluster = as_positive(t.at("cluster"), "tolerances.cluster");
        }
    }

    // Initial state: explicit arrays or a seeded uniform draw.
    {
        const json& init = member(root, "", "initial");
        if (!init.is_object()) fail("initial", "must be an object");
        const bool seeded = init.contains("seed") || init.contains("range");
        const bool explicit_form = init.contains("positions") || init.contains("velocities");
        if (seeded && explicit_form) {
            fail("initial", "use either {seed, range} or explicit arrays, not both");
        }
        if (seeded) {
            reject_unknown(init, "initial", {"seed", "range"});
            sc.randomized = true;
            sc.seed = as_uint(member(init, "initial", "seed"), "initial.seed");
            sc.range = as_positive(member(init, "initial", "range"), "initial.range");
            SplitMix64 rng(sc.seed);
            sc.positions0.resize(n * d);
            for (double& v : sc.positions0) v = rng.uniform(-sc.range, sc.range);
            sc.velocities0.assign(n * d, 0.0);
            if (sc.dynamics == DynamicsKind::Double) {
                for (double& v : sc.velocities0) v = rng.uniform(-sc.range, sc.range);
            }
        } else if (explicit_form) {
            reject_unknown(init, "initial", {"positions", "velocities"});
            sc.positions0 =
                parse_state_rows(member(init, "initial", "positions"), "initial.positions", n, d);
            if (sc.dynamics == DynamicsKind::Double) {
                sc.velocities0 = parse_state_rows(member(init, "initial", "velocities"),
                                                  "initial.velocities", n, d);
            } else {
                if (init.contains("velocities")) {
                    fail("initial.velocities", "only valid for double dynamics");
                }
                sc.velocities0.assign(n * d, 0.0);
            }
        } else {
            fail("initial", "must provide {seed, range} or {positions [, velocities]}");
        }
    }

    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("file", "cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

MscSystem make_system(const Scenario& scenario) {
    return MscSystem::assemble(scenario.graph, scenario.scalings);
}

}  // namespace msc
