#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "msc/errors.hpp"
#include "msc/rng.hpp"
#include "msc/scenario.hpp"

namespace {

using nlohmann::json;

// Smallest valid single-integrator scenario; each validation test mutates
// exactly one aspect of it.
json base_single() {
    json j;
    j["schema_version"] = 1;
    j["name"] = "probe";
    j["d"] = 1;
    j["graph"]["n"] = 2;
    j["graph"]["edges"] = json::array({json::array({1, 2})});
    j["scalings"] = json::array({json{{"type", "identity"}}, json{{"type", "identity"}}});
    j["dynamics"] = "single";
    j["initial"]["seed"] = 1;
    j["initial"]["range"] = 1.0;
    return j;
}

json base_double() {
    json j = base_single();
    j["dynamics"] = "double";
    j["alpha"] = 2.0;
    return j;
}

void expect_field(const json& j, const std::string& field) {
    try {
        msc::parse_scenario_text(j.dump());
        FAIL_CHECK("expected rejection on field " << field);
    } catch (const msc::ValidationError& e) {
        CHECK(e.field() == field);
    }
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("shipped planar scenario loads with every field") {
    const msc::Scenario sc = msc::load_scenario(MSC_SCENARIO_DIR "/sim1-2d.json");
    CHECK(sc.name == "sim1-2d");
    CHECK(sc.dynamics == msc::DynamicsKind::Single);
    CHECK(sc.dimension() == 2);
    CHECK(sc.agent_count() == 16);
    CHECK(sc.graph.edge_count() == 20);
    CHECK(sc.randomized);
    CHECK(sc.seed == 30);
    CHECK(sc.range == 1.0);
    CHECK(sc.integrator.dt == 0.005);
    CHECK(sc.integrator.t_end == 40.0);
    CHECK(sc.integrator.record_every == 10);
    CHECK(sc.tolerances.settle == 1e-5);
    CHECK(sc.tolerances.cluster == 1e-3);
    REQUIRE(sc.positions0.size() == 32);
    REQUIRE(sc.velocities0.size() == 32);
    for (double v : sc.velocities0) CHECK(v == 0.0);
    for (double v : sc.positions0) {
        CHECK(v >= -1.0);
        CHECK(v < 1.0);
    }

    // The first six scalings are the identity, the rest obtuse rotations.
    CHECK(sc.scalings.entries[0].sign == 1);
    CHECK(sc.scalings.entries[15].sign == -1);

    const msc::MscSystem sys = msc::make_system(sc);
    CHECK(sys.state_size() == 32);
}

TEST_CASE("seeded draw is the documented generator in index order") {
    const msc::Scenario sc = msc::load_scenario(MSC_SCENARIO_DIR "/sim1-2d.json");
    msc::SplitMix64 rng(30);
    for (std::size_t i = 0; i < 32; ++i) {
        const double expected = rng.uniform(-1.0, 1.0);
        CHECK(sc.positions0[i] == expected);
    }
}

TEST_CASE("damped scenario draws velocities after positions") {
    const msc::Scenario sc = msc::load_scenario(MSC_SCENARIO_DIR "/sim2-stable.json");
    CHECK(sc.dynamics == msc::DynamicsKind::Double);
    CHECK(sc.alpha == 2.557464936466796);
    msc::SplitMix64 rng(5);
    for (std::size_t i = 0; i < 32; ++i) CHECK(sc.positions0[i] == rng.uniform(-1.0, 1.0));
    for (std::size_t i = 0; i < 32; ++i) CHECK(sc.velocities0[i] == rng.uniform(-1.0, 1.0));
}

TEST_CASE("loading is deterministic") {
    const msc::Scenario a = msc::load_scenario(MSC_SCENARIO_DIR "/sim1-3d.json");
    const msc::Scenario b = msc::load_scenario(MSC_SCENARIO_DIR "/sim1-3d.json");
    CHECK(a.positions0 == b.positions0);
    CHECK(a.seed == 35);
    CHECK(a.dimension() == 3);
    // Mixed axis rotations: half the population is negated.
    int minus = 0;
    for (const auto& entry : a.scalings.entries) minus += entry.sign == -1 ? 1 : 0;
    CHECK(minus == 8);
}

TEST_CASE("explicit initial states are taken verbatim") {
    json j = base_single();
    j["initial"].erase("seed");
    j["initial"].erase("range");
    j["initial"]["positions"] = json::array({json::array({1.5}), json::array({-2.25})});
    const msc::Scenario sc = msc::parse_scenario_text(j.dump());
    CHECK_FALSE(sc.randomized);
    CHECK(sc.positions0 == msc::Vec{1.5, -2.25});
    CHECK(sc.velocities0 == msc::Vec{0.0, 0.0});

    json dj = base_double();
    dj["initial"].erase("seed");
    dj["initial"].erase("range");
    dj["initial"]["positions"] = json::array({json::array({1.0}), json::array({2.0})});
    dj["initial"]["velocities"] = json::array({json::array({0.5}), json::array({-0.5})});
    const msc::Scenario dsc = msc::parse_scenario_text(dj.dump());
    CHECK(dsc.velocities0 == msc::Vec{0.5, -0.5});
}

TEST_CASE("defaults cover integrator and tolerances") {
    const msc::Scenario sc = msc::parse_scenario_text(base_single().dump());
    CHECK(sc.integrator.dt == 0.005);
    CHECK(sc.integrator.t_end == 40.0);
    CHECK(sc.integrator.record_every == 1);
    CHECK(sc.tolerances.settle == 1e-5);
    CHECK(sc.tolerances.cluster == 1e-3);
}

TEST_CASE("malformed document level input") {
    try {
        msc::parse_scenario_text("not json at all {");
        FAIL_CHECK("expected rejection");
    } catch (const msc::ValidationError& e) {
        CHECK(e.field() == "json");
    }
    try {
        msc::parse_scenario_text("[1, 2, 3]");
        FAIL_CHECK("expected rejection");
    } catch (const msc::ValidationError& e) {
        CHECK(e.field() == "json");
    }
}

TEST_CASE("schema version and name validation") {
    json j = base_single();
    j.erase("schema_version");
    expect_field(j, "schema_version");
    j = base_single();
    j["schema_version"] = 2;
    expect_field(j, "schema_version");
    j = base_single();
    j["schema_version"] = "1";
    expect_field(j, "schema_version");
    j = base_single();
    j["name"] = 42;
    expect_field(j, "name");
    j = base_single();
    j["name"] = "";
    expect_field(j, "name");
    j = base_single();
    j["extra"] = 1;
    expect_field(j, "extra");
}

TEST_CASE("dimension validation") {
    json j = base_single();
    j["d"] = 0;
    expect_field(j, "d");
    j["d"] = 17;
    expect_field(j, "d");
    j["d"] = -1;
    expect_field(j, "d");
    j["d"] = 1.5;
    expect_field(j, "d");
}

TEST_CASE("graph validation") {
    json j = base_single();
    j["graph"].erase("n");
    expect_field(j, "graph.n");
    j = base_single();
    j["graph"]["n"] = 0;
    expect_field(j, "graph.n");
    j = base_single();
    j["graph"]["n"] = 10001;
    expect_field(j, "graph.n");
    j = base_single();
    j["graph"]["edges"] = 5;
    expect_field(j, "graph.edges");
    j = base_single();
    j["graph"]["edges"] = json::array({json::array({1})});
    expect_field(j, "graph.edges[0]");
    j = base_single();
    j["graph"]["edges"] = json::array({json::array({1, "2"})});
    expect_field(j, "graph.edges[0][1]");
    // Structural defects detected during graph construction.
    j = base_single();
    j["graph"]["edges"] = json::array({json::array({1, 1})});
    expect_field(j, "graph.edges");
    j = base_single();
    j["graph"]["edges"] = json::array({json::array({1, 3})});
    expect_field(j, "graph.edges");
    j = base_single();
    j["graph"]["edges"] = json::array({json::array({1, 2}), json::array({2, 1})});
    expect_field(j, "graph.edges");
    j = base_single();
    j["graph"]["unknown"] = 1;
    expect_field(j, "graph.unknown");
}

TEST_CASE("scaling validation") {
    json j = base_single();
    j["scalings"] = json::array({json{{"type", "identity"}}});
    expect_field(j, "scalings");
    j = base_single();
    j["scalings"][1] = 7;
    expect_field(j, "scalings[1]");
    j = base_single();
    j["scalings"][0]["type"] = "spiral";
    expect_field(j, "scalings[0].type");
    j = base_single();
    j["scalings"][0] = json{{"type", "rotation2"}, {"theta", 0.1}};
    expect_field(j, "scalings[0]");  // rotation2 needs d = 2
    j = base_single();
    j["scalings"][0]["negate"] = "yes";
    expect_field(j, "scalings[0].negate");

    json r = base_single();
    r["d"] = 2;
    r["scalings"] = json::array({json{{"type", "rotation2"}, {"theta", 0.1}},
                                 json{{"type", "rotation2"}, {"theta", 0.1}}});
    CHECK_NOTHROW(msc::parse_scenario_text(r.dump()));
    r["scalings"][0].erase("theta");
    expect_field(r, "scalings[0].theta");

    json a = base_single();
    a["d"] = 3;
    a["scalings"] = json::array(
        {json{{"type", "rotation3"}, {"axis", json::array({1.0, 1.0, 0.0})}, {"theta", 0.3}},
         json{{"type", "identity"}}});
    expect_field(a, "scalings[0].axis");
    a["scalings"][0]["axis"] = json::array({1.0, 0.0});
    expect_field(a, "scalings[0].axis");

    json e = base_single();
    e["d"] = 2;
    e["scalings"] = json::array(
        {json{{"type", "explicit"}, {"entries", json::array({json::array({1.0, 0.0})})}},
         json{{"type", "identity"}}});
    expect_field(e, "scalings[0].entries");
    e["scalings"][0]["entries"] =
        json::array({json::array({1.0, 0.0}), json::array({0.0})});
    expect_field(e, "scalings[0].entries[1]");
    e["scalings"][0]["entries"] =
        json::array({json::array({1.0, "x"}), json::array({0.0, 1.0})});
    expect_field(e, "scalings[0].entries[0][1]");

    // Indefinite matrices are rejected with the agent called out.
    json ind = base_single();
    ind["d"] = 2;
    ind["scalings"] = json::array(
        {json{{"type", "explicit"},
              {"entries", json::array({json::array({1.0, 0.0}), json::array({0.0, -1.0})})}},
         json{{"type", "identity"}}});
    try {
        msc::parse_scenario_text(ind.dump());
        FAIL_CHECK("expected rejection of the indefinite scaling");
    } catch (const msc::ValidationError& err) {
        CHECK(err.field() == "scalings[0]");
        CHECK(std::string(err.what()).find("agent 1") != std::string::npos);
    }
}

TEST_CASE("dynamics and damping validation") {
    json j = base_single();
    j["dynamics"] = "triple";
    expect_field(j, "dynamics");
    j = base_single();
    j.erase("dynamics");
    expect_field(j, "dynamics");
    j = base_single();
    j["alpha"] = 2.0;  // single dynamics takes no damping gain
    expect_field(j, "alpha");
    j = base_double();
    j.erase("alpha");
    expect_field(j, "alpha");
    j = base_double();
    j["alpha"] = 0.0;
    expect_field(j, "alpha");
    j = base_double();
    j["alpha"] = -1.5;
    expect_field(j, "alpha");
}

TEST_CASE("integrator and tolerance validation") {
    json j = base_single();
    j["integrator"]["dt"] = 0.0;
    expect_field(j, "integrator.dt");
    j = base_single();
    j["integrator"]["t_end"] = -3.0;
    expect_field(j, "integrator.t_end");
    j = base_single();
    j["integrator"]["record_every"] = 0;
    expect_field(j, "integrator.record_every");
    j = base_single();
    j["integrator"]["dt"] = 2.0;
    j["integrator"]["t_end"] = 1.0;
    expect_field(j, "integrator.dt");
    j = base_single();
    j["integrator"]["foo"] = 1;
    expect_field(j, "integrator.foo");
    j = base_single();
    j["tolerances"]["settle"] = 0.0;
    expect_field(j, "tolerances.settle");
    j = base_single();
    j["tolerances"]["cluster"] = -1.0;
    expect_field(j, "tolerances.cluster");
    j = base_single();
    j["tolerances"]["x"] = 1;
    expect_field(j, "tolerances.x");
}

TEST_CASE("initial state validation") {
    json j = base_single();
    j["initial"] = 5;
    expect_field(j, "initial");
    j = base_single();
    j["initial"] = json::object();
    expect_field(j, "initial");
    j = base_single();
    j["initial"]["positions"] = json::array({json::array({1.0}), json::array({2.0})});
    expect_field(j, "initial");  // seeded and explicit forms are exclusive
    j = base_single();
    j["initial"]["seed"] = -1;
    expect_field(j, "initial.seed");
    j = base_single();
    j["initial"]["seed"] = 1.5;
    expect_field(j, "initial.seed");
    j = base_single();
    j["initial"]["range"] = 0.0;
    expect_field(j, "initial.range");
    j = base_single();
    j["initial"].erase("range");
    expect_field(j, "initial.range");

    json e = base_single();
    e["initial"].erase("seed");
    e["initial"].erase("range");
    e["initial"]["positions"] = json::array({json::array({1.0})});
    expect_field(e, "initial.positions");
    e["initial"]["positions"] = json::array({json::array({1.0}), json::array({2.0, 3.0})});
    expect_field(e, "initial.positions[1]");
    e["initial"]["positions"] = json::array({json::array({1.0}), json::array({"x"})});
    expect_field(e, "initial.positions[1][0]");
    e["initial"]["positions"] = json::array({json::array({1.0}), json::array({2.0})});
    e["initial"]["velocities"] = json::array({json::array({0.0}), json::array({0.0})});
    expect_field(e, "initial.velocities");  // single dynamics has no velocities

    json d = base_double();
    d["initial"].erase("seed");
    d["initial"].erase("range");
    d["initial"]["positions"] = json::array({json::array({1.0}), json::array({2.0})});
    expect_field(d, "initial.velocities");  // double dynamics requires them
}

TEST_CASE("unreadable files are reported on the file field") {
    try {
        msc::load_scenario("/nonexistent/path/to/scenario.json");
        FAIL_CHECK("expected rejection");
    } catch (const msc::ValidationError& e) {
        CHECK(e.field() == "file");
    }
}

}  // TEST_SUITE
