#include <doctest.h>

#include <nlohmann/json.hpp>

#include "prppp/engine.hpp"
#include "prppp/feasibility.hpp"
#include "prppp/generator.hpp"
#include "prppp/instance.hpp"

using nlohmann::json;
using namespace prppp;

namespace {

json minimal_doc() {
    return json{
        {"n_retailers", 2},
        {"horizon", 2},
        {"n_vehicles", 1},
        {"u", 1.0},
        {"f", 10.0},
        {"h", {0.5, 1.0, 2.0}},
        {"d", {{3, 4}, {5, 0}}},
        {"c", {{0, 3, 4}, {3, 0, 5}, {4, 5, 0}}},
        {"C", 20.0},
        {"Q", 20.0},
        {"L", {50.0, 10.0, 10.0}},
        {"I0", {0.0, 0.0, 0.0}},
    };
}

} // namespace

TEST_CASE("explicit cost matrix round-trips") {
    Instance inst = Instance::from_json(minimal_doc());
    CHECK(inst.shared().transport_cost[1][2] == 5.0);
    CHECK(inst.shared().transport_cost[2][1] == 5.0);
    CHECK(inst.retailers() == 2);
    CHECK(inst.holding_cost(2) == 2.0);
}

TEST_CASE("costs derived from coordinates use half-up rounding at two decimals") {
    json doc = minimal_doc();
    doc.erase("c");
    doc["n_retailers"] = 1;
    doc["h"] = {0.5, 1.0};
    doc["d"] = {{3, 4}};
    doc["L"] = {50.0, 10.0};
    doc["I0"] = {0.0, 0.0};
    doc["coords"] = {{0.0, 0.0}, {3.0, 4.0}};
    Instance inst = Instance::from_json(doc);
    CHECK(inst.shared().transport_cost[0][1] == doctest::Approx(5.00).epsilon(1e-12));

    doc["scale"] = 0.333;
    Instance scaled = Instance::from_json(doc);
    // 0.333 * 5 = 1.665 -> 1.67 under half-up
    CHECK(scaled.shared().transport_cost[0][1] == doctest::Approx(1.67).epsilon(1e-12));
}

TEST_CASE("initial stock above the cap is rejected at load") {
    json doc = minimal_doc();
    doc["I0"] = {0.0, 20.0, 0.0};
    CHECK_THROWS_WITH_AS(Instance::from_json(doc).retailers(),
                         doctest::Contains("RetailerInventoryCap"), ValidationError);
}

TEST_CASE("schema violations name the offending field") {
    json doc = minimal_doc();
    doc.erase("Q");
    CHECK_THROWS_WITH_AS(Instance::from_json(doc).retailers(), doctest::Contains("Q"),
                         ValidationError);

    doc = minimal_doc();
    doc["d"][0][1] = 2.5;
    CHECK_THROWS_AS(Instance::from_json(doc), ValidationError);

    doc = minimal_doc();
    doc["c"][0][1] = 7.0; // breaks symmetry
    CHECK_THROWS_WITH_AS(Instance::from_json(doc).retailers(), doctest::Contains("symmetric"),
                         ValidationError);

    doc = minimal_doc();
    doc["coords"] = {{0, 0}, {1, 1}, {2, 2}}; // both coords and c present
    CHECK_THROWS_AS(Instance::from_json(doc), ValidationError);
}

TEST_CASE("all-zero demand rows are rejected") {
    json doc = minimal_doc();
    doc["d"] = {{3, 4}, {0, 0}};
    CHECK_THROWS_WITH_AS(Instance::from_json(doc).retailers(), doctest::Contains("zero total demand"),
                         ValidationError);
}

TEST_CASE("generator is deterministic per seed") {
    auto a = generate_instance(1, 5, 2);
    auto b = generate_instance(1, 5, 2);
    CHECK(a.instance.to_json().dump() == b.instance.to_json().dump());
    CHECK(a.instance.fingerprint() == b.instance.fingerprint());

    auto c = generate_instance(2, 5, 2);
    CHECK(a.instance.to_json()["d"] != c.instance.to_json()["d"]);
}

TEST_CASE("generator output feeds a feasible pipeline") {
    auto generated = generate_instance(7, 4, 3);
    const Instance& inst = generated.instance;
    std::vector<std::vector<DeliveryPattern>> prefs(static_cast<size_t>(inst.retailers()) + 1);
    for (int i = 1; i <= inst.retailers(); ++i) prefs[static_cast<size_t>(i)] = delivery_preferences(inst, i, 5);
    Plan plan = initial_solution(inst, prefs);
    CHECK(check_feasibility(inst, plan).empty());
}

TEST_CASE("generator clamps bad shapes instead of failing") {
    auto generated = generate_instance(3, 0, 0);
    CHECK(generated.instance.retailers() == 1);
    CHECK(generated.instance.horizon() == 1);
    CHECK(generated.clamp_notes.size() >= 2);
}
