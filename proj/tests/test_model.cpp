#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hlsc/bench.hpp"
#include "hlsc/model.hpp"
#include "hlsc/model_io.hpp"
#include "hlsc/solvers.hpp"
#include "helpers.hpp"

using namespace hlsc;
using namespace hlsc::testing;

namespace {

bool has_violation(const std::vector<Violation>& vs, ViolationKind kind, int node = -1) {
    for (const auto& v : vs)
        if (v.kind == kind && (node < 0 || v.node == node)) return true;
    return false;
}

constexpr char kTrivialModelJson[] = R"({
  "alpha": 0.5,
  "nodes": [
    {"id": 0, "coordinate": [0.0], "kind": "interior", "envelope_neighbors": [],
     "weight": 1.0, "actions": [{"id": 0, "cost": 1.0, "transitions": [[0, 1.0]]}]}
  ]
})";

}  // namespace

TEST_CASE("smallest legal model loads") {
    ModelSpec m = load_model(kTrivialModelJson);
    CHECK(m.num_nodes() == 1);
    CHECK(m.alpha == 0.5);
    CHECK(m.actions[0].size() == 1);
    CHECK(validate_model(m).empty());
}

TEST_CASE("kernel row summing to 0.99 is rejected with the offending pair named") {
    std::string text = R"({
      "alpha": 0.5,
      "nodes": [
        {"id": 0, "kind": "interior",
         "actions": [{"id": 3, "cost": 1.0, "transitions": [[0, 0.99]]}]}
      ]
    })";
    try {
        load_model(text);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(e.violations.size() == 1);
        CHECK(e.violations[0].kind == ViolationKind::row_sum);
        CHECK(e.violations[0].node == 0);
        CHECK(e.violations[0].action == 3);
    }
}

TEST_CASE("threshold benchmark round-trips to an equal model") {
    ModelSpec m = make_threshold_model(11, 1.0, 0.9);
    ModelSpec back = load_model(save_model(m));
    CHECK(back == m);
}

TEST_CASE("canonical serialization is byte-stable") {
    ModelSpec m = make_threshold_model(5, 2.0, 0.5);
    std::string once = save_model(m);
    std::string twice = save_model(load_model(once));
    CHECK(once == twice);
}

TEST_CASE("dense transition rows are accepted and normalized to sparse form") {
    std::string sparse = R"({
      "alpha": 0.5,
      "nodes": [
        {"id": 0, "kind": "interior",
         "actions": [{"id": 0, "cost": 1.0, "transitions": [[1, 0.25], [0, 0.75]]}]},
        {"id": 1, "kind": "interior",
         "actions": [{"id": 0, "cost": 0.0, "transitions": [[1, 1.0]]}]}
      ]
    })";
    std::string dense = R"({
      "alpha": 0.5,
      "nodes": [
        {"id": 0, "kind": "interior",
         "actions": [{"id": 0, "cost": 1.0, "transitions": [0.75, 0.25]}]},
        {"id": 1, "kind": "interior",
         "actions": [{"id": 0, "cost": 0.0, "transitions": [0.0, 1.0]}]}
      ]
    })";
    CHECK(load_model(sparse) == load_model(dense));
}

TEST_CASE("parse and schema failures are distinguished") {
    CHECK_THROWS_AS(load_model("{not json"), ParseError);
    CHECK_THROWS_AS(load_model(R"({"nodes": []})"), SchemaError);
    CHECK_THROWS_AS(load_model(R"({"alpha": 0.5})"), SchemaError);
    CHECK_THROWS_AS(load_model(R"({"alpha": 0.5, "nodes": [{"id": 0}]})"), SchemaError);
}

TEST_CASE("user-supplied growth constants are ignored with a warning") {
    std::string text = R"({
      "alpha": 0.5, "M": 3.0, "beta": 2.0,
      "nodes": [
        {"id": 0, "kind": "interior",
         "actions": [{"id": 0, "cost": 1.0, "transitions": [[0, 1.0]]}]}
      ]
    })";
    std::vector<std::string> warnings;
    load_model(text, &warnings);
    CHECK(warnings.size() == 2);
}

TEST_CASE("validate_model flags every broken invariant exactly") {
    SUBCASE("valid trivial model") {
        CHECK(validate_model(single_node_model()).empty());
    }
    SUBCASE("empty action set at node 3") {
        ModelSpec m = make_random_finite_mdp(5, 2, 2, 7);
        m.actions[3].clear();
        auto vs = validate_model(m);
        REQUIRE(vs.size() == 1);
        CHECK(vs[0].kind == ViolationKind::empty_action_set);
        CHECK(vs[0].node == 3);
    }
    SUBCASE("boundary neighbor that is itself boundary breaks the two-layer rule") {
        ModelSpec m = envelope_triple_model();
        m.grid.nodes.push_back({3, {}, NodeKind::boundary, {2}});
        m.weight.push_back(1.0);
        m.actions.push_back({{0, 0.0, {{3, 1.0}}}});
        auto vs = validate_model(m);
        CHECK(has_violation(vs, ViolationKind::boundary_neighbor_not_interior, 3));
    }
    SUBCASE("interior node with neighbors") {
        ModelSpec m = envelope_triple_model();
        m.grid.nodes[0].envelope_neighbors = {1};
        CHECK(has_violation(validate_model(m), ViolationKind::interior_has_neighbors, 0));
    }
    SUBCASE("self neighbor") {
        ModelSpec m = envelope_triple_model();
        m.grid.nodes[2].envelope_neighbors = {2};
        CHECK(has_violation(validate_model(m), ViolationKind::self_neighbor, 2));
    }
    SUBCASE("weight below one") {
        ModelSpec m = single_node_model();
        m.weight[0] = 0.5;
        CHECK(has_violation(validate_model(m), ViolationKind::weight_below_one, 0));
    }
    SUBCASE("alpha out of range") {
        ModelSpec m = single_node_model();
        m.alpha = 1.0;
        CHECK(has_violation(validate_model(m), ViolationKind::alpha_out_of_range));
    }
    SUBCASE("validator is total on garbage input") {
        ModelSpec m;
        m.alpha = std::nan("");
        m.grid.nodes.push_back({7, {}, NodeKind::boundary, {-4, 7, 99}});
        m.weight = {std::nan("")};
        m.actions = {{{0, std::nan(""), {{-1, -0.5}, {-1, 2.0}}}}};
        auto vs = validate_model(m);
        CHECK(!vs.empty());
        CHECK(has_violation(vs, ViolationKind::node_id_sequence));
        CHECK(has_violation(vs, ViolationKind::neighbor_out_of_range));
        CHECK(has_violation(vs, ViolationKind::nonfinite_cost));
        CHECK(has_violation(vs, ViolationKind::negative_probability));
        CHECK(has_violation(vs, ViolationKind::duplicate_transition));
        CHECK(has_violation(vs, ViolationKind::nonfinite_weight));
    }
    SUBCASE("empty grid") {
        ModelSpec m;
        auto vs = validate_model(m);
        REQUIRE(vs.size() == 1);
        CHECK(vs[0].kind == ViolationKind::empty_grid);
    }
}

TEST_CASE("restrict_actions") {
    ModelSpec m = two_state_model();

    SUBCASE("identity restriction returns an equal model") {
        ArgminSets full{{{0, 1}, {0}}, 0.0};
        CHECK(restrict_actions(m, full) == m);
    }
    SUBCASE("singleton restriction leaves exactly one policy") {
        ArgminSets singles{{{1}, {0}}, 0.0};
        ModelSpec r = restrict_actions(m, singles);
        CHECK(validate_model(r).empty());
        for (const auto& acts : r.actions) CHECK(acts.size() == 1);
        CHECK(r.actions[0][0].id == 1);
    }
    SUBCASE("restriction to the optimal argmin sets preserves the optimal value") {
        ViResult vi = value_iteration(m, 1e-10);
        ArgminSets sets = extract_argmin_sets(m, vi.values);
        ModelSpec r = restrict_actions(m, sets);
        ViResult vi_r = value_iteration(r, 1e-10);
        for (int x = 0; x < m.num_nodes(); ++x)
            CHECK(close(vi_r.values[x], vi.values[x], 1e-9));
    }
    SUBCASE("restriction never touches alpha, weights, or surviving rows") {
        ArgminSets singles{{{0}, {0}}, 0.0};
        ModelSpec r = restrict_actions(m, singles);
        CHECK(r.num_nodes() == m.num_nodes());
        CHECK(r.alpha == m.alpha);
        CHECK(r.weight == m.weight);
        CHECK(r.actions[0][0] == m.actions[0][0]);
        CHECK(r.actions[1][0] == m.actions[1][0]);
    }
    SUBCASE("empty subset is an error") {
        ArgminSets bad{{{}, {0}}, 0.0};
        CHECK_THROWS_AS(restrict_actions(m, bad), std::invalid_argument);
    }
    SUBCASE("subset outside A(x) is an error") {
        ArgminSets bad{{{0, 7}, {0}}, 0.0};
        CHECK_THROWS_AS(restrict_actions(m, bad), std::invalid_argument);
    }
}

TEST_CASE("policy files round-trip") {
    Policy f = {1, 0, 2};
    std::string path = "test_policy_roundtrip.json";
    save_policy_file(f, path);
    CHECK(load_policy_file(path) == f);
    std::remove(path.c_str());
}
