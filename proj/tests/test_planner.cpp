#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "safeplan/parser.hpp"
#include "safeplan/planner.hpp"
#include "test_support.hpp"

using namespace safeplan;
using test_support::state_of;

namespace {

std::vector<std::string> names_of(const Specification& spec, const Step& step) {
    std::vector<std::string> names;
    for (int a : step.actions) names.push_back(spec.actions[a].name);
    std::sort(names.begin(), names.end());
    return names;
}

std::vector<std::vector<std::string>> plan_names(const Specification& spec,
                                                 const Plan& plan) {
    std::vector<std::vector<std::string>> out;
    for (const auto& step : plan.steps) out.push_back(names_of(spec, step));
    return out;
}

Specification amr_with_duration(const std::string& action, int duration) {
    Specification spec = test_support::load_spec("amr.tmt");
    for (auto& a : spec.actions)
        if (a.name == action) a.duration = duration;
    return spec;
}

}  // namespace

TEST_CASE("feasible step enumeration is exhaustive and ordered") {
    Specification spec = test_support::load_spec("amr.tmt");
    State s = state_of(spec, {"corridor", "ok", "free", "off"});
    auto steps = enumerate_feasible_steps(s, spec);

    std::vector<std::vector<std::string>> got;
    for (const auto& step : steps) got.push_back(names_of(spec, step));

    // The three moves are available; they pairwise share MOTORS, so every
    // admissible step is a singleton.
    std::vector<std::vector<std::string>> expected = {
        {"move_to_charger"}, {"move_to_workstation_1"}, {"move_to_workstation_2"}};
    CHECK(got == expected);

    // Ordering: (duration sum, cardinality, names); all three have duration
    // 10, so names decide. The idle step appears only on request.
    auto with_idle = enumerate_feasible_steps(s, spec, true);
    REQUIRE(with_idle.size() == 4);
    CHECK(with_idle.back().actions.empty());
}

TEST_CASE("find_plan reproduces the documented AMR choices") {
    Specification spec = test_support::load_spec("amr.tmt");
    Planner planner(spec);

    auto first_step = [&](std::initializer_list<const char*> values) {
        auto result = planner.find_plan(state_of(spec, values));
        REQUIRE(result.ok());
        REQUIRE_FALSE(result.plan->steps.empty());
        return names_of(spec, result.plan->steps[0]);
    };

    CHECK(first_step({"corridor", "ok", "free", "off"}) ==
          std::vector<std::string>{"move_to_workstation_1"});
    CHECK(first_step({"corridor", "low", "free", "off"}) ==
          std::vector<std::string>{"move_to_charger"});
    CHECK(first_step({"workstation_2", "ok", "free", "on"}) ==
          std::vector<std::string>{"stop_conveyor"});
    CHECK(first_step({"corridor", "low", "free", "on"}) ==
          std::vector<std::string>{"stop_conveyor"});
}

TEST_CASE("plans end exactly when the frozen goal target holds") {
    Specification spec = test_support::load_spec("amr.tmt");
    Planner planner(spec);
    State s = state_of(spec, {"corridor", "ok", "free", "off"});
    auto result = planner.find_plan(s);
    REQUIRE(result.ok());

    // Goal 3 (load free -> loaded): move to workstation 1, then receive.
    CHECK(plan_names(spec, *result.plan) ==
          std::vector<std::vector<std::string>>{{"move_to_workstation_1"},
                                                {"receive_workpiece"}});
    REQUIRE(result.plan->successors.size() == 2);
    CHECK(result.plan->successors[0] ==
          state_of(spec, {"workstation_1", "ok", "free", "off"}));
    CHECK(result.plan->successors[1] ==
          state_of(spec, {"workstation_1", "ok", "loaded", "on"}));
}

TEST_CASE("a state already satisfying its goal gets the empty plan") {
    Specification spec = test_support::load_spec("grid3.tmt");
    Planner planner(spec);
    auto result = planner.find_plan(state_of(spec, {"x2", "y1"}));
    REQUIRE(result.ok());
    CHECK(result.plan->steps.empty());
}

TEST_CASE("restoration cost dominates plan length for unsafe starts") {
    // With the default durations, stop_conveyor (1) is the cheapest way out
    // of (corridor, low, free, on).
    Specification spec = test_support::load_spec("amr.tmt");
    Planner planner(spec);
    State s = state_of(spec, {"corridor", "low", "free", "on"});
    auto result = planner.find_plan(s);
    REQUIRE(result.ok());
    CHECK(names_of(spec, result.plan->steps[0]) ==
          std::vector<std::string>{"stop_conveyor"});

    // At duration 20, stop_conveyor loses to leaving for workstation 2
    // (duration 10); workstation 1 and the charger are excluded because an
    // outcome would land in corridor/charger with the conveyor still on.
    Specification variant = amr_with_duration("stop_conveyor", 20);
    Planner vplanner(variant);
    auto vresult = vplanner.find_plan(s);
    REQUIRE(vresult.ok());
    CHECK(names_of(variant, vresult.plan->steps[0]) ==
          std::vector<std::string>{"move_to_workstation_2"});
    long long cost = 0;
    for (int a : vresult.plan->steps[0].actions) cost += variant.actions[a].duration;
    CHECK(cost == 10);
}

TEST_CASE("every AMR state has a plan within the configured bound") {
    Specification spec = test_support::load_spec("amr.tmt");
    Planner planner(spec);
    for (const auto& s : planner.states()) {
        auto result = planner.find_plan(s);
        REQUIRE_MESSAGE(result.ok(), state_to_string(spec, s));
        CHECK(static_cast<int>(result.plan->steps.size()) <= spec.config.max_plan_length);
    }
}

TEST_CASE("find_plan length matches the independent BFS oracle") {
    for (const char* name : {"amr.tmt", "grid3.tmt", "coinflip.tmt"}) {
        CAPTURE(name);
        Specification spec = test_support::load_spec(name);
        Planner planner(spec);
        for (const auto& s : planner.states()) {
            auto result = planner.find_plan(s);
            auto oracle = plan_length_oracle(s, spec);
            REQUIRE(result.ok() == oracle.has_value());
            if (result.ok())
                CHECK(static_cast<int>(result.plan->steps.size()) == *oracle);
        }
    }
}

TEST_CASE("infeasible states are categorized") {
    SUBCASE("unsafe state with no way back") {
        Specification spec = test_support::load_spec("grid5.tmt");
        Planner planner(spec);
        auto result = planner.find_plan(state_of(spec, {"x0", "y0"}));
        REQUIRE_FALSE(result.ok());
        CHECK(result.infeasibility->category == InfeasibilityCategory::SafetyNotRestorable);
    }
    SUBCASE("safe state with no admissible step") {
        Specification spec = test_support::load_spec("grid5.tmt");
        Planner planner(spec);
        auto result = planner.find_plan(state_of(spec, {"x1", "y2"}));
        REQUIRE_FALSE(result.ok());
        CHECK(result.infeasibility->category == InfeasibilityCategory::NoSafeStep);
    }
    SUBCASE("goal unreachable within the bound") {
        ParseResult r = load_specification(
            "BEGIN STATE VECTOR\nstate n can be n0, n1, n2\nEND STATE VECTOR\n"
            "BEGIN ACTIONS\n"
            "action step_1\npreconditions: n is n0\nnominal effects: n is n1\n\n"
            "action step_2\npreconditions: n is n1\nnominal effects: n is n2\n"
            "END ACTIONS\n"
            "BEGIN GOALS\ngoal type: priority\n"
            "when NOT n is n2 then goal: n is n2\nEND GOALS\n"
            "BEGIN CONFIG\nmax_plan_length: 1\nEND CONFIG\n");
        REQUIRE(r.ok());
        Planner planner(*r.spec);
        auto result = planner.find_plan(State{{0}});
        REQUIRE_FALSE(result.ok());
        CHECK(result.infeasibility->category == InfeasibilityCategory::GoalUnreachable);
    }
    SUBCASE("contradictory reaction obligations") {
        ParseResult r = load_specification(
            "BEGIN STATE VECTOR\nstate a can be t, f\nEND STATE VECTOR\n"
            "BEGIN ACTIONS\naction toggle\nnominal effects: a is f\nEND ACTIONS\n"
            "BEGIN REACTION RULES\n"
            "rule: IF a is t THEN executing toggle\n"
            "rule: IF a is t THEN NOT executing toggle\n"
            "END REACTION RULES\n"
            "BEGIN GOALS\ngoal type: priority\n"
            "when a is t then goal: a is f\nEND GOALS\n"
            "BEGIN CONFIG\nmax_plan_length: 2\nEND CONFIG\n");
        REQUIRE(r.ok());
        Planner planner(*r.spec);
        auto result = planner.find_plan(State{{0}});
        REQUIRE_FALSE(result.ok());
        CHECK(result.infeasibility->category == InfeasibilityCategory::ObligationConflict);
    }
}

TEST_CASE("planning is deterministic across planner instances") {
    Specification spec = test_support::load_spec("amr.tmt");
    Planner first(spec);
    Planner second(spec);
    for (const auto& s : first.states()) {
        auto a = first.find_plan(s);
        auto b = second.find_plan(s);
        REQUIRE(a.ok() == b.ok());
        if (a.ok()) {
            CHECK(plan_names(spec, *a.plan) == plan_names(spec, *b.plan));
        }
    }
}

TEST_CASE("grounded diagonal-drift grid: two rightward moves reach the dock") {
    Specification spec = test_support::load_spec("grid3.tmt");
    Planner planner(spec);
    auto result = planner.find_plan(state_of(spec, {"x0", "y1"}));
    REQUIRE(result.ok());
    CHECK(plan_names(spec, *result.plan) ==
          std::vector<std::vector<std::string>>{{"move_right_from_x0_y1"},
                                                {"move_right_from_x1_y1"}});
}
