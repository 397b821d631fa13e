#include <doctest.h>

#include <algorithm>

#include "safeplan/model.hpp"
#include "test_support.hpp"

using namespace safeplan;

namespace {

Specification tiny_spec() {
    Specification spec;
    spec.variables = {{"door", {"open", "closed"}}};
    spec.resources = {"ARM"};
    ActionDef close;
    close.name = "close_door";
    close.duration = 1;
    close.resources = {"ARM"};
    close.preconditions = {{false, "door", "open"}};
    close.nominal.assignments = {{"door", "closed"}};
    spec.actions = {close};
    GoalRule goal;
    goal.when = Condition::literal({false, "door", "open"});
    goal.target = {{false, "door", "closed"}};
    spec.goals = {goal};
    spec.config.max_plan_length = 1;
    return spec;
}

bool has_code(const std::vector<Diagnostic>& diags, const std::string& code) {
    return std::any_of(diags.begin(), diags.end(),
                       [&](const Diagnostic& d) { return d.code == code; });
}

}  // namespace

TEST_CASE("a well-formed specification validates cleanly") {
    CHECK(validate_specification(tiny_spec()).empty());
}

TEST_CASE("validation flags structural defects individually") {
    SUBCASE("no variables") {
        Specification spec = tiny_spec();
        spec.variables.clear();
        CHECK(has_code(validate_specification(spec), "NO_VARIABLES"));
    }
    SUBCASE("duplicate variable") {
        Specification spec = tiny_spec();
        spec.variables.push_back(spec.variables[0]);
        CHECK(has_code(validate_specification(spec), "DUPLICATE_VARIABLE"));
    }
    SUBCASE("empty domain") {
        Specification spec = tiny_spec();
        spec.variables.push_back({"mode", {}});
        CHECK(has_code(validate_specification(spec), "EMPTY_DOMAIN"));
    }
    SUBCASE("duplicate domain value") {
        Specification spec = tiny_spec();
        spec.variables[0].domain.push_back("open");
        CHECK(has_code(validate_specification(spec), "DUPLICATE_VALUE"));
    }
    SUBCASE("duplicate resource") {
        Specification spec = tiny_spec();
        spec.resources.push_back("ARM");
        CHECK(has_code(validate_specification(spec), "DUPLICATE_RESOURCE"));
    }
    SUBCASE("duplicate action") {
        Specification spec = tiny_spec();
        spec.actions.push_back(spec.actions[0]);
        CHECK(has_code(validate_specification(spec), "DUPLICATE_ACTION"));
    }
    SUBCASE("negative duration") {
        Specification spec = tiny_spec();
        spec.actions[0].duration = -1;
        CHECK(has_code(validate_specification(spec), "NEGATIVE_DURATION"));
    }
    SUBCASE("undeclared resource") {
        Specification spec = tiny_spec();
        spec.actions[0].resources.push_back("WHEELS");
        CHECK(has_code(validate_specification(spec), "UNDECLARED_RESOURCE"));
    }
    SUBCASE("undeclared variable in a precondition") {
        Specification spec = tiny_spec();
        spec.actions[0].preconditions.push_back({false, "window", "open"});
        CHECK(has_code(validate_specification(spec), "UNDECLARED_VARIABLE"));
    }
    SUBCASE("value outside the domain") {
        Specification spec = tiny_spec();
        spec.actions[0].preconditions.push_back({false, "door", "ajar"});
        CHECK(has_code(validate_specification(spec), "UNDECLARED_VALUE"));
    }
    SUBCASE("duplicate assignment in an effect set") {
        Specification spec = tiny_spec();
        spec.actions[0].nominal.assignments.push_back({"door", "open"});
        CHECK(has_code(validate_specification(spec), "DUPLICATE_ASSIGNMENT"));
    }
    SUBCASE("empty effect set") {
        Specification spec = tiny_spec();
        spec.actions[0].nominal.assignments.clear();
        CHECK(has_code(validate_specification(spec), "EMPTY_EFFECTS"));
    }
    SUBCASE("reaction rule without consequents") {
        Specification spec = tiny_spec();
        ReactionRule rule;
        rule.condition = Condition::literal({false, "door", "open"});
        spec.reaction_rules.push_back(rule);
        CHECK(has_code(validate_specification(spec), "EMPTY_RULE"));
    }
    SUBCASE("reaction rule naming an unknown action") {
        Specification spec = tiny_spec();
        ReactionRule rule;
        rule.condition = Condition::literal({false, "door", "open"});
        rule.consequents.push_back({false, "slam_door", -1});
        spec.reaction_rules.push_back(rule);
        CHECK(has_code(validate_specification(spec), "UNDECLARED_ACTION"));
    }
    SUBCASE("goal without target literals") {
        Specification spec = tiny_spec();
        spec.goals[0].target.clear();
        CHECK(has_code(validate_specification(spec), "EMPTY_GOAL"));
    }
    SUBCASE("negated goal target") {
        Specification spec = tiny_spec();
        spec.goals[0].target[0].negated = true;
        CHECK(has_code(validate_specification(spec), "NEGATED_GOAL"));
    }
    SUBCASE("non-positive max_plan_length") {
        Specification spec = tiny_spec();
        spec.config.max_plan_length = 0;
        CHECK(has_code(validate_specification(spec), "INVALID_CONFIG"));
    }
}

TEST_CASE("resolve_references fills every integer index") {
    Specification spec = test_support::load_spec("amr.tmt");
    for (const auto& action : spec.actions) {
        for (const auto& lit : action.preconditions) {
            CHECK(lit.var >= 0);
            CHECK(lit.val >= 0);
            CHECK(spec.variables[lit.var].name == lit.variable);
            CHECK(spec.variables[lit.var].domain[lit.val] == lit.value);
        }
        for (const auto& asg : action.nominal.assignments) {
            CHECK(asg.var >= 0);
            CHECK(asg.val >= 0);
        }
        for (const auto& alt : action.alternatives)
            for (const auto& asg : alt.assignments) {
                CHECK(asg.var >= 0);
                CHECK(asg.val >= 0);
            }
    }
    for (const auto& goal : spec.goals)
        for (const auto& lit : goal.target) {
            CHECK(lit.var >= 0);
            CHECK(lit.val >= 0);
        }
}

TEST_CASE("diagnostics render severity, location and code") {
    Diagnostic d{Severity::Error, "SOME_CODE", "something broke", {{3, 7}}, {}};
    CHECK(d.to_string() == "error at line 3, col 7 [SOME_CODE]: something broke");
    Diagnostic w{Severity::Warning, "W", "heads up", {}, {}};
    CHECK(w.to_string() == "warning [W]: heads up");
    CHECK(has_errors({w, d}));
    CHECK_FALSE(has_errors({w}));
}
