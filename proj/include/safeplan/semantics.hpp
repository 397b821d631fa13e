#pragma once

#include <optional>
#include <string>
#include <vector>

#include "safeplan/model.hpp"

namespace safeplan {

/// Product of the domain sizes.
long long state_count(const Specification& spec);

/// Canonical order: variables in declaration order, values in declaration
/// order, the last variable varying fastest.
std::vector<State> enumerate_states(const Specification& spec);
long long state_index(const Specification& spec, const State& s);
State state_from_index(const Specification& spec, long long index);

/// `<var> is <val>, ...` in declaration order, for diagnostics and reports.
std::string state_to_string(const Specification& spec, const State& s);

bool eval_literal(const Literal& lit, const State& s);
bool eval_condition(const Condition& cond, const State& s);

/// Conjunction of non-negated literals (a goal target).
bool target_satisfied(const std::vector<Literal>& target, const State& s);

/// Returns s with the effect's assignments applied; unmentioned variables
/// are unchanged.
State apply_effects(const State& s, const EffectSet& effects);

/// True iff every state rule's antecedent implies its consequent in s.
bool is_state_safe(const State& s, const std::vector<StateRule>& rules);
inline bool is_state_safe(const State& s, const Specification& spec) {
    return is_state_safe(s, spec.state_rules);
}

/// Nominal effect first, then alternatives in declaration order.
std::vector<const EffectSet*> possible_effects(const ActionDef& action);

bool preconditions_hold(const ActionDef& action, const State& s);

/// allowed(a, s): every possible effect of a applied to s lands in a state
/// satisfying all state rules. Availability (preconditions) is separate.
bool is_action_allowed(const ActionDef& action, const State& s, const Specification& spec);

struct Obligations {
    std::vector<int> required;   // action indices, ascending
    std::vector<int> forbidden;  // action indices, ascending
    std::vector<int> conflicts;  // simultaneously required and forbidden

    bool conflict() const { return !conflicts.empty(); }
};

/// Union over all reaction rules whose condition holds in s.
Obligations reaction_obligations(const State& s, const Specification& spec);

enum class StepReason {
    Feasible,
    PreconditionFailed,
    ResourceConflict,
    WriteConflict,
    ActionNotAllowed,
    ObligationViolated,
};

const char* step_reason_name(StepReason reason);

/// Checks the five admissibility clauses for a concurrent action set, in
/// order; returns the first failed clause. An empty step is judged only on
/// the obligation clause.
StepReason step_feasibility(const Step& step, const State& s, const Specification& spec);

inline bool step_feasible(const Step& step, const State& s, const Specification& spec) {
    return step_feasibility(step, s, spec) == StepReason::Feasible;
}

/// Union of the nominal effects of the step's actions applied to s.
/// Pre: the step is write-conflict-free.
State step_successor(const State& s, const Step& step, const Specification& spec);

struct GoalTarget {
    int rule_index = -1;
    const GoalRule* rule = nullptr;
};

/// Highest-priority goal whose `when` condition holds in s, or nullopt.
std::optional<GoalTarget> active_goal(const State& s, const Specification& spec);

}  // namespace safeplan
