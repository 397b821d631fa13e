#include "safeplan/semantics.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace safeplan {

long long state_count(const Specification& spec) {
    long long count = 1;
    for (const auto& var : spec.variables) count *= static_cast<long long>(var.domain.size());
    return count;
}

std::vector<State> enumerate_states(const Specification& spec) {
    long long total = state_count(spec);
    std::vector<State> states;
    states.reserve(static_cast<size_t>(total));
    State current{std::vector<int>(spec.variables.size(), 0)};
    for (long long i = 0; i < total; ++i) {
        states.push_back(current);
        // increment mixed-radix counter, last variable fastest
        for (int v = static_cast<int>(spec.variables.size()) - 1; v >= 0; --v) {
            if (++current.values[v] < static_cast<int>(spec.variables[v].domain.size())) break;
            current.values[v] = 0;
        }
    }
    return states;
}

long long state_index(const Specification& spec, const State& s) {
    long long index = 0;
    for (size_t v = 0; v < spec.variables.size(); ++v)
        index = index * static_cast<long long>(spec.variables[v].domain.size()) + s.values[v];
    return index;
}

State state_from_index(const Specification& spec, long long index) {
    State s{std::vector<int>(spec.variables.size(), 0)};
    for (int v = static_cast<int>(spec.variables.size()) - 1; v >= 0; --v) {
        long long size = static_cast<long long>(spec.variables[v].domain.size());
        s.values[v] = static_cast<int>(index % size);
        index /= size;
    }
    return s;
}

std::string state_to_string(const Specification& spec, const State& s) {
    std::string out;
    for (size_t v = 0; v < spec.variables.size(); ++v) {
        if (v) out += ", ";
        out += spec.variables[v].name + " is " + spec.variables[v].domain[s.values[v]];
    }
    return out;
}

bool eval_literal(const Literal& lit, const State& s) {
    assert(lit.var >= 0 && lit.val >= 0);
    bool match = s.values[lit.var] == lit.val;
    return lit.negated ? !match : match;
}

bool eval_condition(const Condition& cond, const State& s) {
    switch (cond.kind) {
        case Condition::Kind::Literal:
            return eval_literal(cond.lit, s);
        case Condition::Kind::And:
            return std::all_of(cond.children.begin(), cond.children.end(),
                               [&s](const Condition& c) { return eval_condition(c, s); });
        case Condition::Kind::Or:
            return std::any_of(cond.children.begin(), cond.children.end(),
                               [&s](const Condition& c) { return eval_condition(c, s); });
    }
    return false;
}

bool target_satisfied(const std::vector<Literal>& target, const State& s) {
    return std::all_of(target.begin(), target.end(),
                       [&s](const Literal& lit) { return eval_literal(lit, s); });
}

State apply_effects(const State& s, const EffectSet& effects) {
    State next = s;
    for (const auto& asg : effects.assignments) {
        assert(asg.var >= 0 && asg.val >= 0);
        next.values[asg.var] = asg.val;
    }
    return next;
}

bool is_state_safe(const State& s, const std::vector<StateRule>& rules) {
    for (const auto& rule : rules)
        if (eval_condition(rule.antecedent, s) && !eval_condition(rule.consequent, s))
            return false;
    return true;
}

std::vector<const EffectSet*> possible_effects(const ActionDef& action) {
    std::vector<const EffectSet*> effects;
    effects.reserve(1 + action.alternatives.size());
    effects.push_back(&action.nominal);
    for (const auto& alt : action.alternatives) effects.push_back(&alt);
    return effects;
}

bool preconditions_hold(const ActionDef& action, const State& s) {
    return std::all_of(action.preconditions.begin(), action.preconditions.end(),
                       [&s](const Literal& lit) { return eval_literal(lit, s); });
}

bool is_action_allowed(const ActionDef& action, const State& s, const Specification& spec) {
    for (const EffectSet* effect : possible_effects(action))
        if (!is_state_safe(apply_effects(s, *effect), spec.state_rules)) return false;
    return true;
}

Obligations reaction_obligations(const State& s, const Specification& spec) {
    std::set<int> required, forbidden;
    for (const auto& rule : spec.reaction_rules) {
        if (!eval_condition(rule.condition, s)) continue;
        for (const auto& con : rule.consequents)
            (con.forbid ? forbidden : required).insert(con.action_idx);
    }
    Obligations obligations;
    obligations.required.assign(required.begin(), required.end());
    obligations.forbidden.assign(forbidden.begin(), forbidden.end());
    std::set_intersection(required.begin(), required.end(), forbidden.begin(),
                          forbidden.end(), std::back_inserter(obligations.conflicts));
    return obligations;
}

const char* step_reason_name(StepReason reason) {
    switch (reason) {
        case StepReason::Feasible: return "FEASIBLE";
        case StepReason::PreconditionFailed: return "PRECONDITION_FAILED";
        case StepReason::ResourceConflict: return "RESOURCE_CONFLICT";
        case StepReason::WriteConflict: return "WRITE_CONFLICT";
        case StepReason::ActionNotAllowed: return "ACTION_NOT_ALLOWED";
        case StepReason::ObligationViolated: return "OBLIGATION_VIOLATED";
    }
    return "UNKNOWN";
}

StepReason step_feasibility(const Step& step, const State& s, const Specification& spec) {
    // (1) preconditions
    for (int a : step.actions)
        if (!preconditions_hold(spec.actions[a], s)) return StepReason::PreconditionFailed;

    // (2) pairwise disjoint resources
    std::set<std::string> used;
    for (int a : step.actions)
        for (const auto& res : spec.actions[a].resources)
            if (!used.insert(res).second) return StepReason::ResourceConflict;

    // (3) nominal effects write-conflict-free
    std::vector<int> writes(s.values.size(), -1);
    for (int a : step.actions) {
        for (const auto& asg : spec.actions[a].nominal.assignments) {
            if (writes[asg.var] >= 0 && writes[asg.var] != asg.val)
                return StepReason::WriteConflict;
            writes[asg.var] = asg.val;
        }
    }

    // (4) every action individually allowed
    for (int a : step.actions)
        if (!is_action_allowed(spec.actions[a], s, spec)) return StepReason::ActionNotAllowed;

    // (5) reaction obligations
    Obligations obligations = reaction_obligations(s, spec);
    for (int required : obligations.required)
        if (!std::binary_search(step.actions.begin(), step.actions.end(), required))
            return StepReason::ObligationViolated;
    for (int forbidden : obligations.forbidden)
        if (std::binary_search(step.actions.begin(), step.actions.end(), forbidden))
            return StepReason::ObligationViolated;

    return StepReason::Feasible;
}

State step_successor(const State& s, const Step& step, const Specification& spec) {
    State next = s;
    for (int a : step.actions)
        for (const auto& asg : spec.actions[a].nominal.assignments)
            next.values[asg.var] = asg.val;
    return next;
}

std::optional<GoalTarget> active_goal(const State& s, const Specification& spec) {
    for (size_t i = 0; i < spec.goals.size(); ++i)
        if (eval_condition(spec.goals[i].when, s))
            return GoalTarget{static_cast<int>(i), &spec.goals[i]};
    return std::nullopt;
}

}  // namespace safeplan
